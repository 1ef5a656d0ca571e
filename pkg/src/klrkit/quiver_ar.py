"""Dynkin quivers, height functions, Coxeter elements and the AR bijection.

Arrow convention: the pair (a, b) in ``DynkinQuiver.arrows`` is an arrow
a -> b.  "i <- j" everywhere in this package means that there is an arrow
j -> i; the KLR and Schur-Weyl modules reuse ``DynkinQuiver.points_to``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import IncompletePhi, InconsistentPhi
from .root_system import RootSystem, Weight, apply_weyl_word, dynkin_edges


@dataclass(frozen=True)
class DynkinQuiver:
    rs: RootSystem
    arrows: tuple

    def __post_init__(self):
        arrows = tuple(tuple(a) for a in self.arrows)
        object.__setattr__(self, "arrows", arrows)
        undirected = sorted(tuple(sorted(a)) for a in arrows)
        if any(a == b for a, b in arrows):
            raise ValueError("quiver has a loop")
        if len(set(undirected)) != len(undirected):
            raise ValueError("quiver has a multiple edge")
        if undirected != sorted(dynkin_edges(self.rs.type_tag, self.rs.rank)):
            raise ValueError(
                f"arrows {list(arrows)} do not orient the Dynkin diagram of {self.rs.name}"
            )

    @classmethod
    def default(cls, rs: RootSystem) -> "DynkinQuiver":
        """Orient every edge from the smaller to the larger vertex."""
        return cls(rs, tuple(dynkin_edges(rs.type_tag, rs.rank)))

    @classmethod
    def parse(cls, rs: RootSystem, text: str) -> "DynkinQuiver":
        """Parse 'a>b,c>d' (a -> b, c -> d); 'b<a' is also accepted."""
        arrows = []
        for part in filter(None, (p.strip() for p in text.split(","))):
            if ">" in part:
                a, b = part.split(">")
            elif "<" in part:
                b, a = part.split("<")
            else:
                raise ValueError(f"cannot parse arrow {part!r}; use 'a>b'")
            arrows.append((int(a), int(b)))
        return cls(rs, tuple(arrows))

    def has_arrow(self, a: int, b: int) -> bool:
        return (a, b) in self.arrows

    def points_to(self, i: int, j: int) -> bool:
        """True iff i <- j, i.e. there is an arrow j -> i."""
        return (j, i) in self.arrows

    def sinks(self) -> list[int]:
        sources = {a for a, _ in self.arrows}
        return [v for v in self.rs.vertices() if v not in sources]

    def arrows_str(self) -> str:
        return ",".join(f"{a}>{b}" for a, b in self.arrows)


@dataclass(frozen=True)
class HeightFunction:
    xi: tuple

    def __getitem__(self, i: int) -> int:
        return self.xi[i - 1]

    def shifted(self, c: int) -> "HeightFunction":
        return HeightFunction(tuple(x + c for x in self.xi))


def validate_height(quiver: DynkinQuiver, xi: HeightFunction) -> None:
    if len(xi.xi) != quiver.rs.rank:
        raise ValueError(f"height function needs {quiver.rs.rank} values")
    for a, b in quiver.arrows:
        if xi[a] != xi[b] + 1:
            raise ValueError(f"height function violates xi_{a} = xi_{b} + 1")


def default_height(quiver: DynkinQuiver) -> HeightFunction:
    """Height function with minimum 0, found by BFS from the lowest-numbered sink."""
    n = quiver.rs.rank
    start = min(quiver.sinks())
    xi = {start: 0}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for a, b in quiver.arrows:
            if b == v and a not in xi:
                xi[a] = xi[v] + 1
                queue.append(a)
            elif a == v and b not in xi:
                xi[b] = xi[v] - 1
                queue.append(b)
    low = min(xi.values())
    h = HeightFunction(tuple(xi[i] - low for i in range(1, n + 1)))
    validate_height(quiver, h)
    return h


def gamma(quiver: DynkinQuiver, i: int) -> Weight:
    """Sum of alpha_j over all j with a path j -> ... -> i (j = i included)."""
    rs = quiver.rs
    seen = {i}
    stack = [i]
    while stack:
        v = stack.pop()
        for a, b in quiver.arrows:
            if b == v and a not in seen:
                seen.add(a)
                stack.append(a)
    total = rs.zero()
    for j in sorted(seen):
        total = total + rs.alpha(j)
    return total


@dataclass(frozen=True)
class PhiTable:
    quiver: DynkinQuiver
    xi: HeightFunction
    ordering: tuple
    phi: dict = field(hash=False, compare=False)
    lambda_of: dict = field(hash=False, compare=False)
    a_exp_of: dict = field(hash=False, compare=False)

    @property
    def rs(self) -> RootSystem:
        return self.quiver.rs

    @property
    def coxeter_word(self) -> tuple:
        return self.ordering

    def spectral_exponent(self, i1: int, i2: int) -> int:
        """m with a_{i2}/a_{i1} = q^m."""
        return self.a_exp_of[i2] - self.a_exp_of[i1]

    def rows(self):
        """(root, (i, p)) pairs ordered like rs.positive_roots."""
        return [(w, self.phi[w]) for w in self.rs.positive_roots]


def coxeter_element_word(quiver: DynkinQuiver, xi: HeightFunction) -> tuple:
    """Vertices ordered by decreasing height, ties broken by increasing index."""
    return tuple(sorted(quiver.rs.vertices(), key=lambda i: (-xi[i], i)))


def coxeter_action(pt: PhiTable, rs: RootSystem, weight: Weight, power: int) -> Weight:
    """Apply c**power, where c = r_{i_1} ... r_{i_n} for the table's ordering."""
    word = pt.ordering if power >= 0 else tuple(reversed(pt.ordering))
    for _ in range(abs(power)):
        weight = apply_weyl_word(rs, word, weight)
    return weight


def build_phi(quiver: DynkinQuiver, xi: HeightFunction) -> PhiTable:
    """The bijection R+ -> repetition-quiver vertices and the spectral data.

    Seeds gamma_i -> (i, xi_i); then c(alpha) -> (i, p-2) and
    c^{-1}(alpha) -> (i, p+2) while the image stays a positive root.
    """
    validate_height(quiver, xi)
    rs = quiver.rs
    ordering = coxeter_element_word(quiver, xi)
    inverse = tuple(reversed(ordering))
    phi: dict = {}
    queue = deque()

    def assign(root: Weight, vertex: tuple) -> None:
        old = phi.get(root)
        if old is None:
            phi[root] = vertex
            queue.append(root)
        elif old != vertex:
            raise InconsistentPhi(
                f"root {rs.root_str(root)} assigned both {old} and {vertex}"
            )

    for i in rs.vertices():
        assign(gamma(quiver, i), (i, xi[i]))
    while queue:
        root = queue.popleft()
        i, p = phi[root]
        fwd = apply_weyl_word(rs, ordering, root)
        if rs.is_positive_root(fwd):
            assign(fwd, (i, p - 2))
        back = apply_weyl_word(rs, inverse, root)
        if rs.is_positive_root(back):
            assign(back, (i, p + 2))

    missing = [w for w in rs.positive_roots if w not in phi]
    if missing:
        raise IncompletePhi(f"{len(missing)} positive roots not reached, e.g. {rs.root_str(missing[0])}")
    if len(set(phi.values())) != len(phi):
        raise InconsistentPhi("phi is not injective")
    lambda_of, a_exp_of = {}, {}
    for i in rs.vertices():
        j, p = phi[rs.alpha(i)]
        lambda_of[i] = j
        a_exp_of[i] = p
    return PhiTable(quiver, xi, ordering, phi, lambda_of, a_exp_of)


def ar_quiver_dot(pt: PhiTable) -> str:
    """Graphviz DOT of the repetition quiver restricted to the image of phi."""
    rs = pt.rs
    by_vertex = {v: w for w, v in pt.phi.items()}
    nodes = sorted(by_vertex, key=lambda v: (v[1], v[0]))
    lines = [f'digraph "AR_{rs.name}" {{', "  rankdir=LR;"]
    for i, p in nodes:
        label = f"{rs.root_str(by_vertex[(i, p)])} ({i},{p})"
        lines.append(f'  "{i}_{p}" [label="{label}"];')
    for i, p in nodes:
        for j, p2 in nodes:
            if p2 == p + 1 and rs.adjacent(i, j):
                lines.append(f'  "{i}_{p}" -> "{j}_{p2}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
