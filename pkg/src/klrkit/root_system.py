"""Cartan data, weight-lattice arithmetic and positive roots of ADE types.

Vertices are numbered 1..n following Bourbaki:

* A_n: the path 1 - 2 - ... - n
* D_n: the path 1 - ... - (n-2), with n-1 and n both attached to n-2
* E_n: the path 1 - 3 - 4 - ... - n, with 2 attached to 4

Weights are integer vectors in the basis of fundamental weights, so
``weight.coords[i-1]`` is the pairing with the coroot h_i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import UnsupportedTypeError


@dataclass(frozen=True)
class Weight:
    coords: tuple

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    def __mul__(self, c: int) -> "Weight":
        return Weight(tuple(c * a for a in self.coords))

    __rmul__ = __mul__

    def pairing(self, i: int) -> int:
        """lambda(h_i), 1-based."""
        return self.coords[i - 1]

    def is_zero(self) -> bool:
        return not any(self.coords)


def dynkin_edges(type_tag: str, rank: int) -> list[tuple[int, int]]:
    """Edges (i, j), i < j, of the Dynkin diagram in Bourbaki numbering."""
    t = type_tag.upper()
    if t == "A" and rank >= 1:
        return [(i, i + 1) for i in range(1, rank)]
    if t == "D" and rank >= 4:
        edges = [(i, i + 1) for i in range(1, rank - 1)]
        edges.append((rank - 2, rank))
        return sorted(edges)
    if t == "E" and rank in (6, 7, 8):
        edges = [(1, 3), (2, 4), (3, 4)] + [(i, i + 1) for i in range(4, rank)]
        return sorted(edges)
    raise UnsupportedTypeError(f"unsupported Dynkin type {type_tag}{rank}")


@dataclass(frozen=True)
class RootSystem:
    type_tag: str
    rank: int
    cartan: tuple
    positive_roots: tuple = field(repr=False)
    # alpha-coordinates of positive_roots, same order
    positive_alpha: tuple = field(repr=False)

    @property
    def n(self) -> int:
        return self.rank

    @property
    def name(self) -> str:
        return f"{self.type_tag}{self.rank}"

    def vertices(self) -> range:
        return range(1, self.rank + 1)

    def edges(self) -> list[tuple[int, int]]:
        return dynkin_edges(self.type_tag, self.rank)

    def adjacent(self, i: int, j: int) -> bool:
        return self.cartan[i - 1][j - 1] == -1

    def alpha(self, i: int) -> Weight:
        self._check_vertex(i)
        return Weight(tuple(self.cartan[i - 1]))

    def fundamental(self, i: int) -> Weight:
        self._check_vertex(i)
        return Weight(tuple(1 if j == i else 0 for j in self.vertices()))

    def zero(self) -> Weight:
        return Weight((0,) * self.rank)

    def from_alpha(self, alpha_coords) -> Weight:
        """The weight sum_i c_i alpha_i."""
        c = tuple(alpha_coords)
        if len(c) != self.rank:
            raise ValueError(f"expected {self.rank} alpha-coordinates, got {len(c)}")
        return Weight(tuple(
            sum(c[i] * self.cartan[i][j] for i in range(self.rank)) for j in range(self.rank)
        ))

    def to_alpha(self, weight: Weight) -> tuple:
        """alpha-coordinates of a weight (Fractions if not in the root lattice)."""
        sol = _solve_rational([list(r) for r in self.cartan], list(weight.coords))
        return tuple(int(x) if x.denominator == 1 else x for x in sol)

    def is_positive_root(self, weight: Weight) -> bool:
        return weight in self._root_index

    def root_index(self, weight: Weight) -> int:
        return self._root_index[weight]

    @property
    def _root_index(self):
        idx = self.__dict__.get("_idx_cache")
        if idx is None:
            idx = {w: k for k, w in enumerate(self.positive_roots)}
            object.__setattr__(self, "_idx_cache", idx)
        return idx

    def coxeter_number(self) -> int:
        return len(self.positive_roots) * 2 // self.rank

    def root_str(self, weight: Weight) -> str:
        """Human-readable sum of simple roots, e.g. 'a1+a2'."""
        coeffs = self.to_alpha(weight)
        parts = []
        for i, c in enumerate(coeffs, start=1):
            if c == 0:
                continue
            parts.append(f"a{i}" if c == 1 else f"{c}a{i}")
        return "+".join(parts) if parts else "0"

    def _check_vertex(self, i: int) -> None:
        if not 1 <= i <= self.rank:
            raise IndexError(f"vertex {i} out of range 1..{self.rank}")


def cartan_matrix(type_tag: str, rank: int) -> tuple:
    edges = dynkin_edges(type_tag, rank)
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i, j in edges:
        a[i - 1][j - 1] = a[j - 1][i - 1] = -1
    return tuple(tuple(r) for r in a)


def build_root_system(type_tag: str, rank: int) -> RootSystem:
    """Root system of type A_n (n>=1), D_n (n>=4) or E_6/7/8.

    Positive roots are obtained as the orbit of the simple roots under the
    simple reflections, intersected with the nonnegative cone.
    """
    type_tag = type_tag.upper()
    cartan = cartan_matrix(type_tag, rank)
    simple = [Weight(row) for row in cartan]
    orbit = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(rank):
                r = Weight(tuple(a - w.coords[i] * b for a, b in zip(w.coords, cartan[i])))
                if r not in orbit:
                    orbit.add(r)
                    nxt.append(r)
        frontier = nxt
    proto = RootSystem(type_tag, rank, cartan, (), ())
    positive = []
    for w in orbit:
        c = proto.to_alpha(w)
        if all(x >= 0 for x in c):
            positive.append((tuple(c), w))
    positive.sort()
    return RootSystem(
        type_tag, rank, cartan,
        tuple(w for _, w in positive),
        tuple(c for c, _ in positive),
    )


def reflect(rs: RootSystem, i: int, weight: Weight) -> Weight:
    """r_i(lambda) = lambda - lambda(h_i) alpha_i."""
    rs._check_vertex(i)
    return weight - rs.alpha(i) * weight.pairing(i)


def apply_weyl_word(rs: RootSystem, word, weight: Weight) -> Weight:
    """r_{w_1} r_{w_2} ... r_{w_m}(lambda); the last letter acts first."""
    for i in reversed(list(word)):
        weight = reflect(rs, i, weight)
    return weight


def _solve_rational(a, b):
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]
