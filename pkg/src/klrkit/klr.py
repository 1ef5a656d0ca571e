"""The quiver Hecke (KLR) algebra through its faithful polynomial representation.

Algebra elements are never put into a normal form.  A word in the
generators acts on the right, letter by letter from the left, so
``v . (g1 g2) = (v . g1) . g2``; two elements are compared as operators.

For ``f 1_i`` the generators act by

* ``e(j)``: keep the component iff ``i == j``
* ``x_k``:  multiply by ``x_k``
* ``tau_k``: Demazure ``(f^{s_k} - f)/(x_k - x_{k+1}) 1_i`` if ``i_k == i_{k+1}``;
  ``(x_{k+1} - x_k) f^{s_k} 1_{i.s_k}`` if ``i_k <- i_{k+1}``;
  ``f^{s_k} 1_{i.s_k}`` otherwise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .combinat import enumerate_sequences, sequence_permute, swap_adjacent, transposition
from .exact_algebra import MultiPoly, TruncSeries, demazure, monomials_upto, random_poly
from .exact_algebra import series_divide_linear
from .quiver_ar import DynkinQuiver
from .report import Report


@dataclass(frozen=True)
class KLRGenerator:
    kind: str  # "e", "x" or "tau"
    arg: object  # a sequence for "e", an index for "x"/"tau"

    def __str__(self):
        if self.kind == "e":
            return "e(" + ",".join(map(str, self.arg)) + ")"
        return f"{self.kind}{self.arg}"


def E(seq) -> KLRGenerator:
    return KLRGenerator("e", tuple(seq))


def X(k: int) -> KLRGenerator:
    return KLRGenerator("x", k)


def Tau(k: int) -> KLRGenerator:
    return KLRGenerator("tau", k)


def word_str(word) -> str:
    return " ".join(map(str, word)) if word else "1"


def tau_branch(quiver: DynkinQuiver, seq: tuple, k: int) -> str:
    """Which of the three tau formulas applies at position k of seq."""
    a, b = seq[k - 1], seq[k]
    if a == b:
        return "equal"
    if quiver.points_to(a, b):
        return "left"
    return "other"


def check_generator(gen: KLRGenerator, d: int, seqs=None) -> None:
    if gen.kind == "x":
        if not 1 <= gen.arg <= d:
            raise IndexError(f"x_{gen.arg} out of range for d = {d}")
    elif gen.kind == "tau":
        if not 1 <= gen.arg < d:
            raise IndexError(f"tau_{gen.arg} out of range for d = {d}")
    elif gen.kind == "e":
        if len(gen.arg) != d or (seqs is not None and gen.arg not in seqs):
            raise ValueError(f"e{gen.arg} is not an idempotent of this block")
    else:
        raise ValueError(f"unknown generator kind {gen.kind!r}")


class _ComponentVector:
    """Shared bookkeeping for vectors that are dicts sequence -> coefficient."""

    __slots__ = ("quiver", "d", "terms")

    def _new(self, terms):
        raise NotImplementedError

    def __add__(self, other):
        out = dict(self.terms)
        for s, f in other.terms.items():
            g = out.get(s)
            out[s] = f if g is None else g + f
        return self._new(out)

    def __neg__(self):
        return self._new({s: -f for s, f in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return self._new({s: f.scale(c) for s, f in self.terms.items()})

    def __bool__(self):
        return bool(self.terms)

    def component(self, seq):
        return self.terms.get(tuple(seq))


class KLRVector(_ComponentVector):
    """An element sum_i f_i 1_i of P_beta; zero components are dropped."""

    def __init__(self, quiver: DynkinQuiver, d: int, terms=None):
        self.quiver = quiver
        self.d = d
        self.terms = {tuple(s): f for s, f in (terms or {}).items() if f}

    def _new(self, terms):
        return KLRVector(self.quiver, self.d, terms)

    @classmethod
    def basis(cls, quiver, seq, exp=None, c=1) -> "KLRVector":
        d = len(seq)
        exp = exp if exp is not None else (0,) * d
        return cls(quiver, d, {tuple(seq): MultiPoly.monomial(exp, c)})

    def __eq__(self, other):
        return isinstance(other, KLRVector) and self.terms == other.terms

    __hash__ = None

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({f})*1_{''.join(map(str, s))}" for s, f in sorted(self.terms.items()))

    __repr__ = __str__


class CompletedKLRVector(_ComponentVector):
    """An element of the completion: components are truncated power series."""

    def __init__(self, quiver: DynkinQuiver, d: int, terms=None, order: int | None = None):
        self.quiver = quiver
        self.d = d
        terms = {tuple(s): f for s, f in (terms or {}).items()}
        if order is None:
            order = min((f.order for f in terms.values()), default=0)
        self.terms = {s: f.truncate(order) for s, f in terms.items() if f.truncate(order)}
        self._order = order

    __slots__ = ("_order",)

    @property
    def order(self) -> int:
        return self._order

    def _new(self, terms):
        order = min([self._order] + [f.order for f in terms.values()])
        return CompletedKLRVector(self.quiver, self.d, terms, order)

    def __add__(self, other):
        out = _ComponentVector.__add__(self, other)
        return out.truncate(min(self.order, other.order))

    def truncate(self, order: int) -> "CompletedKLRVector":
        return CompletedKLRVector(self.quiver, self.d, self.terms, min(order, self._order))

    @classmethod
    def from_vector(cls, v: KLRVector, order: int) -> "CompletedKLRVector":
        return cls(v.quiver, v.d, {s: TruncSeries.from_poly(f, order) for s, f in v.terms.items()},
                   order)

    def eq_upto(self, other, order=None) -> bool:
        if order is None:
            order = min(self.order, other.order)
        return not (self.truncate(order) - other.truncate(order)).terms

    def __eq__(self, other):
        return (isinstance(other, CompletedKLRVector) and self.order == other.order
                and self.terms == other.terms)

    __hash__ = None


# -- the action ---------------------------------------------------------------

def act(gen: KLRGenerator, v: KLRVector) -> KLRVector:
    check_generator(gen, v.d)
    if gen.kind == "e":
        f = v.terms.get(gen.arg)
        return KLRVector(v.quiver, v.d, {gen.arg: f} if f else {})
    k = gen.arg
    if gen.kind == "x":
        return KLRVector(v.quiver, v.d, {s: f.mul_var(k) for s, f in v.terms.items()})
    out = {}
    for s, f in v.terms.items():
        branch = tau_branch(v.quiver, s, k)
        if branch == "equal":
            g, t = demazure(f, k), s
        else:
            g, t = f.swap(k), swap_adjacent(s, k)
            if branch == "left":
                g = g.mul_var(k + 1) - g.mul_var(k)
        if g:
            h = out.get(t)
            out[t] = g if h is None else h + g
    return KLRVector(v.quiver, v.d, out)


def act_completed(gen: KLRGenerator, v: CompletedKLRVector) -> CompletedKLRVector:
    """Same formulas on truncated series; only the Demazure branch loses an order."""
    check_generator(gen, v.d)
    if gen.kind == "e":
        f = v.terms.get(gen.arg)
        return CompletedKLRVector(v.quiver, v.d, {gen.arg: f} if f else {}, v.order)
    k = gen.arg
    if gen.kind == "x":
        return CompletedKLRVector(v.quiver, v.d, {s: f.mul_var(k) for s, f in v.terms.items()},
                                  v.order)
    ell = tuple(1 if j == k - 1 else -1 if j == k else 0 for j in range(v.d))
    out = {}
    order = v.order
    for s, f in v.terms.items():
        branch = tau_branch(v.quiver, s, k)
        if branch == "equal":
            g, t = series_divide_linear(f.swap(k) - f, ell), s
            order = v.order - 1
        else:
            g, t = f.swap(k), swap_adjacent(s, k)
            if branch == "left":
                g = g.mul_var(k + 1) - g.mul_var(k)
        h = out.get(t)
        out[t] = g if h is None else h + g
    return CompletedKLRVector(v.quiver, v.d, out, order)


def act_word(word, v, action=act):
    for g in word:
        v = action(g, v)
    return v


def generator_degree(gen: KLRGenerator, seq: tuple, cartan) -> int:
    """Degree of gen e(seq) for e and x, and of tau_k e(seq) for tau."""
    if gen.kind == "e":
        return 0
    if gen.kind == "x":
        return 2
    k = gen.arg
    return -cartan[seq[k - 1] - 1][seq[k] - 1]


def trace_component(quiver, word, seq):
    """Follow the component label of f 1_seq through a word.

    Returns (final sequence, degree) or None if some e(j) kills it.  The
    degree is the sum of generator degrees along the way.
    """
    cartan = quiver.rs.cartan
    deg = 0
    for g in word:
        if g.kind == "e":
            if g.arg != seq:
                return None
        elif g.kind == "x":
            deg += 2
        else:
            k = g.arg
            deg += -cartan[seq[k - 1] - 1][seq[k] - 1]
            if seq[k - 1] != seq[k]:
                seq = swap_adjacent(seq, k)
    return seq, deg


# -- the relation table ---------------------------------------------------------

FAMILIES = (
    "idempotent", "unit", "x_commute", "x_e", "tau_e", "tau_far", "tau_square", "tau_x", "braid",
)


@dataclass(frozen=True)
class RelationInstance:
    family: str
    label: str
    lhs: tuple  # ((coeff, word), ...)
    rhs: tuple
    target: tuple | None = None  # the e(i) closing every word, if any

    def words(self):
        return [w for _, w in self.lhs + self.rhs]


def _sstr(s) -> str:
    return "(" + ",".join(map(str, s)) + ")"


def relation_instances(quiver: DynkinQuiver, seqs) -> list[RelationInstance]:
    """Every instance of the nine defining relation families for one block."""
    seqs = list(seqs)
    if not seqs:
        return []
    d = len(seqs[0])
    out = []
    for i in seqs:
        for j in seqs:
            rhs = ((1, (E(i),)),) if i == j else ()
            out.append(RelationInstance("idempotent", f"i={_sstr(i)},i'={_sstr(j)}",
                                        ((1, (E(i), E(j))),), rhs))
    out.append(RelationInstance("unit", "sum_i e(i)", tuple((1, (E(i),)) for i in seqs),
                                ((1, ()),)))
    for k, l in combinations(range(1, d + 1), 2):
        out.append(RelationInstance("x_commute", f"k={k},l={l}",
                                    ((1, (X(k), X(l))),), ((1, (X(l), X(k))),)))
    for i in seqs:
        for k in range(1, d + 1):
            out.append(RelationInstance("x_e", f"k={k},i={_sstr(i)}",
                                        ((1, (X(k), E(i))),), ((1, (E(i), X(k))),), i))
    for i in seqs:
        for k in range(1, d):
            out.append(RelationInstance("tau_e", f"k={k},i={_sstr(i)}",
                                        ((1, (Tau(k), E(i))),),
                                        ((1, (E(swap_adjacent(i, k)), Tau(k))),), i))
    for k in range(1, d):
        for l in range(k + 2, d):
            out.append(RelationInstance("tau_far", f"k={k},l={l}",
                                        ((1, (Tau(k), Tau(l))),), ((1, (Tau(l), Tau(k))),)))
    for i in seqs:
        for k in range(1, d):
            a, b = i[k - 1], i[k]
            if a == b:
                rhs = ()
            elif quiver.points_to(a, b):
                rhs = ((1, (X(k), E(i))), (-1, (X(k + 1), E(i))))
            elif quiver.points_to(b, a):
                rhs = ((1, (X(k + 1), E(i))), (-1, (X(k), E(i))))
            else:
                rhs = ((1, (E(i),)),)
            out.append(RelationInstance("tau_square", f"k={k},i={_sstr(i)}",
                                        ((1, (Tau(k), Tau(k), E(i))),), rhs, i))
    for i in seqs:
        for k in range(1, d):
            for l in range(1, d + 1):
                sl = k + 1 if l == k else k if l == k + 1 else l
                rhs = ()
                if i[k - 1] == i[k] and l == k:
                    rhs = ((-1, (E(i),)),)
                elif i[k - 1] == i[k] and l == k + 1:
                    rhs = ((1, (E(i),)),)
                out.append(RelationInstance(
                    "tau_x", f"k={k},l={l},i={_sstr(i)}",
                    ((1, (Tau(k), X(l), E(i))), (-1, (X(sl), Tau(k), E(i)))), rhs, i))
    for i in seqs:
        for k in range(1, d - 1):
            rhs = ()
            if i[k - 1] == i[k + 1] and quiver.points_to(i[k - 1], i[k]):
                rhs = ((1, (E(i),)),)
            elif i[k - 1] == i[k + 1] and quiver.points_to(i[k], i[k - 1]):
                rhs = ((-1, (E(i),)),)
            out.append(RelationInstance(
                "braid", f"k={k},i={_sstr(i)}",
                ((1, (Tau(k + 1), Tau(k), Tau(k + 1), E(i))),
                 (-1, (Tau(k), Tau(k + 1), Tau(k), E(i)))), rhs, i))
    return out


def evaluate_side(side, v, action=act, zero=None):
    acc = zero
    for c, word in side:
        w = act_word(word, v, action)
        if c != 1:
            w = w.scale(c)
        acc = w if acc is None else acc + w
    return acc


def source_components(inst: RelationInstance, quiver, seqs) -> list:
    """Sequences j such that some word of the instance does not kill 1_j."""
    out = []
    for j in seqs:
        if any(trace_component(quiver, w, j) is not None for w in inst.words()):
            out.append(j)
    return out


def degree_check(inst: RelationInstance, quiver, seqs) -> tuple[bool, str | None]:
    """Every surviving word in the instance has one common degree per source."""
    for j in seqs:
        degs = set()
        for w in inst.words():
            t = trace_component(quiver, w, j)
            if t is not None:
                degs.add(t[1])
        if len(degs) > 1:
            return False, f"source {_sstr(j)} sees degrees {sorted(degs)}"
    return True, None


def random_vector(quiver, comps, d, rng, max_degree, max_terms=6) -> KLRVector:
    return KLRVector(quiver, d, {s: random_poly(d, max_degree, rng, max_terms) for s in comps})


def _compare(inst, v, action, zero):
    lhs = evaluate_side(inst.lhs, v, action, zero)
    rhs = evaluate_side(inst.rhs, v, action, zero)
    return lhs == rhs, lhs, rhs


def verify_relations(rs, quiver: DynkinQuiver, beta, trials: int = 50, seed: int = 0,
                     max_poly_degree: int = 5, exhaustive_degree: int = 3) -> Report:
    """Check every relation instance of the block as an operator identity on P_beta.

    Each instance is evaluated on every monomial f 1_j of degree at most
    ``exhaustive_degree`` with j a source component of the instance, then on
    ``trials`` random vectors (random polynomials on every source component
    plus one other component, which both sides must annihilate).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    seqs = enumerate_sequences(rs, beta)
    d = len(seqs[0])
    rng = random.Random(seed)
    report = Report(f"KLR relations {rs.name} beta={tuple(beta)}", "klr",
                    meta={"type": rs.name, "beta": list(beta), "trials": trials, "seed": seed})
    zero = KLRVector(quiver, d)
    monos = monomials_upto(d, exhaustive_degree)
    for inst in relation_instances(quiver, seqs):
        comps = source_components(inst, quiver, seqs)
        failure = None
        for j in comps:
            for e in monos:
                v = KLRVector.basis(quiver, j, e)
                ok, lhs, rhs = _compare(inst, v, act, zero)
                if not ok:
                    failure = f"on {v}: lhs = {lhs}, rhs = {rhs}"
                    break
            if failure:
                break
        if failure is None:
            others = [s for s in seqs if s not in comps]
            for _ in range(trials):
                support = list(comps) + ([rng.choice(others)] if others else [])
                v = random_vector(quiver, support, d, rng, max_poly_degree)
                ok, lhs, rhs = _compare(inst, v, act, zero)
                if not ok:
                    failure = f"on {v}: lhs = {lhs}, rhs = {rhs}"
                    break
        report.add(inst.family, inst.label, failure is None, failure)
    return report


def verify_grading(rs, quiver: DynkinQuiver, beta) -> Report:
    """Symbolic homogeneity of every relation instance."""
    seqs = enumerate_sequences(rs, beta)
    report = Report(f"KLR grading {rs.name} beta={tuple(beta)}", "klr",
                    meta={"type": rs.name, "beta": list(beta)})
    for inst in relation_instances(quiver, seqs):
        ok, why = degree_check(inst, quiver, seqs)
        report.add("grading", f"{inst.family}: {inst.label}", ok, why)
    return report


def reduced_words(d: int, max_length: int) -> list[tuple]:
    """One reduced word (in tau indices) for each permutation of length <= max_length."""
    seen = {tuple(range(1, d + 1)): ()}
    frontier = dict(seen)
    for _ in range(max_length):
        nxt = {}
        for w, word in frontier.items():
            for k in range(1, d):
                if w[k - 1] < w[k]:  # right multiplication by s_k lengthens w
                    w2 = sequence_permute(w, transposition(d, k))
                    if w2 not in seen and w2 not in nxt:
                        nxt[w2] = word + (k,)
        seen.update(nxt)
        frontier = nxt
    return sorted(seen.values(), key=lambda t: (len(t), t))
