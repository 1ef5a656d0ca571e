"""The completed bimodule over type-A quantum loop algebras and KLR algebras.

For a sequence i = (i_1..i_d) the space V^i is W(lambda_{i_1}) (x) ... (x)
W(lambda_{i_d}) with spectral parameters X_k expanded at a_{i_k} = q^{p_k}.
Coefficients are truncated power series in the shifted variables
u_k = X_k / a_{i_k} - 1.  The direct sum over I^beta carries

* a left action of the quantum loop algebra (coproduct of the tensor factors
  with z_k = a_{i_k} (1 + u_k)), and
* a right action of the completed KLR algebra, primarily the "twisted" one
  where x_k multiplies by u_k; the log action multiplies by log(1 + u_k).

The operator R^i_k sends V^i to V^{i.s_k}: it applies the normalized
R-matrix of the factors k, k+1 with u = X_k' / X_{k+1}' written in the target
variables, and permutes the coefficient variables by s_k.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .combinat import enumerate_sequences, swap_adjacent
from .errors import PoleTooHigh
from .exact_algebra import (
    QQ_ONE,
    RationalFunctionQ,
    TruncSeries,
    UPoly,
    expm1_series,
    log1p_series,
    series_divide_linear,
    series_substitute,
)
from .klr import (
    CompletedKLRVector,
    KLRGenerator,
    act_completed,
    check_generator,
    relation_instances,
    source_components,
    tau_branch,
)
from .qloop_a import (
    TensorAction,
    build_fundamental,
    generators,
    pole_order,
    r_matrix_for_pair,
    solve_normalized_R,
)
from .quiver_ar import PhiTable
from .report import Report


@dataclass(frozen=True)
class TensorSpace:
    """V^i for one sequence, with its expansion points and truncation order."""

    pt: PhiTable = field(repr=False)
    seq: tuple
    order: int

    def __post_init__(self):
        if self.pt.rs.type_tag != "A":
            raise ValueError("tensor spaces are only available in type A")
        if self.order < 1:
            raise ValueError("truncation order must be >= 1")

    @property
    def d(self) -> int:
        return len(self.seq)

    @property
    def n(self) -> int:
        return self.pt.rs.rank

    @property
    def levels(self) -> tuple:
        return tuple(self.pt.lambda_of[i] for i in self.seq)

    @property
    def exponents(self) -> tuple:
        """p_k with a_{i_k} = q^{p_k}."""
        return tuple(self.pt.a_exp_of[i] for i in self.seq)

    @property
    def action(self) -> TensorAction:
        return TensorAction(tuple(build_fundamental(self.n, l) for l in self.levels))

    def basis(self) -> list[tuple]:
        return self.action.basis()

    def extremal(self) -> tuple:
        return (0,) * self.d


class Bimodule:
    """The completed direct sum over I^beta, truncated at order N."""

    def __init__(self, pt: PhiTable, beta, order: int = 4):
        self.pt = pt
        self.beta = tuple(beta)
        self.order = order
        self.seqs = enumerate_sequences(pt.rs, self.beta)
        self.d = len(self.seqs[0])
        self.spaces = {s: TensorSpace(pt, s, order) for s in self.seqs}

    @property
    def quiver(self):
        return self.pt.quiver

    def zero(self, order=None) -> "CompletedTensorVector":
        return CompletedTensorVector(self, {}, self.order if order is None else order)

    def extremal_vector(self, seq, coeff=None) -> "CompletedTensorVector":
        seq = tuple(seq)
        f = coeff if coeff is not None else TruncSeries.constant(self.d, self.order, 1)
        return CompletedTensorVector(self, {(seq, self.spaces[seq].extremal()): f}, f.order)

    def random_vector(self, rng: random.Random, seqs=None, density=0.5, max_terms=3,
                      max_degree=None) -> "CompletedTensorVector":
        """Sparse random vector: small integer series on a random subset of basis vectors."""
        seqs = self.seqs if seqs is None else seqs
        max_degree = self.order if max_degree is None else max_degree
        terms = {}
        for s in seqs:
            for b in self.spaces[s].basis():
                if rng.random() > density:
                    continue
                coeffs = {}
                for _ in range(rng.randint(1, max_terms)):
                    e = [0] * self.d
                    for _ in range(rng.randint(0, max_degree)):
                        e[rng.randrange(self.d)] += 1
                    coeffs[tuple(e)] = rng.randint(-5, 5) or 1
                terms[(s, b)] = TruncSeries(self.d, self.order, coeffs)
        return CompletedTensorVector(self, terms, self.order)


class CompletedTensorVector:
    """Coefficients {(sequence, tensor basis tuple): series} with a uniform order."""

    __slots__ = ("module", "terms", "order")

    def __init__(self, module: Bimodule, terms, order: int):
        self.module = module
        self.order = order
        self.terms = {}
        for key, f in terms.items():
            f = f.truncate(order)
            if f:
                self.terms[key] = f

    def _new(self, terms, order=None):
        return CompletedTensorVector(self.module, terms, self.order if order is None else order)

    def __add__(self, other):
        order = min(self.order, other.order)
        out = dict(self.terms)
        for key, f in other.terms.items():
            g = out.get(key)
            out[key] = f if g is None else g + f
        return self._new(out, order)

    def __neg__(self):
        return self._new({k: -f for k, f in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return self._new({k: f.scale(c) for k, f in self.terms.items()})

    def mul_series(self, g: TruncSeries):
        return self._new({k: f * g for k, f in self.terms.items()}, min(self.order, g.order))

    def truncate(self, order: int):
        return self._new(self.terms, min(order, self.order))

    def __bool__(self):
        return bool(self.terms)

    def eq_upto(self, other, order=None) -> bool:
        if order is None:
            order = min(self.order, other.order)
        return not (self.truncate(order) - other.truncate(order)).terms

    def component(self, seq) -> dict:
        seq = tuple(seq)
        return {b: f for (s, b), f in self.terms.items() if s == seq}

    def __repr__(self):
        parts = [f"({f.to_poly()})*v{s}{b}" for (s, b), f in sorted(self.terms.items())]
        return (" + ".join(parts) or "0") + f" + O({self.order + 1})"


# -- series helpers ----------------------------------------------------------------

def _linear(d: int, order: int, coeffs: dict) -> TruncSeries:
    """sum_k c_k u_k as a series (k is 1-based)."""
    return TruncSeries(d, order, {
        tuple(1 if j == k - 1 else 0 for j in range(d)): c for k, c in coeffs.items()
    })


@lru_cache(maxsize=None)
def _one_plus_u(d: int, order: int, k: int, power: int) -> TruncSeries:
    """(1 + u_k)^power for power = +1 or -1."""
    s = TruncSeries.constant(d, order, 1) + TruncSeries.var(d, order, k)
    return s if power > 0 else s.inverse()


def _univariate_expansion(num: UPoly, den: UPoly, point, order: int) -> list:
    """Taylor coefficients in t of num(point + t) / den(point + t), up to t^order."""
    a = list(num.taylor_shift(point).coeffs)
    b = list(den.taylor_shift(point).coeffs)
    if not b or not b[0]:
        raise ZeroDivisionError("denominator vanishes at the expansion point")
    inv0 = b[0].inverse()
    out = []
    for j in range(order + 1):
        acc = a[j] if j < len(a) else RationalFunctionQ()
        for i in range(1, min(j, len(b) - 1) + 1):
            acc = acc - b[i] * out[j - i]
        out.append(acc * inv0)
    return out


@lru_cache(maxsize=None)
def _r_expansion(n: int, l1: int, l2: int, m0: int, k: int, d: int, order: int, cancel: bool):
    """Series for every entry of R(l1, l2) at u = q^m0 * (1 + u_k) / (1 + u_{k+1}).

    With cancel=True each entry is multiplied by (u_{k+1} - u_k), which may
    absorb a simple pole at the expansion point.  Returns
    {source pair: [(target pair, series)]}.
    """
    r = solve_normalized_R(n, l1, l2)
    u0 = RationalFunctionQ.q_power(m0)
    one = TruncSeries.constant(d, order, 1)
    # t = u - u0 = u0 (u_k - u_{k+1}) / (1 + u_{k+1})
    t = _linear(d, order, {k: u0, k + 1: -u0}) * _one_plus_u(d, order, k + 1, -1)
    mult = _linear(d, order, {k + 1: QQ_ONE, k: -QQ_ONE})
    # (u_{k+1} - u_k) / t = -(1 + u_{k+1}) / u0
    mult_over_t = (one + TruncSeries.var(d, order, k + 1)).scale(-u0.inverse())
    out = {}
    for (tgt, src), entry in sorted(r.entries.items()):
        m, h = entry.split_at(u0)
        coeffs = _univariate_expansion(h.num, h.den, u0, order)
        series = TruncSeries.zero(d, order)
        for c in reversed(coeffs):
            series = series * t + one.scale(c)
        if m >= 0:
            if m:
                series = series * t ** m
            if cancel:
                series = series * mult
        elif m == -1 and cancel:
            series = series * mult_over_t
        else:
            raise PoleTooHigh(
                f"R({l1},{l2}) entry has a pole of order {-m} at u = q^{m0}"
                + (" beyond the simple pole cancelled here" if cancel else "")
            )
        if series:
            out.setdefault(src, []).append((tgt, series))
    return out


def apply_Rk(v: CompletedTensorVector, k: int, cancel: bool = False) -> CompletedTensorVector:
    """R^i_k on every component; with cancel=True, composed with (u_{k+1} - u_k)."""
    mod = v.module
    if not 1 <= k < mod.d:
        raise IndexError(f"R_k needs 1 <= k < {mod.d}")
    out = {}
    order = v.order
    for (seq, b), f in v.terms.items():
        sp = mod.spaces[seq]
        lv, ex = sp.levels, sp.exponents
        table = _r_expansion(sp.n, lv[k - 1], lv[k], ex[k] - ex[k - 1], k, mod.d, v.order, cancel)
        fs = f.swap(k)
        tseq = swap_adjacent(seq, k)
        for tgt, series in table.get((b[k - 1], b[k]), ()):
            nb = b[:k - 1] + tgt + b[k + 1:]
            g = series * fs
            key = (tseq, nb)
            h = out.get(key)
            out[key] = g if h is None else h + g
    return CompletedTensorVector(mod, out, order)


# -- the right KLR actions -------------------------------------------------------------

def _tau_equal_part(v, k):
    """Components with i_k = i_{k+1}, i.e. the Demazure-type branch."""
    q = v.module.quiver
    return {key: f for key, f in v.terms.items() if tau_branch(q, key[0], k) == "equal"}


def _divide_components(v: CompletedTensorVector, k: int) -> CompletedTensorVector:
    ell = tuple(1 if j == k - 1 else -1 if j == k else 0 for j in range(v.module.d))
    return CompletedTensorVector(
        v.module, {key: series_divide_linear(f, ell) for key, f in v.terms.items()}, v.order - 1
    )


def act_klr_twisted(gen: KLRGenerator, v: CompletedTensorVector) -> CompletedTensorVector:
    """The right action with x_k acting as u_k."""
    mod = v.module
    check_generator(gen, mod.d)
    if gen.kind == "e":
        return v._new({key: f for key, f in v.terms.items() if key[0] == gen.arg})
    k = gen.arg
    if gen.kind == "x":
        return v._new({key: f.mul_var(k) for key, f in v.terms.items()})
    return _act_tau(v, k, None)


def _act_tau(v, k, unit):
    """tau_k with the twisted prefactors, optionally corrected by the log units.

    unit(kind) returns the series W with (log-form) = (linear form) * W for
    kind "equal" (u_k - u_{k+1}) and "left" (u_{k+1} - u_k).
    """
    mod = v.module
    q = mod.quiver
    parts = {"equal": {}, "left": {}, "other": {}}
    for key, f in v.terms.items():
        parts[tau_branch(q, key[0], k)][key] = f
    result = mod.zero(v.order)
    if parts["equal"]:
        w = CompletedTensorVector(mod, parts["equal"], v.order)
        diff = apply_Rk(w, k) - w
        res = _divide_components(diff, k)
        if unit is not None:
            res = res.mul_series(unit("equal", res.order).inverse())
        result = result.truncate(res.order) + res
    if parts["left"]:
        w = CompletedTensorVector(mod, parts["left"], v.order)
        res = apply_Rk(w, k, cancel=True)
        if unit is not None:
            res = res.mul_series(unit("left", res.order))
        result = result + res
    if parts["other"]:
        result = result + apply_Rk(CompletedTensorVector(mod, parts["other"], v.order), k)
    return result


def _log_unit_factory(d, k):
    def unit(kind, order):
        lk = log1p_series(d, order + 1, k)
        lk1 = log1p_series(d, order + 1, k + 1)
        ell = tuple(1 if j == k - 1 else -1 if j == k else 0 for j in range(d))
        w = series_divide_linear(lk - lk1, ell)  # log-difference / (u_k - u_{k+1})
        return w  # the same unit serves both orientations
    return unit


def act_klr_log(gen: KLRGenerator, v: CompletedTensorVector) -> CompletedTensorVector:
    """The right action with x_k acting as log(1 + u_k) and log prefactors in tau."""
    mod = v.module
    check_generator(gen, mod.d)
    if gen.kind == "e":
        return v._new({key: f for key, f in v.terms.items() if key[0] == gen.arg})
    k = gen.arg
    if gen.kind == "x":
        return v.mul_series(log1p_series(mod.d, v.order, k))
    return _act_tau(v, k, _log_unit_factory(mod.d, k))


def sigma_twist(v: CompletedTensorVector, direction: str = "forward") -> CompletedTensorVector:
    """Coefficient-wise substitution u_k -> exp(u_k) - 1 (forward) or log(1 + u_k) (inverse)."""
    d, order = v.module.d, v.order
    if direction == "forward":
        subs = [expm1_series(d, order, k) for k in range(1, d + 1)]
    elif direction == "inverse":
        subs = [log1p_series(d, order, k) for k in range(1, d + 1)]
    else:
        raise ValueError("direction must be 'forward' or 'inverse'")
    return v._new({key: series_substitute(f, subs) for key, f in v.terms.items()})


# -- the left quantum-loop action ----------------------------------------------------

def act_uq(gen, v: CompletedTensorVector) -> CompletedTensorVector:
    """A Chevalley generator ("e"|"f"|"K", i) acting with z_k = a_{i_k} (1 + u_k)."""
    mod = v.module
    d, order = mod.d, v.order
    out = {}
    for (seq, b), f in v.terms.items():
        sp = mod.spaces[seq]
        ex = sp.exponents
        for tb, c, zexp in sp.action.apply(gen, b):
            g = f.scale(c)
            for k, e in enumerate(zexp, start=1):
                if e:
                    g = g.scale(RationalFunctionQ.q_power(e * ex[k - 1])) * _one_plus_u(d, order, k, e)
            key = (seq, tb)
            h = out.get(key)
            out[key] = g if h is None else h + g
    return CompletedTensorVector(mod, out, order)


# -- verification ------------------------------------------------------------------

def _eval_side(side, v, action):
    acc = None
    for c, word in side:
        w = v
        for g in word:
            w = action(g, w)
        if c != 1:
            w = w.scale(c)
        acc = w if acc is None else acc + w
    return acc if acc is not None else v.module.zero(v.order)


def _uq_gens(n: int):
    return [g for g in generators(n) if g[0] != "K"] + [("K", i) for i in range(n + 1)]


def _gen_str(g) -> str:
    return f"{g[0]}_{g[1]}"


def verify_bimodule(pt: PhiTable, beta, order: int = 4, trials: int = 3, seed: int = 0,
                    actions=("twisted",)) -> Report:
    """KLR relations for the chosen right actions plus left/right commutation.

    Every identity is asserted in the truncated ring at the smallest order
    of the two sides; that order is recorded per check.
    """
    mod = Bimodule(pt, beta, order)
    rng = random.Random(seed)
    report = Report(f"bimodule {pt.rs.name} beta={tuple(beta)} N={order}", "duality",
                    meta={"type": pt.rs.name, "beta": list(beta), "N": order,
                          "trials": trials, "seed": seed})
    table = {"twisted": act_klr_twisted, "log": act_klr_log}
    for name in actions:
        action = table[name]
        for inst in relation_instances(pt.quiver, mod.seqs):
            comps = source_components(inst, pt.quiver, mod.seqs)
            witness, used = None, order
            for _ in range(trials):
                v = mod.random_vector(rng, comps)
                lhs = _eval_side(inst.lhs, v, action)
                rhs = _eval_side(inst.rhs, v, action)
                used = min(lhs.order, rhs.order)
                if not lhs.eq_upto(rhs, used):
                    witness = f"on {v}: lhs - rhs = {(lhs.truncate(used) - rhs.truncate(used))}"
                    break
            report.add(f"{name}:{inst.family}", inst.label, witness is None, witness, used)
    klr_gens = ([KLRGenerator("e", s) for s in mod.seqs]
                + [KLRGenerator("x", k) for k in range(1, mod.d + 1)]
                + [KLRGenerator("tau", k) for k in range(1, mod.d)])
    for g in klr_gens:
        for h in _uq_gens(pt.rs.rank):
            witness, used = None, order
            for _ in range(trials):
                v = mod.random_vector(rng)
                a = act_uq(h, act_klr_twisted(g, v))
                b = act_klr_twisted(g, act_uq(h, v))
                used = min(a.order, b.order)
                if not a.eq_upto(b, used):
                    witness = f"on {v}: difference {(a.truncate(used) - b.truncate(used))}"
                    break
            report.add("commute", f"{g} vs {_gen_str(h)}", witness is None, witness, used)
    return report


def _words(gens, max_length):
    out = [()]
    frontier = [()]
    for _ in range(max_length):
        frontier = [w + (g,) for w in frontier for g in gens]
        out += frontier
    return out


def klr_to_tensor(mod: Bimodule, v: CompletedKLRVector) -> CompletedTensorVector:
    """f 1_i -> f v_i."""
    return CompletedTensorVector(
        mod, {(s, mod.spaces[s].extremal()): f for s, f in v.terms.items()}, v.order
    )


def verify_highest_weight(pt: PhiTable, beta, order: int = 4, max_length: int = 3) -> Report:
    """Words of length <= max_length on every v_i against the completed polynomial representation."""
    mod = Bimodule(pt, beta, order)
    report = Report(f"highest weight {pt.rs.name} beta={tuple(beta)} N={order}", "duality",
                    meta={"type": pt.rs.name, "beta": list(beta), "N": order})
    gens = ([KLRGenerator("e", s) for s in mod.seqs]
            + [KLRGenerator("x", k) for k in range(1, mod.d + 1)]
            + [KLRGenerator("tau", k) for k in range(1, mod.d)])
    one = TruncSeries.constant(mod.d, order, 1)
    for s in mod.seqs:
        for word in _words(gens, max_length):
            p = CompletedKLRVector(pt.quiver, mod.d, {s: one}, order)
            v = mod.extremal_vector(s)
            for g in word:
                p = act_completed(g, p)
                v = act_klr_twisted(g, v)
            expected = klr_to_tensor(mod, p)
            used = min(v.order, expected.order)
            ok = v.eq_upto(expected, used)
            label = f"i={s}, word={' '.join(map(str, word)) or '1'}"
            report.add("hwspace", label, ok,
                       None if ok else f"tensor side {v}, polynomial side {expected}", used)
    return report


def check_simple_pole(pt: PhiTable, i1: int, i2: int) -> dict:
    """Order of the zero of d_{i1,i2}(u) at u = a_{i2}/a_{i1}; passes when at most one."""
    r = r_matrix_for_pair(pt, i1, i2)
    m = pt.spectral_exponent(i1, i2)
    order = pole_order(r.denominator, RationalFunctionQ.q_power(m))
    return {
        "i1": i1,
        "i2": i2,
        "point": f"q^{m}",
        "denominator": r.denominator_coeffs(),
        "order": order,
        "pass": order <= 1,
    }


def check_all_pairs(pt: PhiTable) -> list[dict]:
    vs = list(pt.rs.vertices())
    return [check_simple_pole(pt, a, b) for a, b in product(vs, vs)]
