"""Type-A fundamental modules of the quantum loop algebra and their R-matrices.

Conventions, fixed here once:

* ``U_q(sl_{n+1})^`` in the Chevalley presentation with generators e_i, f_i,
  K_i for i = 0..n and the coproduct
  ``D(e) = e (x) K^-1 + 1 (x) e``, ``D(f) = f (x) 1 + K (x) f``, ``D(K) = K (x) K``.
* The l-th fundamental module is the exterior power with basis the
  l-subsets S of {1..n+1}.  For i >= 1, e_i replaces i+1 by i and f_i
  replaces i by i+1 (all coefficients 1), and K_i = q^([i in S] - [i+1 in S]).
  The affine generators use the spectral parameter z: e_0 replaces 1 by n+1
  with coefficient ``e0_coefficient(l) * z``, f_0 replaces n+1 by 1 with the
  inverse coefficient, and K_0 = q^([n+1 in S] - [1 in S]).
* The extremal vector is S = {1..l}, the highest-weight vector.
* R-matrices map W1(z1) (x) W2(z2) -> W2(z2) (x) W1(z1) and depend on u = z2/z1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product

from .errors import InvariantViolation, NonUniqueIntertwiner, ZeroIntertwiner
from .exact_algebra import (
    QQ_ONE,
    QQ_ZERO,
    MultiPoly,
    RationalFunctionQ,
    RationalFunctionQU,
    UPoly,
    solve_nullspace,
)
from .exact_algebra.ratfunc import _multiplicity

# e_0 acts on the vector representation as E0_SCALE * z * (v_1 -> v_{n+1});
# this makes the denominator for two vector representations vanish at u = q^2.
E0_SCALE = RationalFunctionQ(-1)


def e0_coefficient(level: int) -> RationalFunctionQ:
    """E0_SCALE times the sign (-1)^(level-1) of moving v_{n+1} past the other wedge factors."""
    return E0_SCALE * (-1) ** (level - 1)


def generators(n: int):
    """All Chevalley generators ("e"|"f"|"K", i), i = 0..n, in a fixed order."""
    return [(kind, i) for i in range(n + 1) for kind in ("e", "f", "K")]


@dataclass(frozen=True)
class FundamentalModule:
    n: int
    level: int
    basis: tuple = field(repr=False)
    index: dict = field(repr=False, hash=False, compare=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def extremal(self) -> int:
        return 0  # {1..l} is lexicographically first

    def weight(self, b: int) -> tuple:
        """Fundamental-weight coordinates of basis vector b."""
        s = self.basis[b]
        return tuple(int(i in s) - int(i + 1 in s) for i in range(1, self.n + 1))

    def k_exp(self, i: int, b: int) -> int:
        s = self.basis[b]
        if i == 0:
            return int(self.n + 1 in s) - int(1 in s)
        return int(i in s) - int(i + 1 in s)

    def apply(self, gen, b: int) -> list:
        """gen applied to basis vector b: list of (b', coefficient in Q(q), z-exponent)."""
        kind, i = gen
        s = self.basis[b]
        if kind == "K":
            return [(b, RationalFunctionQ.q_power(self.k_exp(i, b)), 0)]
        if i == 0:
            src, dst = (1, self.n + 1) if kind == "e" else (self.n + 1, 1)
            coeff = e0_coefficient(self.level)
            if kind == "f":
                coeff = coeff.inverse()
            zexp = 1 if kind == "e" else -1
        else:
            src, dst = (i + 1, i) if kind == "e" else (i, i + 1)
            coeff, zexp = QQ_ONE, 0
        if src not in s or dst in s:
            return []
        t = tuple(sorted((set(s) - {src}) | {dst}))
        return [(self.index[t], coeff, zexp)]


@lru_cache(maxsize=None)
def build_fundamental(n: int, level: int) -> FundamentalModule:
    if n < 1 or not 1 <= level <= n:
        raise ValueError(f"level must lie in 1..{n}, got {level}")
    basis = tuple(combinations(range(1, n + 2), level))
    mod = FundamentalModule(n, level, basis, {s: k for k, s in enumerate(basis)})
    _check_module(mod)
    return mod


def _check_module(mod: FundamentalModule) -> None:
    """Weights, K-eigenvalues and the [e_i, f_i] relation on every basis vector."""
    for b in range(mod.dim):
        for i in range(mod.n + 1):
            for kind, shift in (("e", 1), ("f", -1)):
                for t, _, zexp in mod.apply((kind, i), b):
                    if mod.k_exp(i, t) - mod.k_exp(i, b) != 2 * shift:
                        raise InvariantViolation(f"{kind}_{i} does not shift the K_{i}-weight by 2")
                    if (zexp != 0) != (i == 0):
                        raise InvariantViolation("only e_0, f_0 may carry z")
            ef = sum((c1 * c2 for t, c1, _ in mod.apply(("f", i), b)
                      for t2, c2, _ in mod.apply(("e", i), t) if t2 == b), QQ_ZERO)
            fe = sum((c1 * c2 for t, c1, _ in mod.apply(("e", i), b)
                      for t2, c2, _ in mod.apply(("f", i), t) if t2 == b), QQ_ZERO)
            m = mod.k_exp(i, b)
            q = RationalFunctionQ.q()
            want = (RationalFunctionQ.q_power(m) - RationalFunctionQ.q_power(-m)) / (q - q.inverse())
            if ef - fe != want:
                raise InvariantViolation(f"[e_{i}, f_{i}] fails on basis vector {mod.basis[b]}")


# -- tensor products ------------------------------------------------------------

@dataclass(frozen=True)
class TensorAction:
    """Generators acting on m_1 (x) ... (x) m_r through the iterated coproduct.

    ``apply`` returns entries (target, coefficient in Q(q), z-exponent
    vector); the consumer decides what the spectral parameters z_k are.
    """

    modules: tuple

    @property
    def n(self) -> int:
        return self.modules[0].n

    @property
    def dim(self) -> int:
        out = 1
        for m in self.modules:
            out *= m.dim
        return out

    def basis(self) -> list[tuple]:
        return list(product(*(range(m.dim) for m in self.modules)))

    def weight(self, b: tuple) -> tuple:
        out = [0] * self.n
        for m, x in zip(self.modules, b):
            for j, w in enumerate(m.weight(x)):
                out[j] += w
        return tuple(out)

    def apply(self, gen, b: tuple) -> list:
        kind, i = gen
        r = len(self.modules)
        kexp = [m.k_exp(i, x) for m, x in zip(self.modules, b)]
        if kind == "K":
            return [(b, RationalFunctionQ.q_power(sum(kexp)), (0,) * r)]
        out = []
        for k, (m, x) in enumerate(zip(self.modules, b)):
            # e: K^-1 on the factors after k;  f: K on the factors before k
            shift = -sum(kexp[k + 1:]) if kind == "e" else sum(kexp[:k])
            for t, c, zexp in m.apply(gen, x):
                tb = b[:k] + (t,) + b[k + 1:]
                ze = tuple(zexp if j == k else 0 for j in range(r))
                out.append((tb, c * RationalFunctionQ.q_power(shift), ze))
        return out


def tensor_with_parameters(m1: FundamentalModule, z1, m2: FundamentalModule, z2):
    """The two-factor tensor action with explicit spectral parameters.

    Returns (action, matrices) where matrices[gen] maps a source basis pair
    to a list of (target pair, coefficient) with z substituted.
    """
    if m1.n != m2.n:
        raise ValueError("tensor factors must have the same rank")
    ta = TensorAction((m1, m2))
    zs = (z1, z2)
    mats = {}
    for gen in generators(m1.n):
        mats[gen] = {b: [(t, _zsub(c, ze, zs)) for t, c, ze in ta.apply(gen, b)] for b in ta.basis()}
    return ta, mats


def _zsub(c, zexp, zs):
    out = c
    for z, e in zip(zs, zexp):
        if e > 0:
            out = z ** e * out
        elif e < 0:
            out = (1 / z) ** (-e) * out
    return out


# -- the normalized R-matrix -------------------------------------------------------

@dataclass
class NormalizedRMatrix:
    n: int
    level1: int
    level2: int
    entries: dict  # (target pair (c2, c1), source pair (b1, b2)) -> RationalFunctionQU
    denominator: UPoly
    source: TensorAction = field(repr=False)
    target: TensorAction = field(repr=False)

    def entry(self, t, s) -> RationalFunctionQU:
        return self.entries.get((t, s), RationalFunctionQU())

    def columns(self) -> dict:
        """source pair -> list of (target pair, entry)."""
        out = {}
        for (t, s), v in self.entries.items():
            out.setdefault(s, []).append((t, v))
        return out

    def numerator_matrix(self) -> dict:
        """d(u) * R as polynomial entries."""
        out = {}
        for key, v in self.entries.items():
            out[key] = v.num * (self.denominator // v.den)
        return out

    def denominator_coeffs(self) -> list[str]:
        return [c.canonical_str() for c in self.denominator.coeffs]

    def to_dict(self) -> dict:
        m1 = build_fundamental(self.n, self.level1)
        m2 = build_fundamental(self.n, self.level2)
        src = [f"{_set_str(m1.basis[a])}x{_set_str(m2.basis[b])}" for a, b in self.source.basis()]
        tgt = [f"{_set_str(m2.basis[a])}x{_set_str(m1.basis[b])}" for a, b in self.target.basis()]
        sidx = {s: k for k, s in enumerate(self.source.basis())}
        tidx = {t: k for k, t in enumerate(self.target.basis())}
        rows = [["0"] * len(src) for _ in tgt]
        for (t, s), v in self.entries.items():
            rows[tidx[t]][sidx[s]] = qu_canonical_str(v)
        return {
            "n": self.n,
            "lambda1": self.level1,
            "lambda2": self.level2,
            "variable": "u=z2/z1",
            "source_basis": src,
            "target_basis": tgt,
            "denominator": self.denominator_coeffs(),
            "entries": rows,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False) + "\n"


def _set_str(s) -> str:
    return "{" + ",".join(map(str, s)) + "}"


def upoly_canonical_str(p: UPoly) -> str:
    """A polynomial in u with Q(q) coefficients, highest power first."""
    return str(p)


def qu_canonical_str(f: RationalFunctionQU) -> str:
    """"(num)/(den)" with den monic in u and coprime to num."""
    return f"({upoly_canonical_str(f.num)})/({upoly_canonical_str(f.den)})"


def _intertwiner_equations(unknowns, src_mat, tgt_mat, zero):
    """Rows of R.A - B.R = 0, with R given by the unknown positions.

    unknowns: list of (t, s); src_mat/tgt_mat: column dicts of A and B.
    """
    by_source = {}
    by_target = {}
    for idx, (t, s) in enumerate(unknowns):
        by_source.setdefault(s, []).append((t, idx))
        by_target.setdefault(t, []).append((s, idx))
    eqs = {}

    def add(key, idx, c):
        row = eqs.setdefault(key, {})
        v = row.get(idx)
        row[idx] = c if v is None else v + c

    # (R A)[t, s] = sum_{s'} R[t, s'] A[s', s]
    for s, col in src_mat.items():
        for s2, a in col:
            for t, idx in by_source.get(s2, ()):
                add((t, s), idx, a)
    # (B R)[t, s] = sum_{t'} B[t, t'] R[t', s]
    for t2, col in tgt_mat.items():
        for t, b in col:
            for s, idx in by_target.get(t2, ()):
                add((t, s), idx, -b)
    return [r for r in eqs.values() if any(r.values())]


@lru_cache(maxsize=None)
def solve_normalized_R(n: int, level1: int, level2: int) -> NormalizedRMatrix:
    """The unique intertwiner W(l1)_{z1} (x) W(l2)_{z2} -> W(l2)_{z2} (x) W(l1)_{z1}
    sending w1 (x) w2 to w2 (x) w1, as a matrix over Q(q)(u), u = z2/z1.

    Solved in two stages: the classical generators (i >= 1) and weight
    preservation cut the unknowns down to classical intertwiners over Q(q);
    the affine generators then fix the Q(q)(u)-combination.
    """
    m1, m2 = build_fundamental(n, level1), build_fundamental(n, level2)
    one_u = RationalFunctionQU(1)
    u = RationalFunctionQU.u()
    src, src_mats = tensor_with_parameters(m1, one_u, m2, u)
    tgt, tgt_mats = tensor_with_parameters(m2, u, m1, one_u)

    unknowns = [(t, s) for s in src.basis() for t in tgt.basis() if tgt.weight(t) == src.weight(s)]

    rows = []
    for i in range(1, n + 1):
        for kind in ("e", "f"):
            gen = (kind, i)
            # classical generators carry no z, so these entries lie in Q(q)
            rows += _intertwiner_equations(unknowns, src_mats[gen], tgt_mats[gen], QQ_ZERO)
    classical_basis = solve_nullspace(rows, len(unknowns), QQ_ONE, QQ_ZERO)
    if not classical_basis:
        raise ZeroIntertwiner("no classical intertwiner")
    candidates = [{unknowns[k]: v for k, v in enumerate(vec) if v} for vec in classical_basis]

    # stage 2: affine generators on the span of the classical intertwiners
    rows2 = {}
    for gen in (("e", 0), ("f", 0)):
        for j, cand in enumerate(candidates):
            cand_u = {key: RationalFunctionQU(UPoly((v,))) for key, v in cand.items()}
            for key, val in _commutator(cand_u, src_mats[gen], tgt_mats[gen]).items():
                if val:
                    rows2.setdefault((gen, key), {})[j] = val
    sols = solve_nullspace(list(rows2.values()), len(candidates), one_u, RationalFunctionQU())
    if len(sols) != 1:
        raise NonUniqueIntertwiner(
            f"intertwiner space for ({level1}, {level2}) has dimension {len(sols)}"
        )
    coeffs = sols[0]
    entries = {}
    for c, cand in zip(coeffs, candidates):
        if not c:
            continue
        for key, v in cand.items():
            entries[key] = entries.get(key, RationalFunctionQU()) + c * v
    w12 = (m1.extremal, m2.extremal)
    w21 = (m2.extremal, m1.extremal)
    norm = entries.get((w21, w12))
    if not norm:
        raise ZeroIntertwiner("the intertwiner vanishes on w1 (x) w2")
    entries = {k: v / norm for k, v in entries.items() if v}
    den = UPoly((1,))
    for v in entries.values():
        den = den * (v.den // den.gcd(v.den))
    r = NormalizedRMatrix(n, level1, level2, entries, den.monic(), src, tgt)
    _check_intertwiner(r, src_mats, tgt_mats)
    if not den(QQ_ONE):
        raise InvariantViolation("d(1) = 0")
    return r


def _commutator(rmat: dict, a_cols: dict, b_cols: dict) -> dict:
    """R.A - B.R for R given as {(t, s): value}."""
    by_source = {}
    for (t, s), v in rmat.items():
        by_source.setdefault(s, []).append((t, v))
    out = {}
    for s, col in a_cols.items():
        for s2, a in col:
            for t, v in by_source.get(s2, ()):
                out[(t, s)] = out.get((t, s), 0) + v * a
    for (t2, s), v in rmat.items():
        for t, b in b_cols.get(t2, ()):
            out[(t, s)] = out.get((t, s), 0) - v * b
    return out


def _check_intertwiner(r: NormalizedRMatrix, src_mats, tgt_mats) -> None:
    for gen in generators(r.n):
        bad = [k for k, v in _commutator(r.entries, src_mats[gen], tgt_mats[gen]).items() if v]
        if bad:
            raise InvariantViolation(f"R does not intertwine {gen[0]}_{gen[1]}")


def verify_intertwiner(r: NormalizedRMatrix) -> dict:
    """Per-generator exact check of R.D12(g) = D21(g).R (for reporting)."""
    m1, m2 = build_fundamental(r.n, r.level1), build_fundamental(r.n, r.level2)
    one_u, u = RationalFunctionQU(1), RationalFunctionQU.u()
    _, src_mats = tensor_with_parameters(m1, one_u, m2, u)
    _, tgt_mats = tensor_with_parameters(m2, u, m1, one_u)
    return {
        f"{g[0]}_{g[1]}": not any(_commutator(r.entries, src_mats[g], tgt_mats[g]).values())
        for g in generators(r.n)
    }


def pole_order(d: UPoly, point) -> int:
    """Largest m with (u - point)^m dividing d(u)."""
    if d.is_zero():
        raise ValueError("the zero polynomial has no finite pole order")
    return _multiplicity(d, UPoly.linear_root(point))


def expected_denominator(n: int, k: int, l: int) -> UPoly:
    """prod_{s=1}^{min(k,l,n+1-k,n+1-l)} (u - q^{|k-l|+2s})."""
    out = UPoly((1,))
    for s in range(1, min(k, l, n + 1 - k, n + 1 - l) + 1):
        out = out * UPoly.linear_root(RationalFunctionQ.q_power(abs(k - l) + 2 * s))
    return out


def invert_u(f: RationalFunctionQU) -> RationalFunctionQU:
    """f(1/u)."""
    a, b = f.num.degree(), f.den.degree()
    m = max(a, b)
    num = UPoly(tuple(reversed(f.num.coeffs)) if a >= 0 else ()) * UPoly.u() ** (m - a)
    den = UPoly(tuple(reversed(f.den.coeffs))) * UPoly.u() ** (m - b)
    return RationalFunctionQU(num, den)


def unitarity_product(r12: NormalizedRMatrix, r21: NormalizedRMatrix) -> dict:
    """R21(1/u) R12(u) as {(t, s): entry} on W1 (x) W2."""
    cols21 = {}
    for (t, s), v in r21.entries.items():
        cols21.setdefault(s, []).append((t, invert_u(v)))
    out = {}
    for (mid, s), v in r12.entries.items():
        for t, w in cols21.get(mid, ()):
            out[(t, s)] = out.get((t, s), RationalFunctionQU()) + w * v
    return {k: v for k, v in out.items() if v}


# -- Yang-Baxter -------------------------------------------------------------------

def _homogenized(r: NormalizedRMatrix, which: str) -> tuple[dict, int]:
    """Numerator matrix of R as polynomials in (u1, u2).

    which = "u1": argument u1; "u2": argument u2; "ratio": argument u2/u1,
    multiplied through by u1^D with D the top degree.
    """
    num = r.numerator_matrix()
    top = max(p.degree() for p in num.values())
    out = {}
    for key, p in num.items():
        terms = {}
        for k, c in enumerate(p.coeffs):
            if not c:
                continue
            if which == "u1":
                e = (k, 0)
            elif which == "u2":
                e = (0, k)
            else:
                e = (top - k, k)
            terms[e] = c
        out[key] = MultiPoly(2, terms)
    return out, top


def _apply_pair(vec: dict, pos: int, mat: dict) -> dict:
    """Apply a two-factor matrix {(t, s): coeff} at tensor positions pos, pos+1."""
    cols = {}
    for (t, s), c in mat.items():
        cols.setdefault(s, []).append((t, c))
    out = {}
    for b, coeff in vec.items():
        for t, c in cols.get((b[pos], b[pos + 1]), ()):
            nb = b[:pos] + t + b[pos + 2:]
            v = out.get(nb)
            out[nb] = coeff * c if v is None else v + coeff * c
    return {k: v for k, v in out.items() if v}


def check_yang_baxter(n: int, l1: int, l2: int, l3: int) -> bool:
    """Braid-form Yang-Baxter equation for W(l1)_{z1} (x) W(l2)_{z2} (x) W(l3)_{z3}.

    With z1 = 1, z2 = u1, z3 = u2 both sides are compared after clearing
    the (common) scalar denominators, exactly in Q(q)[u1, u2].
    """
    r12, _ = _homogenized(solve_normalized_R(n, l1, l2), "u1")
    r13, _ = _homogenized(solve_normalized_R(n, l1, l3), "u2")
    r23, _ = _homogenized(solve_normalized_R(n, l2, l3), "ratio")
    dims = [build_fundamental(n, l).dim for l in (l1, l2, l3)]
    one = MultiPoly.constant(2, QQ_ONE)
    for b in product(*(range(d) for d in dims)):
        left = _apply_pair(_apply_pair(_apply_pair({b: one}, 0, r12), 1, r13), 0, r23)
        right = _apply_pair(_apply_pair(_apply_pair({b: one}, 1, r23), 0, r13), 1, r12)
        if left != right:
            return False
    return True


def r_matrix_for_pair(pt, i1: int, i2: int) -> NormalizedRMatrix:
    """The normalized R-matrix between W(lambda_{i1}) and W(lambda_{i2}) of a PhiTable."""
    rs = pt.rs
    if rs.type_tag != "A":
        raise ValueError("R-matrices are only available in type A")
    return solve_normalized_R(rs.rank, pt.lambda_of[i1], pt.lambda_of[i2])
