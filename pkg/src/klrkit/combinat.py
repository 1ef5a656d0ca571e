"""Enumeration of residue sequences I^beta and Kostant partitions KP(beta)."""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .root_system import RootSystem, Weight


@dataclass(frozen=True)
class DimensionVector:
    beta: tuple

    def __post_init__(self):
        if any(b < 0 for b in self.beta):
            raise ValueError(f"dimension vector {self.beta} has negative entries")

    @property
    def height(self) -> int:
        return sum(self.beta)

    def as_weight(self, rs: RootSystem) -> Weight:
        return rs.from_alpha(self.beta)

    @classmethod
    def parse(cls, text: str) -> "DimensionVector":
        return cls(tuple(int(x) for x in text.split(",") if x.strip() != ""))


@dataclass(frozen=True)
class KostantPartition:
    multiplicities: tuple  # ((root index in rs.positive_roots, m), ...) with m > 0

    def as_dict(self, rs: RootSystem) -> dict:
        return {rs.positive_roots[k]: m for k, m in self.multiplicities}

    def total(self, rs: RootSystem) -> Weight:
        acc = rs.zero()
        for k, m in self.multiplicities:
            acc = acc + rs.positive_roots[k] * m
        return acc

    def describe(self, rs: RootSystem) -> dict:
        return {rs.root_str(rs.positive_roots[k]): m for k, m in self.multiplicities}


def _as_beta(rs: RootSystem, beta) -> tuple:
    b = beta.beta if isinstance(beta, DimensionVector) else tuple(beta)
    if len(b) != rs.rank:
        raise ValueError(f"beta needs {rs.rank} entries, got {len(b)}")
    if any(x < 0 for x in b):
        raise ValueError(f"beta {b} has negative entries")
    return b


def enumerate_sequences(rs: RootSystem, beta) -> list[tuple]:
    """All i = (i_1..i_d) with alpha_{i_1} + ... + alpha_{i_d} = beta, in lex order."""
    counts = list(_as_beta(rs, beta))
    d = sum(counts)
    out = []
    seq = []

    def rec():
        if len(seq) == d:
            out.append(tuple(seq))
            return
        for v in range(1, rs.rank + 1):
            if counts[v - 1]:
                counts[v - 1] -= 1
                seq.append(v)
                rec()
                seq.pop()
                counts[v - 1] += 1

    rec()
    return out


def count_sequences(rs: RootSystem, beta) -> int:
    b = _as_beta(rs, beta)
    out = factorial(sum(b))
    for x in b:
        out //= factorial(x)
    return out


def enumerate_kostant(rs: RootSystem, beta) -> list[KostantPartition]:
    """All Kostant partitions of beta, by backtracking over rs.positive_roots in order."""
    target = list(_as_beta(rs, beta))
    roots = rs.positive_alpha
    out = []
    chosen = []

    def rec(k: int):
        if not any(target):
            out.append(KostantPartition(tuple(chosen)))
            return
        if k == len(roots):
            return
        root = roots[k]
        cap = min((target[j] // c for j, c in enumerate(root) if c), default=0)
        for m in range(cap, -1, -1):
            if m:
                for j, c in enumerate(root):
                    target[j] -= m * c
                chosen.append((k, m))
            rec(k + 1)
            if m:
                chosen.pop()
                for j, c in enumerate(root):
                    target[j] += m * c

    rec(0)
    return out


def sequence_permute(seq: tuple, w: tuple) -> tuple:
    """Right action (i_1..i_d).w = (i_{w(1)}, ..., i_{w(d)}); w is 1-based."""
    if len(w) != len(seq):
        raise ValueError(f"permutation of size {len(w)} applied to a sequence of length {len(seq)}")
    if sorted(w) != list(range(1, len(seq) + 1)):
        raise ValueError(f"{w} is not a permutation of 1..{len(seq)}")
    return tuple(seq[w[j] - 1] for j in range(len(seq)))


def transposition(d: int, k: int) -> tuple:
    """s_k in one-line notation."""
    w = list(range(1, d + 1))
    w[k - 1], w[k] = w[k], w[k - 1]
    return tuple(w)


def compose(w: tuple, v: tuple) -> tuple:
    """The permutation wv: j -> w(v(j))."""
    return tuple(w[v[j] - 1] for j in range(len(v)))


def swap_adjacent(seq: tuple, k: int) -> tuple:
    """seq . s_k."""
    s = list(seq)
    s[k - 1], s[k] = s[k], s[k - 1]
    return tuple(s)


def betas_up_to_height(rs: RootSystem, max_height: int) -> list[tuple]:
    """All beta in Q+ with 1 <= ht(beta) <= max_height, sorted by (height, beta)."""
    out = []

    def rec(prefix, remaining):
        if len(prefix) == rs.rank:
            if sum(prefix):
                out.append(tuple(prefix))
            return
        for a in range(remaining + 1):
            rec(prefix + [a], remaining - a)

    rec([], max_height)
    return sorted(out, key=lambda b: (sum(b), b))
