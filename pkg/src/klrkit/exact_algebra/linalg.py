"""Exact right-kernel computation by fraction-free (Bareiss) elimination."""

from __future__ import annotations


def _to_sparse_rows(matrix, ncols):
    rows = []
    for row in matrix:
        if isinstance(row, dict):
            r = {c: v for c, v in row.items() if v}
        else:
            if ncols is None:
                ncols = len(row)
            r = {c: v for c, v in enumerate(row) if v}
        if r:
            rows.append(r)
    return rows, ncols


def bareiss_echelon(matrix, ncols=None, one=1):
    """Row echelon form by Bareiss elimination on sparse rows.

    ``matrix`` is a list of dense rows or of ``{column: entry}`` dicts.
    Returns ``(pivots, ncols)`` where ``pivots`` is a list of
    ``(column, row)`` pairs in increasing column order.  The pivot for a
    column is the first remaining row (in input order) with a nonzero entry
    there.
    """
    rows, ncols = _to_sparse_rows(matrix, ncols)
    if ncols is None:
        ncols = 1 + max((c for r in rows for c in r), default=-1)
    prev = one
    pivots = []
    for col in range(ncols):
        idx = next((i for i, r in enumerate(rows) if col in r), None)
        if idx is None:
            continue
        prow = rows.pop(idx)
        p = prow[col]
        updated = []
        for r in rows:
            a = r.get(col)
            if a is None:
                new = {c: (p * v) / prev for c, v in r.items()}
            else:
                new = {}
                for c in set(r) | set(prow):
                    if c == col:
                        continue
                    v = p * r.get(c, 0) - a * prow.get(c, 0)
                    if v:
                        new[c] = v / prev
            new = {c: v for c, v in new.items() if v}
            if new:
                updated.append(new)
        rows = updated
        pivots.append((col, prow))
        prev = p
        if not rows:
            break
    return pivots, ncols


def solve_nullspace(matrix, ncols=None, one=1, zero=0):
    """Canonical basis of {v : M v = 0}.

    Each basis vector has a 1 in one free column and 0 in every other free
    column (the reduced-row-echelon basis), listed by increasing free column.
    """
    pivots, ncols = bareiss_echelon(matrix, ncols, one)
    pivot_cols = [c for c, _ in pivots]
    free = [c for c in range(ncols) if c not in set(pivot_cols)]
    basis = []
    for f in free:
        x = {f: one}
        for col, row in reversed(pivots):
            acc = zero
            for c, v in row.items():
                if c != col and c in x:
                    acc = acc + v * x[c]
            if acc:
                x[col] = -acc / row[col]
        basis.append([x.get(c, zero) for c in range(ncols)])
    return basis


def rank(matrix, ncols=None, one=1) -> int:
    pivots, _ = bareiss_echelon(matrix, ncols, one)
    return len(pivots)
