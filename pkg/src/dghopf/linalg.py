"""Exact sparse Gaussian elimination over the rationals.

Vectors are plain dicts ``{index: Fraction}`` with no stored zeros.  Pivots
are chosen by a caller-supplied ordering of the indices so that two
different orders give genuinely different (but equally valid) reductions.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

Vec = Dict[Hashable, Fraction]


def clean(v: Vec) -> Vec:
    return {k: c for k, c in v.items() if c}


def axpy(y: Vec, a: Fraction, x: Vec) -> None:
    """In place y += a*x, dropping cancelled entries."""
    if not a:
        return
    for k, c in x.items():
        s = y.get(k, 0) + a * c
        if s:
            y[k] = s
        else:
            y.pop(k, None)


def scaled(v: Vec, a: Fraction) -> Vec:
    if not a:
        return {}
    return {k: a * c for k, c in v.items()}


class Echelon:
    """Incrementally maintained reduced row echelon basis of a span.

    ``rank_key`` orders candidate pivots; the smallest key wins.
    Each stored row may carry a payload vector that is transformed in
    lockstep (used to track solutions of linear systems).
    """

    def __init__(self, rank_key: Optional[Callable[[Hashable], object]] = None):
        self.rank_key = rank_key or (lambda k: k)
        self.rows: Dict[Hashable, Vec] = {}
        self.payload: Dict[Hashable, Vec] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Vec, payload: Optional[Vec] = None) -> Tuple[Vec, Vec]:
        v = dict(v)
        p = dict(payload) if payload is not None else {}
        for piv in [k for k in v if k in self.rows]:
            c = v.get(piv)
            if c:
                axpy(v, -c, self.rows[piv])
                axpy(p, -c, self.payload[piv])
        return v, p

    def add(self, v: Vec, payload: Optional[Vec] = None) -> Optional[Hashable]:
        """Insert v; return the new pivot, or None if v was dependent."""
        r, p = self.reduce(v, payload)
        if not r:
            return None
        piv = min(r, key=self.rank_key)
        inv = 1 / r[piv]
        r = scaled(r, inv)
        p = scaled(p, inv)
        for k, row in self.rows.items():
            c = row.get(piv)
            if c:
                axpy(row, -c, r)
                axpy(self.payload[k], -c, p)
        self.rows[piv] = r
        self.payload[piv] = p
        return piv

    def contains(self, v: Vec) -> bool:
        r, _ = self.reduce(v)
        return not r

    def basis(self) -> List[Vec]:
        return [self.rows[k] for k in sorted(self.rows, key=self.rank_key)]


def span_basis(vectors: Iterable[Vec], rank_key=None) -> List[Vec]:
    e = Echelon(rank_key)
    for v in vectors:
        e.add(v)
    return e.basis()


def solve(
    rows: Sequence[Tuple[Vec, Fraction]],
    variables: Sequence[Hashable],
    rank_key=None,
) -> Optional[Tuple[Vec, List[Vec]]]:
    """Solve sum_j a_ij x_j = b_i.

    Returns ``(particular, kernel_basis)`` with free variables set to zero
    in the particular solution, or ``None`` if the system is inconsistent.
    The right-hand side rides along as the special column ``None``.
    """
    order = {v: i for i, v in enumerate(variables)}
    if rank_key is None:
        key = lambda k: (1, 0) if k is None else (0, order[k])
    else:
        key = lambda k: (1, 0) if k is None else (0, rank_key(k))
    e = Echelon(key)
    for a, b in rows:
        row = dict(a)
        if b:
            row[None] = -Fraction(b)
        e.add(row)
    if None in e.rows:
        return None
    particular: Vec = {}
    pivots = set(e.rows)
    for piv, row in e.rows.items():
        c = row.get(None)
        if c:
            particular[piv] = -c
    kernel: List[Vec] = []
    for f in variables:
        if f in pivots:
            continue
        k = {f: Fraction(1)}
        for piv, row in e.rows.items():
            c = row.get(f)
            if c:
                k[piv] = -c
        kernel.append(k)
    return particular, kernel


def kernel(columns: Dict[Hashable, Vec], variables: Sequence[Hashable], rank_key=None) -> List[Vec]:
    """Kernel of the matrix whose column for variable j is ``columns[j]``."""
    rows: Dict[Hashable, Vec] = {}
    for j in variables:
        for i, c in columns.get(j, {}).items():
            rows.setdefault(i, {})[j] = c
    res = solve([(r, Fraction(0)) for r in rows.values()], variables, rank_key)
    assert res is not None
    return res[1]
