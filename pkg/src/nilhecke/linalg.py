"""Exact sparse linear algebra over QQ.

Vectors are dicts ``key -> rational`` with arbitrary hashable keys; a list of
such vectors is read as the columns of a matrix.  The row reduction itself is
sympy's ``DomainMatrix`` over ``QQ``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, List, Mapping, Optional, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Vector = Mapping[Hashable, object]


def _qq(c):
    c = Fraction(c)
    return QQ(c.numerator, c.denominator)


def _frac(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def _index_keys(vectors: Sequence[Vector]) -> Dict[Hashable, int]:
    keys: Dict[Hashable, int] = {}
    for vec in vectors:
        for k, v in vec.items():
            if v and k not in keys:
                keys[k] = len(keys)
    return keys


def _column_matrix(columns: Sequence[Vector], keys: Dict[Hashable, int]) -> DomainMatrix:
    rows: Dict[int, Dict[int, object]] = {}
    for j, col in enumerate(columns):
        for k, v in col.items():
            if v:
                rows.setdefault(keys[k], {})[j] = _qq(v)
    return DomainMatrix(rows, (max(len(keys), 1), len(columns)), QQ)


def _row_matrix(vectors: Sequence[Vector], keys: Dict[Hashable, int]) -> DomainMatrix:
    rows = {j: {keys[k]: _qq(v) for k, v in vec.items() if v} for j, vec in enumerate(vectors)}
    return DomainMatrix(rows, (len(vectors), max(len(keys), 1)), QQ)


def rank_columns(columns: Sequence[Vector]) -> int:
    if not columns:
        return 0
    return _column_matrix(columns, _index_keys(columns)).rank()


def nullspace_columns(columns: Sequence[Vector]) -> List[List[Fraction]]:
    """Basis of ``{c : sum_j c_j columns[j] = 0}``, one list per kernel vector."""
    if not columns:
        return []
    keys = _index_keys(columns)
    if not keys:
        return [[Fraction(int(i == j)) for i in range(len(columns))] for j in range(len(columns))]
    ns = _column_matrix(columns, keys).nullspace()
    return [[_frac(x) for x in row] for row in ns.to_list()]


def solve_columns(columns: Sequence[Vector], target: Vector) -> Optional[List[Fraction]]:
    """A solution ``c`` of ``sum_j c_j columns[j] = target`` (free variables zero), or None."""
    n = len(columns)
    if not any(target.values()):
        return [Fraction(0)] * n
    if not columns:
        return None
    allcols = list(columns) + [target]
    keys = _index_keys(allcols)
    red, pivots = _column_matrix(allcols, keys).rref()
    if n in pivots:
        return None
    sol = [Fraction(0)] * n
    for r, p in enumerate(pivots):
        sol[p] = _frac(red[r, n].element)
    return sol


def reduce_mod_span(columns: Sequence[Vector], target: Vector) -> Dict[Hashable, Fraction]:
    """Canonical remainder of ``target`` modulo the span of ``columns``.

    The remainder depends only on the span and on the key order of the
    vectors, and is empty exactly when ``target`` lies in the span.
    """
    if not any(target.values()):
        return {}
    keys = _index_keys(list(columns) + [target])
    inv = {i: k for k, i in keys.items()}
    vec = [QQ(0)] * len(keys)
    for k, v in target.items():
        if v:
            vec[keys[k]] = _qq(v)
    if columns:
        red, pivots = _row_matrix(columns, keys).rref()
        dense = red.to_list()
        for r, p in enumerate(pivots):
            c = vec[p]
            if c:
                row = dense[r]
                vec = [a - c * b for a, b in zip(vec, row)]
    return {inv[i]: _frac(v) for i, v in enumerate(vec) if v}
