"""Parabolic idempotents and the corner algebra ``e_P NH e_P``.

The parabolic nil Hecke algebra is represented as the corner cut out of the
nil Hecke algebra by the averaging idempotent of ``W_J``; its elements act on
all of ``Q[t]`` and preserve the ``W_J``-invariants.  Module-theoretic claims
(matrix representations over ``W``-invariants, freeness over
``W_J``-invariants) are checked in explicitly bounded degree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import NHElement, NilHecke, wp_group_action
from .linalg import nullspace_columns, rank_columns, solve_columns
from .polyring import Polynomial, evaluate_at_zero
from .weyl import (
    WeylElement,
    enumerate_parabolic,
    invariant_basis,
    invariant_basis_homogeneous,
    is_invariant,
    is_min_coset_rep,
    min_coset_reps,
)

INDEPENDENT = "independent up to degree {}"
DEPENDENT = "dependence found at degree {}"


class NotACornerElement(ValueError):
    pass


class SpanError(ArithmeticError):
    def __init__(self, degree: int, message: str):
        self.degree = degree
        super().__init__(f"{message} (degree {degree})")


def _subset(nh: NilHecke, J: Iterable[int]) -> Tuple[int, ...]:
    J = tuple(sorted(set(J)))
    for j in J:
        if not 1 <= j <= nh.group.rank:
            raise ValueError(f"parabolic index {j} outside 1..{nh.group.rank}")
    return J


def idempotent(nh: NilHecke, J: Iterable[int]) -> NHElement:
    """``e_J = (1/|W_J|) sum_{w in W_J} w`` as a nil Hecke element."""
    J = _subset(nh, J)
    cache = nh.__dict__.setdefault("_idempotents", {})
    if J not in cache:
        sub = enumerate_parabolic(nh.group, J)
        total = nh.zero()
        for w in sub:
            total = total + nh.embed_weyl(w)
        cache[J] = total.scale(Fraction(1, len(sub)))
    return cache[J]


@dataclass(frozen=True)
class CornerElement:
    """An element ``h`` of ``e_J NH e_J``; ``e_J h e_J == h`` is checked on construction."""

    carrier: NHElement
    parabolic: Tuple[int, ...]

    def __post_init__(self):
        nh = self.carrier.algebra
        object.__setattr__(self, "parabolic", _subset(nh, self.parabolic))
        e = idempotent(nh, self.parabolic)
        if e * self.carrier * e != self.carrier:
            raise NotACornerElement("carrier is not fixed by idempotent sandwiching")

    @property
    def algebra(self) -> NilHecke:
        return self.carrier.algebra

    def __mul__(self, other: "CornerElement") -> "CornerElement":
        if other.parabolic != self.parabolic:
            raise ValueError("corner elements for different parabolics")
        return CornerElement(self.carrier * other.carrier, self.parabolic)

    def __add__(self, other: "CornerElement") -> "CornerElement":
        return CornerElement(self.carrier + other.carrier, self.parabolic)

    def __eq__(self, other) -> bool:
        return isinstance(other, CornerElement) and self.parabolic == other.parabolic and self.carrier == other.carrier

    def __hash__(self) -> int:
        return hash((self.parabolic, self.carrier))

    def preserves_invariants(self, max_degree: int) -> bool:
        nh = self.algebra
        return all(
            is_invariant(nh.group, nh.apply(self.carrier, b), self.parabolic)
            for b in invariant_basis(nh.group, max_degree, self.parabolic)
        )


def corner_project(h: NHElement, J: Iterable[int]) -> CornerElement:
    e = idempotent(h.algebra, J)
    return CornerElement(e * h * e, tuple(J))


def invariant_multiplication(nh: NilHecke, b: Polynomial, J: Iterable[int]) -> CornerElement:
    """``(b *) e_J`` for a ``W_J``-invariant ``b``."""
    J = _subset(nh, J)
    if not is_invariant(nh.group, b, J):
        raise ValueError("multiplier is not W_J-invariant")
    return CornerElement(nh.multiplication(b) * idempotent(nh, J), J)


@dataclass
class KillCheck:
    parabolic: Tuple[int, ...]
    results: Dict[int, bool]

    @property
    def holds(self) -> bool:
        return all(self.results.values())


def delta_s_kills_idempotent_check(nh: NilHecke, J: Iterable[int]) -> KillCheck:
    """``delta_s * e_J == 0`` for each ``s`` in ``J``."""
    J = _subset(nh, J)
    e = idempotent(nh, J)
    return KillCheck(J, {j: (nh.delta(j) * e).is_zero() for j in J})


def parabolic_demazure(nh: NilHecke, w: WeylElement, J: Iterable[int]) -> CornerElement:
    """``e_J delta_w e_J`` for a minimal coset representative ``w``."""
    J = _subset(nh, J)
    w = nh.group.element(w)
    if not is_min_coset_rep(nh.group, w, J):
        raise ValueError(f"{w} is not a minimal representative of its coset modulo W_J")
    e = idempotent(nh, J)
    return CornerElement(e * nh.delta(w) * e, J)


def bimodule_invariance_check(h, J: Iterable[int]) -> bool:
    """True iff ``(v, w) . h == h`` for all ``v, w`` in ``W_J``."""
    carrier = h.carrier if isinstance(h, CornerElement) else h
    nh = carrier.algebra
    sub = enumerate_parabolic(nh.group, _subset(nh, J))
    return all(wp_group_action(v, w, carrier) == carrier for v in sub for w in sub)


def average_bimodule(h: NHElement, J: Optional[Iterable[int]] = None) -> NHElement:
    """Average of ``(v, w) . h`` over ``W_J x W_J`` (all of ``W x W`` when ``J`` is None)."""
    nh = h.algebra
    J = tuple(range(1, nh.group.rank + 1)) if J is None else _subset(nh, J)
    sub = enumerate_parabolic(nh.group, J)
    total = nh.zero()
    for v in sub:
        for w in sub:
            total = total + wp_group_action(v, w, h)
    return total.scale(Fraction(1, len(sub) ** 2))


# -- matrix representations ----------------------------------------------------


@dataclass
class InvariantMatrix:
    """``h(b_v) = sum_u b_u * entries[u][v]`` with ``W``-invariant entries."""

    entries: List[List[Polynomial]]
    basis: List[Polynomial]
    degree: int

    @property
    def size(self) -> int:
        return len(self.basis)

    def __matmul__(self, other: "InvariantMatrix") -> "InvariantMatrix":
        r = self.size
        nvars = self.basis[0].nvars
        out = [[Polynomial.zero(nvars) for _ in range(r)] for _ in range(r)]
        for i in range(r):
            for j in range(r):
                acc = Polynomial.zero(nvars)
                for k in range(r):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                out[i][j] = acc
        return InvariantMatrix(out, self.basis, min(self.degree, other.degree))

    def __eq__(self, other) -> bool:
        return isinstance(other, InvariantMatrix) and self.entries == other.entries

    def at_zero(self) -> List[List[Fraction]]:
        return [[evaluate_at_zero(x) for x in row] for row in self.entries]

    def is_identity(self) -> bool:
        r = self.size
        return all(self.entries[i][j] == (1 if i == j else 0) for i in range(r) for j in range(r))


def _solve_in_basis(nh: NilHecke, target: Polynomial, basis: Sequence[Polynomial], max_degree: int) -> List[Polynomial]:
    """``m_u`` in ``Q[t]^W`` with ``target = sum_u b_u m_u``."""
    if target.is_zero():
        return [Polynomial.zero(nh.nvars) for _ in basis]
    top = target.degree()
    cols, labels = [], []
    for u, b in enumerate(basis):
        room = top - b.min_degree()
        if room > max_degree:
            raise SpanError(room, "entry degree exceeds the matrix degree bound")
        if room < 0:
            continue
        for f in invariant_basis(nh.group, room):
            cols.append(dict((b * f).terms))
            labels.append((u, f))
    sol = solve_columns(cols, dict(target.terms))
    if sol is None:
        raise SpanError(top, "basis does not span the image")
    out = [Polynomial.zero(nh.nvars) for _ in basis]
    for (u, f), c in zip(labels, sol):
        if c:
            out[u] = out[u] + f.scale(c)
    return out


def matrix_rep(h, max_degree: int, basis: Optional[Sequence[Polynomial]] = None, J: Optional[Iterable[int]] = None) -> InvariantMatrix:
    """Matrix of a corner element on a basis of ``W_J``-invariants over ``W``-invariants.

    The default basis is :func:`nilhecke.schubert.parabolic_basis`.  Each
    column is solved exactly and the reconstruction is re-checked.
    """
    from .schubert import parabolic_basis

    if isinstance(h, CornerElement):
        carrier, J = h.carrier, h.parabolic
    else:
        carrier = h
        if J is None:
            raise ValueError("parabolic subset required for a raw nil Hecke element")
    nh = carrier.algebra
    if basis is None:
        basis = list(parabolic_basis(nh, J).values())
    basis = list(basis)
    cols = []
    for b in basis:
        img = nh.apply(carrier, b)
        m = _solve_in_basis(nh, img, basis, max_degree)
        recon = Polynomial.zero(nh.nvars)
        for bu, mu in zip(basis, m):
            recon = recon + bu * mu
        if recon != img:
            raise ArithmeticError("matrix reconstruction check failed")
        cols.append(m)
    r = len(basis)
    entries = [[cols[v][u] for v in range(r)] for u in range(r)]
    return InvariantMatrix(entries, basis, max_degree)


def corner_generators(nh: NilHecke, J: Iterable[int], multiplier_degree: int) -> List[Tuple[str, CornerElement]]:
    """Parabolic Demazure elements and invariant multiplications of degree 1..``multiplier_degree``."""
    J = _subset(nh, J)
    gens = [(f"dP[{w}]", parabolic_demazure(nh, w, J)) for w in min_coset_reps(nh.group, J)]
    for d in range(1, multiplier_degree + 1):
        for b in invariant_basis_homogeneous(nh.group, d, J):
            gens.append((f"({b})*eP", invariant_multiplication(nh, b, J)))
    return gens


@dataclass
class SpanReport:
    group: str
    parabolic: Tuple[int, ...]
    r: int
    span_dimension: int
    elements_tested: int
    degree: int

    @property
    def holds(self) -> bool:
        return self.span_dimension == self.r ** 2

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "parabolic": list(self.parabolic),
            "r": self.r,
            "span_dimension": self.span_dimension,
            "target": self.r ** 2,
            "elements_tested": self.elements_tested,
            "degree": self.degree,
            "holds": self.holds,
        }


def forgetful_span_check(
    nh: NilHecke, J: Iterable[int], max_degree: int = 6, length_bound: int = 2, multiplier_degree: int = 2
) -> SpanReport:
    """Span of ``matrix_rep(h)(0)`` over products ``h`` of corner generators."""
    J = _subset(nh, J)
    r = len(min_coset_reps(nh.group, J))
    gens = [g for _, g in corner_generators(nh, J, multiplier_degree)]
    vectors: List[dict] = []
    tested = 0
    rank = 0
    for length in range(1, length_bound + 1):
        for word in itertools.product(gens, repeat=length):
            h = word[0]
            for g in word[1:]:
                h = h * g
            try:
                mat = matrix_rep(h, max_degree)
            except SpanError:
                continue
            tested += 1
            vals = mat.at_zero()
            vectors.append({(i, j): vals[i][j] for i in range(r) for j in range(r) if vals[i][j]})
            rank = rank_columns(vectors)
            if rank == r * r:
                return SpanReport(nh.group.datum.name, J, r, rank, tested, max_degree)
    return SpanReport(nh.group.datum.name, J, r, rank, tested, max_degree)


# -- the freeness experiment -------------------------------------------------------


@dataclass
class FreenessReport:
    group: str
    parabolic: Tuple[int, ...]
    r: int
    per_degree: List[dict]
    verdict: str
    witness: Optional[Dict[str, str]] = None

    @property
    def consistent(self) -> bool:
        return all(
            row["span_count"] <= row["free_prediction"] and row["span_count"] + row["kernel_dim"] == row["free_prediction"]
            for row in self.per_degree
        )

    def to_json(self) -> dict:
        out = {
            "group": self.group,
            "parabolic": list(self.parabolic),
            "r": self.r,
            "per_degree": self.per_degree,
            "verdict": self.verdict,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def freeness_experiment(nh: NilHecke, J: Iterable[int], max_degree: int) -> FreenessReport:
    """Test whether ``sum_{w in W^J} delta^P_w (p_w *) = 0`` forces ``p_w = 0``.

    For each degree bound ``D`` the unknowns ``p_w`` range over
    ``W_J``-invariants of degree ``<= D``; the relation is imposed on the
    normal-form coordinates of the sum, which vanish exactly when the
    operator does.  Columns are grouped by their homogeneous operator degree
    so ranks are computed blockwise.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    J = _subset(nh, J)
    reps = min_coset_reps(nh.group, J)
    dP = {w: parabolic_demazure(nh, w, J).carrier for w in reps}
    blocks: Dict[int, List[Tuple[WeylElement, Polynomial, dict]]] = {}
    block_rank: Dict[int, int] = {}
    per_degree = []
    witness = None
    verdict = INDEPENDENT.format(max_degree)
    for D in range(max_degree + 1):
        touched = set()
        for b in invariant_basis_homogeneous(nh.group, D, J):
            for w in reps:
                col = (dP[w] * nh.multiplication(b)).flatten()
                k = D - w.length
                blocks.setdefault(k, []).append((w, b, col))
                touched.add(k)
        for k in touched:
            block_rank[k] = rank_columns([c for _, _, c in blocks[k]])
        unknowns = sum(len(v) for v in blocks.values())
        span = sum(block_rank.values())
        kernel = unknowns - span
        per_degree.append({"degree": D, "kernel_dim": kernel, "span_count": span, "free_prediction": unknowns})
        if kernel and witness is None:
            verdict = DEPENDENT.format(D)
            witness = _kernel_witness(nh, blocks, block_rank)
    return FreenessReport(nh.group.datum.name, J, len(reps), per_degree, verdict, witness)


def _kernel_witness(nh, blocks, block_rank) -> Dict[str, str]:
    for k in sorted(blocks):
        entries = blocks[k]
        if block_rank[k] < len(entries):
            vec = nullspace_columns([c for _, _, c in entries])[0]
            coeffs: Dict[str, Polynomial] = {}
            for (w, b, _), c in zip(entries, vec):
                if c:
                    key = str(w)
                    coeffs[key] = coeffs.get(key, Polynomial.zero(nh.nvars)) + b.scale(c)
            return {w: str(p) for w, p in sorted(coeffs.items())}
    return {}
