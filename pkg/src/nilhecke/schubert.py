"""Schubert polynomials, flow-up bases and coinvariant dimensions.

Module-basis claims over invariant subrings are checked degree by degree
with exact linear algebra: a family ``g_1..g_m`` is a free basis of
``Q[t]`` over ``Q[t]^{W_J}`` up to degree ``D`` when, for every ``k <= D``,
the products ``g_i * b`` (``b`` an invariant, ``deg g_i + deg b <= k``) are
linearly independent and span all polynomials of degree ``<= k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import CLASSICAL, PAPER, NilHecke
from .linalg import rank_columns
from .polyring import Polynomial, monomials_up_to_degree
from .weyl import (
    WeylElement,
    enumerate_parabolic,
    invariant_basis_homogeneous,
    min_coset_reps,
)


class NotStabilized(RuntimeError):
    def __init__(self, dims: List[int], degree: int):
        self.dims = dims
        self.degree = degree
        super().__init__(f"quotient is nonzero in degree {degree}; raise the degree bound (dims {dims})")


def staircase(nvars: int) -> Polynomial:
    """``t1^(n-1) t2^(n-2) ... t_(n-1)``."""
    return Polynomial.monomial(tuple(nvars - 1 - i for i in range(nvars)))


def default_seed(nh: NilHecke) -> Polynomial:
    """Staircase monomial in type A, product of the positive roots otherwise."""
    if nh.group.datum.cartan_type == "A":
        return staircase(nh.nvars)
    return prod((r.to_poly() for r in nh.group.positive_roots()), start=Polynomial.one(nh.nvars))


def schubert_family(n: int, convention: str = CLASSICAL) -> Dict[WeylElement, Polynomial]:
    """Schubert polynomials of ``S_n`` on ``t1..tn``.

    ``S_w`` is the divided difference ``d_{w^{-1} w0}`` of the staircase monomial;
    with ``convention="paper"`` each entry picks up the sign ``(-1)^{l(w^{-1} w0)}``.
    """
    if not 2 <= n <= 5:
        raise ValueError("schubert_family supports 2 <= n <= 5")
    nh = NilHecke.of(f"A{n - 1}")
    group = nh.group
    top = staircase(n)
    w0 = group.longest
    out = {}
    for w in group.elements:
        u = group.mul(group.inverse(w), w0)
        out[w] = nh.delta_w(u, top, convention)
    return out


def parabolic_basis(nh: NilHecke, J: Iterable[int], seed: Optional[Polynomial] = None) -> Dict[WeylElement, Polynomial]:
    """``{w: d_{w^{-1} w0}(seed) : w in W^J}``, a basis of ``W_J``-invariants over ``W``-invariants.

    With the staircase seed in type A these are the Schubert polynomials of
    the minimal coset representatives.
    """
    group = nh.group
    seed = default_seed(nh) if seed is None else nh.poly(seed)
    w0 = group.longest
    return {
        w: nh.delta_w(group.mul(group.inverse(w), w0), seed, CLASSICAL)
        for w in min_coset_reps(group, J)
    }


@dataclass
class FlowUpBasis:
    seed: Polynomial
    parabolic: Tuple[int, ...]
    generators: Dict[WeylElement, Polynomial]
    degree: int


@dataclass
class BasisFailure:
    degree: int
    reason: str  # "zero generator", "not independent", "not spanning"
    detail: str = ""

    def __bool__(self) -> bool:
        return False


def free_basis_failure(
    nh: NilHecke, generators: Sequence[Polynomial], J: Iterable[int], max_degree: int
) -> Optional[BasisFailure]:
    """First degree where ``generators`` fail to be a free basis over ``Q[t]^{W_J}``; None if they are one."""
    J = tuple(J)
    n = nh.nvars
    for g in generators:
        if g.is_zero():
            return BasisFailure(0, "zero generator")
    degs = [g.degree() for g in generators]
    inv_by_degree: Dict[int, List[Polynomial]] = {}
    cols: List[dict] = []
    for k in range(max_degree + 1):
        inv_by_degree[k] = invariant_basis_homogeneous(nh.group, k, J)
        for g, dg in zip(generators, degs):
            if dg <= k:
                for b in inv_by_degree[k - dg]:
                    cols.append(dict((g * b).terms))
        r = rank_columns(cols)
        if r < len(cols):
            return BasisFailure(k, "not independent", f"rank {r} < {len(cols)} products")
        target = len(monomials_up_to_degree(n, k))
        if r < target:
            return BasisFailure(k, "not spanning", f"rank {r} < {target} monomials")
    return None


def flowup_check(nh: NilHecke, seed: Polynomial, J: Iterable[int], max_degree: int, convention: str = PAPER):
    """Return a :class:`FlowUpBasis` for ``{d_v(seed) : v in W_J}`` or the first :class:`BasisFailure`."""
    J = tuple(sorted(set(J)))
    seed = nh.poly(seed)
    gens = {v: nh.delta_w(v, seed, convention) for v in enumerate_parabolic(nh.group, J)}
    failure = free_basis_failure(nh, list(gens.values()), J, max_degree)
    if failure is not None:
        return failure
    return FlowUpBasis(seed, J, gens, max_degree)


def coinvariant_hilbert(nh: NilHecke, J: Iterable[int], max_degree: int) -> List[int]:
    """Dimensions of ``(Q[t]^{W_J} / I_W)_k`` for ``k = 0..max_degree``.

    ``I_W`` is the ideal of ``Q[t]^{W_J}`` generated by positive-degree
    ``W``-invariants.
    """
    J = tuple(J)
    dims = []
    for k in range(max_degree + 1):
        local = invariant_basis_homogeneous(nh.group, k, J)
        products = []
        for j in range(1, k + 1):
            for f in invariant_basis_homogeneous(nh.group, j):
                for g in invariant_basis_homogeneous(nh.group, k - j, J):
                    products.append(dict((f * g).terms))
        dims.append(len(local) - rank_columns(products))
    return dims


def coinvariant_dimension(nh: NilHecke, J: Iterable[int], max_degree: int) -> int:
    """Total dimension of ``Q[t]^{W_J} / I_W``; the quotient must vanish in degree ``max_degree + 1``."""
    dims = coinvariant_hilbert(nh, J, max_degree + 1)
    if dims[-1]:
        raise NotStabilized(dims, max_degree + 1)
    return sum(dims)


def sign_bridge_holds(nh: NilHecke, max_degree: int) -> bool:
    """``delta_w = (-1)^{l(w)} d_w`` on every monomial of degree <= ``max_degree``."""
    for w in nh.group.elements:
        for exps in monomials_up_to_degree(nh.nvars, max_degree):
            m = Polynomial.monomial(exps)
            if nh.delta_w(w, m, PAPER) != nh.delta_w(w, m, CLASSICAL).scale((-1) ** w.length):
                return False
    return True
