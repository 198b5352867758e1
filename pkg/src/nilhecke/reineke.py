"""Reineke's quiver-graded example for the quiver ``1 -> 2``.

For a dimension vector ``(d1, d2)`` with ``d = d1 + d2`` the Steinberg algebra
is modelled inside the nil Hecke algebra of ``S_d`` (type ``A_{d-1}``) on
``t1..td``.  It is generated by the multiplications ``t_j``, Demazure
operators ``delta_i`` for a set of indices, and

    theta = (prod_{j in J_theta} (t1 - t_j)) * delta_1,

and the corner algebra is cut out by a parabolic averaging idempotent.  The
three index sets are parameters; the defaults are the readings that agree
with the prefactor ``1/((d2-1)! d1!)`` of the idempotent.  Demazure
operators use the convention ``(s f - f) / alpha``.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from math import factorial, prod
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import PAPER, NHElement, NilHecke
from .linalg import rank_columns, reduce_mod_span, solve_columns
from .parabolic import idempotent
from .polyring import Polynomial, monomials_up_to_degree
from .weyl import enumerate_parabolic, invariant_basis, invariant_basis_homogeneous

ANSATZ_EXTRA = 3  # how far the ansatz degree may be raised past its starting value


class PrefactorMismatch(UserWarning):
    pass


def _indices(values: Iterable[int]) -> Tuple[int, ...]:
    return tuple(sorted(set(int(v) for v in values)))


@dataclass(frozen=True)
class ReinekeConfig:
    """Dimension vector and the three index sets of the example.

    ``None`` selects the defaults: ``J_theta = {d2+1..d}``, delta indices
    ``{2..d2-1} u {d2+1..d-1}`` and the parabolic indices equal to the
    delta indices.
    """

    d1: int
    d2: int
    euler_range: Optional[Tuple[int, ...]] = None
    delta_indices: Optional[Tuple[int, ...]] = None
    parabolic_indices: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.d1 < 1 or self.d2 < 1:
            raise ValueError("d1 and d2 must be positive")
        d = self.d1 + self.d2
        default_delta = tuple(range(2, self.d2)) + tuple(range(self.d2 + 1, d))
        euler = _indices(range(self.d2 + 1, d + 1) if self.euler_range is None else self.euler_range)
        delta = _indices(default_delta if self.delta_indices is None else self.delta_indices)
        para = delta if self.parabolic_indices is None else _indices(self.parabolic_indices)
        if any(not 2 <= j <= d for j in euler):
            raise ValueError(f"euler_range entries must lie in 2..{d}")
        for name, idx in (("delta_indices", delta), ("parabolic_indices", para)):
            if any(not 1 <= i <= d - 1 for i in idx):
                raise ValueError(f"{name} entries must lie in 1..{d - 1}")
        object.__setattr__(self, "euler_range", euler)
        object.__setattr__(self, "delta_indices", delta)
        object.__setattr__(self, "parabolic_indices", para)

    @classmethod
    def literal(cls, d1: int, d2: int) -> "ReinekeConfig":
        """The index sets exactly as printed: an empty Euler product and ``{2..d2-2} u {d2..d-1}``."""
        d = d1 + d2
        idx = tuple(range(2, d2 - 1)) + tuple(range(d2, d))
        return cls(d1, d2, (), idx, idx)

    @property
    def d(self) -> int:
        return self.d1 + self.d2

    @property
    def group_spec(self) -> str:
        return f"A{self.d - 1}"

    @property
    def algebra(self) -> NilHecke:
        return NilHecke.of(self.group_spec)

    @property
    def prefactor_order(self) -> int:
        """``(d2-1)! d1!``, the inverse of the printed prefactor."""
        return factorial(self.d2 - 1) * factorial(self.d1)

    @property
    def subgroup_order(self) -> int:
        return len(enumerate_parabolic(self.algebra.group, self.parabolic_indices))

    @property
    def prefactor_consistent(self) -> bool:
        return self.prefactor_order == self.subgroup_order

    @property
    def ambient_indices(self) -> Tuple[int, ...]:
        """Simple reflections of ``S_{d2} x S_{d1}``."""
        return tuple(range(1, self.d2)) + tuple(range(self.d2 + 1, self.d))

    def to_json(self) -> dict:
        return {
            "d1": self.d1,
            "d2": self.d2,
            "euler_range": list(self.euler_range),
            "delta_indices": list(self.delta_indices),
            "parabolic_indices": list(self.parabolic_indices),
        }


def build_generators(cfg: ReinekeConfig) -> Dict[str, NHElement]:
    """``t1..td``, ``d<i>`` for the delta indices and ``theta``, keyed by name."""
    nh = cfg.algebra
    gens: Dict[str, NHElement] = {f"t{j}": nh.t(j) for j in range(1, cfg.d + 1)}
    for i in cfg.delta_indices:
        gens[f"d{i}"] = nh.delta(i, PAPER)
    gens["theta"] = theta(cfg)
    return gens


def euler_factor(cfg: ReinekeConfig) -> Polynomial:
    nh = cfg.algebra
    t1 = nh.var(1)
    return prod((t1 - nh.var(j) for j in cfg.euler_range), start=Polynomial.one(nh.nvars))


def theta(cfg: ReinekeConfig) -> NHElement:
    nh = cfg.algebra
    return nh.multiplication(euler_factor(cfg)) * nh.delta(1, PAPER)


def build_idempotent(cfg: ReinekeConfig) -> NHElement:
    """Averaging idempotent of the parabolic subgroup; warns if the printed prefactor disagrees."""
    if not cfg.prefactor_consistent:
        warnings.warn(
            f"prefactor 1/{cfg.prefactor_order} differs from 1/|W_P| = 1/{cfg.subgroup_order}; "
            "using 1/|W_P|",
            PrefactorMismatch,
            stacklevel=2,
        )
    e = idempotent(cfg.algebra, cfg.parabolic_indices)
    if e * e != e:
        raise ArithmeticError("averaging element is not idempotent")
    return e


# -- relations ------------------------------------------------------------------


@dataclass
class RelationReport:
    relation: str
    holds: bool
    coefficients: Dict[str, Polynomial]
    residual: NHElement
    ansatz_degree: Optional[int] = None

    def to_json(self) -> dict:
        return {
            "relation": self.relation,
            "holds": self.holds,
            "coefficients": {k: str(v) for k, v in sorted(self.coefficients.items())},
            "residual_zero": self.residual.is_zero(),
            "residual": self.residual.to_text(),
            "ansatz_degree": self.ansatz_degree,
        }


def _unflatten(nh: NilHecke, vec: Dict) -> NHElement:
    coeffs: Dict[int, Polynomial] = {}
    for (k, exps), c in vec.items():
        coeffs[k] = coeffs.get(k, Polynomial.zero(nh.nvars)) + Polynomial.monomial(exps, c)
    return nh.element(coeffs)


def _coefficient_degree(h: NHElement) -> int:
    return max((p.degree() for _, p in h.items()), default=0)


def solve_left_coefficients(
    lhs: NHElement, terms: Dict[str, NHElement], start_degree: Optional[int] = None, extra: int = ANSATZ_EXTRA
) -> Tuple[Optional[Dict[str, Polynomial]], NHElement, int]:
    """Find polynomials ``q_name`` with ``lhs == sum q_name * terms[name]``.

    The ansatz allows all monomials up to a degree starting at the largest
    coefficient degree of ``lhs`` plus one, raised by one up to ``extra``
    times.  Returns ``(coefficients or None, residual, final degree)``; the
    residual is the remainder of ``lhs`` modulo the span at the final degree.
    """
    nh = lhs.algebra
    names = sorted(terms)
    degree = _coefficient_degree(lhs) + 1 if start_degree is None else start_degree
    target = lhs.flatten()
    for bound in range(degree, degree + extra + 1):
        unknowns = [(name, m) for name in names for m in monomials_up_to_degree(nh.nvars, bound)]
        columns = [(nh.multiplication(Polynomial.monomial(m)) * terms[name]).flatten() for name, m in unknowns]
        sol = solve_columns(columns, target)
        if sol is not None:
            coeffs = {name: Polynomial.zero(nh.nvars) for name in names}
            for (name, m), c in zip(unknowns, sol):
                if c:
                    coeffs[name] = coeffs[name] + Polynomial.monomial(m, c)
            check = lhs - sum((nh.multiplication(coeffs[n]) * terms[n] for n in names), nh.zero())
            if not check.is_zero():
                raise ArithmeticError("solved coefficients do not reproduce the left-hand side")
            return coeffs, check, bound
    return None, _unflatten(nh, reduce_mod_span(columns, target)), bound


def verify_relations(cfg: ReinekeConfig, corner: bool = True) -> List[RelationReport]:
    """Check the three relation families of the example.

    * ``d_i * e_P = 0`` for each delta index ``i``;
    * ``d_i * theta = q * d_1 * d_i`` for each delta index ``i != 2``;
    * ``theta * d_2 * theta = q1 * theta + q2 * d_2 * theta`` when 2 is a delta index,
      followed (if ``corner``) by the same relation sandwiched between ``e_P``.

    A relation that cannot be solved is reported with its residual, not raised.
    """
    nh = cfg.algebra
    e = build_idempotent(cfg)
    th = theta(cfg)
    reports = []
    for i in cfg.delta_indices:
        residual = nh.delta(i, PAPER) * e
        reports.append(RelationReport(f"d{i}*eP = 0", residual.is_zero(), {}, residual))
    for i in cfg.delta_indices:
        if i == 2:
            continue
        di = nh.delta(i, PAPER)
        lhs = di * th
        coeffs, residual, deg = solve_left_coefficients(lhs, {"q": nh.delta(1, PAPER) * di})
        reports.append(RelationReport(f"d{i}*theta = q*d1*d{i}", coeffs is not None, coeffs or {}, residual, deg))
    if 2 in cfg.delta_indices:
        d2 = nh.delta(2, PAPER)
        lhs = th * d2 * th
        coeffs, residual, deg = solve_left_coefficients(lhs, {"q1": th, "q2": d2 * th})
        reports.append(RelationReport("theta*d2*theta = q1*theta + q2*d2*theta", coeffs is not None, coeffs or {}, residual, deg))
        if corner:
            coeffs, residual, deg = solve_left_coefficients(e * lhs * e, {"q1": e * th * e, "q2": e * d2 * th * e})
            reports.append(
                RelationReport(
                    "eP*theta*d2*theta*eP = q1*eP*theta*eP + q2*eP*d2*theta*eP",
                    coeffs is not None,
                    coeffs or {},
                    residual,
                    deg,
                )
            )
    return reports


def equivariance_check(cfg: ReinekeConfig, max_degree: int = 4) -> Optional[Tuple[str, Polynomial]]:
    """First ``(generator, b)`` not commuting with multiplication by an ``S_{d2} x S_{d1}``-invariant ``b``."""
    nh = cfg.algebra
    gens = build_generators(cfg)
    for b in invariant_basis(nh.group, max_degree, cfg.ambient_indices):
        mb = nh.multiplication(b)
        for name, g in gens.items():
            if g * mb != mb * g:
                return name, b
    return None


# -- corner presentation ------------------------------------------------------------


@dataclass
class CornerPresentation:
    config: dict
    generators: List[Tuple[str, int]]
    per_degree: List[dict]
    closed: bool
    witness: Optional[dict] = None

    def to_json(self) -> dict:
        out = {
            "config": self.config,
            "generators": [{"name": n, "degree": d} for n, d in self.generators],
            "per_degree": self.per_degree,
            "closed": self.closed,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def corner_words(cfg: ReinekeConfig, length_bound: int) -> List[Tuple[str, NHElement]]:
    """``eP theta^r eP`` and, when 2 is a delta index, ``eP d2 theta^t eP`` for ``r, t <= length_bound``."""
    nh = cfg.algebra
    e = build_idempotent(cfg)
    th = theta(cfg)
    out = []
    power = nh.one()
    powers = []
    for r in range(length_bound + 1):
        powers.append(power)
        out.append((f"eP*theta^{r}*eP", e * power * e))
        power = power * th
    if 2 in cfg.delta_indices:
        d2 = nh.delta(2, PAPER)
        for t, pw in enumerate(powers):
            out.append((f"eP*d2*theta^{t}*eP", e * d2 * pw * e))
    return [(name, h) for name, h in out if not h.is_zero()]


def _span_columns(nh: NilHecke, J, gens: Sequence[Tuple[str, NHElement, int]], degree: int) -> List[dict]:
    cols = []
    for _, g, dg in gens:
        if degree - dg < 0:
            continue
        for b in invariant_basis_homogeneous(nh.group, degree - dg, J):
            cols.append((nh.multiplication(b) * g).flatten())
    return cols


def corner_presentation(cfg: ReinekeConfig, length_bound: int = 2, max_degree: Optional[int] = None) -> CornerPresentation:
    """Graded span of the corner words over ``W_P``-invariant multiplications, with a closure check.

    For every operator degree ``k`` up to ``max_degree`` (default: the
    largest generator degree plus two) the report lists the dimension of
    ``sum_g Q[t]^{W_P}_{k - deg g} * g``.  Pairwise products of the words
    are then tested for membership in the span of their degree; the first
    product outside it is returned as a witness.
    """
    nh = cfg.algebra
    J = cfg.parabolic_indices
    gens = [(name, h, h.degree()) for name, h in corner_words(cfg, length_bound)]
    lo = min(dg for _, _, dg in gens)
    hi = max(dg for _, _, dg in gens) + 2 if max_degree is None else max_degree
    cache: Dict[int, List[dict]] = {}

    def span(k):
        if k not in cache:
            cache[k] = _span_columns(nh, J, gens, k)
        return cache[k]

    per_degree = [{"degree": k, "span_dimension": rank_columns(span(k))} for k in range(lo, hi + 1)]
    closed, witness = True, None
    for (na, a, da), (nb, b, db) in itertools.product(gens, repeat=2):
        k = da + db
        if k > hi:
            continue
        ab = a * b
        if ab.is_zero():
            continue
        rest = reduce_mod_span(span(k), ab.flatten())
        if rest:
            closed = False
            witness = {"product": f"{na} * {nb}", "degree": k, "remainder": _unflatten(nh, rest).to_text()}
            break
    return CornerPresentation(cfg.to_json(), [(n, d) for n, _, d in gens], per_degree, closed, witness)
