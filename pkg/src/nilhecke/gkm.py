"""GKM tuples and three divided-difference operator variants.

A GKM class on ``G/P`` is a tuple ``(p_w)`` indexed by the minimal coset
representatives ``W^J``.  The membership condition comes in four flavours,
selected by a convention string ``"<side>-<edges>"``:

* ``left-simple`` (the default): ``p_w - p_{[s w]}`` is divisible by
  ``alpha_s`` for every simple ``s``, where ``[s w]`` is the minimal
  representative of ``s w W_J``;
* ``left-all``: the same for every reflection ``s_beta`` with label ``beta``;
* ``right-simple`` / ``right-all``: ``p_w - p_{w s}`` divisible by the root of
  ``s`` (full flag only).

``right-all`` is the presentation in which the Kostant-Kumar formula below is
exact; on ``left-simple`` tuples it generally is not.  Operators:

* ``kk_apply``: ``(p_{s w} - p_w) / w^{-1}(alpha_s)`` on the full flag,
* ``tym_apply_literal``: ``(p_w - s(p_w)) / alpha_s`` coordinatewise,
* ``tym_apply_corrected``: ``(p_w - s(p_{s w})) / alpha_s`` on the full flag,
* ``localized_apply``: the fixed-point rule
  ``lambda psi_w -> (lambda psi_{w s} - lambda psi_w) / w(alpha_s)`` on
  vectors over the fraction field.

Every quotient is exact or the operation fails with a witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .algebra import NilHecke
from .linalg import nullspace_columns
from .polyring import LinearForm, Polynomial, exact_divide, monomials_of_degree, remainder_linear
from .weyl import WeylElement, apply_weyl, coset_rep, min_coset_reps

LEFT_SIMPLE = "left-simple"
LEFT_ALL = "left-all"
RIGHT_SIMPLE = "right-simple"
RIGHT_ALL = "right-all"
CONVENTIONS = (LEFT_SIMPLE, LEFT_ALL, RIGHT_SIMPLE, RIGHT_ALL)


class ClosureViolation(ArithmeticError):
    """An exact quotient failed; ``witness`` names the offending ``(w, s)``."""

    def __init__(self, message: str, witness: Tuple[str, int]):
        self.witness = witness
        super().__init__(f"{message} at w={witness[0]}, s={witness[1]}")


class NotGKM(ValueError):
    def __init__(self, witness: Tuple[str, int]):
        self.witness = witness
        super().__init__(f"GKM condition fails at w={witness[0]}, s={witness[1]}")


@dataclass(frozen=True)
class Membership:
    holds: bool
    witness: Optional[Tuple[str, int]] = None

    def __bool__(self) -> bool:
        return self.holds


def _reflections(group) -> List[Tuple[LinearForm, WeylElement]]:
    """Positive roots paired with their reflections, in root order."""
    cached = getattr(group, "_gkm_reflections", None)
    if cached is not None:
        return cached
    found = {}
    for w in group.elements:
        for i in range(1, group.rank + 1):
            beta = group.root_image(w, i)
            key = beta.coeffs
            if key not in found:
                found[key] = group.mul(group.mul(w, group.simple(i)), group.inverse(w))
    out = [(beta, found[beta.coeffs]) for beta in group.positive_roots()]
    group._gkm_reflections = out
    return out


def _edges(nh: NilHecke, J: Tuple[int, ...], convention: str):
    """Triples ``(w, u, label, tag)`` whose differences must be divisible by ``label``."""
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown GKM convention {convention!r}; expected one of {', '.join(CONVENTIONS)}")
    side, kind = convention.split("-")
    if side == "right" and J:
        raise ValueError("right-indexed GKM conventions are defined on the full flag only")
    group = nh.group
    if kind == "simple":
        labelled = [(group.datum.root(i), group.simple(i), i) for i in range(1, group.rank + 1)]
    else:
        labelled = [(beta, r, k + 1) for k, (beta, r) in enumerate(_reflections(group))]
    out = []
    for w in min_coset_reps(group, J):
        for beta, r, tag in labelled:
            u = group.mul(r, w) if side == "left" else group.mul(w, r)
            out.append((w, coset_rep(group, u, J), beta, tag))
    return out


def _index_values(nh: NilHecke, values, J: Tuple[int, ...]) -> Dict[WeylElement, Polynomial]:
    reps = min_coset_reps(nh.group, J)
    if isinstance(values, Mapping):
        out = {nh.group.element(w): nh.poly(p) for w, p in values.items()}
        if set(out) != set(reps):
            raise ValueError("values must be indexed by the minimal coset representatives")
        return {w: out[w] for w in reps}
    values = list(values)
    if len(values) != len(reps):
        raise ValueError(f"expected {len(reps)} values (one per minimal coset representative), got {len(values)}")
    return {w: nh.poly(p) for w, p in zip(reps, values)}


def gkm_member(nh: NilHecke, values, J: Iterable[int] = (), convention: str = LEFT_SIMPLE) -> Membership:
    """Check the divisibility conditions of ``convention`` for every ``w in W^J``.

    The witness is ``(w, k)`` with ``k`` the simple index for ``*-simple``
    conventions and the 1-based position in ``positive_roots()`` for ``*-all``.
    """
    J = tuple(sorted(set(J)))
    vals = _index_values(nh, values, J)
    for w, u, beta, tag in _edges(nh, J, convention):
        if exact_divide(vals[w] - vals[u], beta) is None:
            return Membership(False, (str(w), tag))
    return Membership(True)


def gkm_basis(nh: NilHecke, degree: int, J: Iterable[int] = (), convention: str = LEFT_SIMPLE) -> List["GKMClass"]:
    """A basis of the homogeneous GKM classes of the given degree, by exact nullspace computation."""
    J = tuple(sorted(set(J)))
    reps = min_coset_reps(nh.group, J)
    monos = monomials_of_degree(nh.nvars, degree)
    edges = _edges(nh, J, convention)
    columns = []
    for w in reps:
        for m in monos:
            mono = Polynomial.monomial(m)
            col: Dict = {}
            for e, (v, u, beta, _) in enumerate(edges):
                sign = (v == w) - (u == w)
                if not sign:
                    continue
                for exps, c in remainder_linear(mono.scale(sign), beta).terms.items():
                    col[(e, exps)] = col.get((e, exps), 0) + c
            columns.append({k: c for k, c in col.items() if c})
    out = []
    for vec in nullspace_columns(columns):
        vals = [Polynomial.zero(nh.nvars) for _ in reps]
        for k, c in enumerate(vec):
            if c:
                w, m = divmod(k, len(monos))
                vals[w] = vals[w] + Polynomial.monomial(monos[m], c)
        out.append(GKMClass(nh, J, tuple(zip(reps, vals)), convention))
    return out


@dataclass(frozen=True)
class GKMClass:
    algebra: NilHecke
    parabolic: Tuple[int, ...]
    values: Tuple[Tuple[WeylElement, Polynomial], ...]
    convention: str = LEFT_SIMPLE

    @classmethod
    def build(
        cls, nh: NilHecke, values, J: Iterable[int] = (), check: bool = True, convention: str = LEFT_SIMPLE
    ) -> "GKMClass":
        J = tuple(sorted(set(J)))
        vals = _index_values(nh, values, J)
        if check:
            m = gkm_member(nh, vals, J, convention)
            if not m:
                raise NotGKM(m.witness)
        return cls(nh, J, tuple(vals.items()), convention)

    def __getitem__(self, w) -> Polynomial:
        w = self.algebra.group.element(w)
        for k, v in self.values:
            if k == w:
                return v
        raise KeyError(str(w))

    def as_dict(self) -> Dict[WeylElement, Polynomial]:
        return dict(self.values)

    def polys(self) -> List[Polynomial]:
        return [v for _, v in self.values]

    def is_member(self) -> Membership:
        return gkm_member(self.algebra, self.as_dict(), self.parabolic, self.convention)

    def _like(self, values) -> "GKMClass":
        return GKMClass(self.algebra, self.parabolic, tuple(values), self.convention)

    def __add__(self, other: "GKMClass") -> "GKMClass":
        return self._like((w, a + b) for (w, a), (_, b) in zip(self.values, other.values))

    def __sub__(self, other: "GKMClass") -> "GKMClass":
        return self._like((w, a - b) for (w, a), (_, b) in zip(self.values, other.values))

    def scale(self, c) -> "GKMClass":
        return self._like((w, a.scale(c)) for w, a in self.values)

    def times(self, f: Polynomial) -> "GKMClass":
        """Multiply every coordinate by the polynomial ``f``."""
        return self._like((w, a * f) for w, a in self.values)

    def is_zero(self) -> bool:
        return all(v.is_zero() for _, v in self.values)

    def __eq__(self, other) -> bool:
        return isinstance(other, GKMClass) and self.parabolic == other.parabolic and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.parabolic, self.values))

    def to_json(self) -> dict:
        out = {
            "group": self.algebra.group.datum.name,
            "parabolic": list(self.parabolic),
            "values": [{"rep": list(w.word), "poly": p.to_json()} for w, p in self.values],
        }
        if self.convention != LEFT_SIMPLE:
            out["convention"] = self.convention
        return out

    @classmethod
    def from_json(cls, data: Mapping, nh: Optional[NilHecke] = None, check: bool = True) -> "GKMClass":
        nh = nh or NilHecke.of(data["group"])
        vals = {nh.group.from_word(v["rep"]): Polynomial.from_json(v["poly"]) for v in data["values"]}
        return cls.build(nh, vals, data.get("parabolic", ()), check=check, convention=data.get("convention", LEFT_SIMPLE))


def _full_flag(p: GKMClass) -> None:
    if p.parabolic:
        raise ValueError("operator is defined on the full flag variety only (empty parabolic)")


def _closed(p: GKMClass, out: Dict[WeylElement, Polynomial], what: str) -> GKMClass:
    result = GKMClass(p.algebra, (), tuple(out.items()), p.convention)
    m = result.is_member()
    if not m:
        raise ClosureViolation(f"{what} output is not a GKM class ({p.convention})", m.witness)
    return result


def kk_apply(i: int, p: GKMClass) -> GKMClass:
    """``((p_{s w} - p_w) / w^{-1}(alpha_s))_w``; the result must again be a class in ``p.convention``."""
    _full_flag(p)
    nh = p.algebra
    group = nh.group
    vals = p.as_dict()
    s = group.simple(i)
    out = {}
    for w, pw in vals.items():
        denom = group.root_image(group.inverse(w), i)
        q = exact_divide(vals[group.mul(s, w)] - pw, denom)
        if q is None:
            raise ClosureViolation("Kostant-Kumar quotient is not exact", (str(w), i))
        out[w] = q
    return _closed(p, out, "Kostant-Kumar")


@dataclass(frozen=True)
class TymResult:
    values: Tuple[Polynomial, ...]
    member: Membership

    def to_json(self) -> dict:
        return {
            "values": [str(v) for v in self.values],
            "member": self.member.holds,
            "witness": list(self.member.witness) if self.member.witness else None,
        }


def tym_apply_literal(i: int, p: GKMClass) -> TymResult:
    """``((p_w - s(p_w)) / alpha_s)_w`` coordinatewise; membership of the output is reported, not asserted."""
    nh = p.algebra
    s = nh.group.simple(i)
    out = []
    for w, pw in p.values:
        q = exact_divide(pw - apply_weyl(s, pw), nh.root(i))
        if q is None:
            raise ClosureViolation("quotient is not exact", (str(w), i))
        out.append(q)
    return TymResult(tuple(out), gkm_member(nh, out, p.parabolic, p.convention))


def tym_apply_corrected(i: int, p: GKMClass) -> GKMClass:
    """``((p_w - s(p_{s w})) / alpha_s)_w`` on the full flag."""
    _full_flag(p)
    nh = p.algebra
    group = nh.group
    vals = p.as_dict()
    s = group.simple(i)
    out = {}
    for w, pw in vals.items():
        q = exact_divide(pw - apply_weyl(s, vals[group.mul(s, w)]), nh.root(i))
        if q is None:
            raise ClosureViolation("corrected quotient is not exact", (str(w), i))
        out[w] = q
    return _closed(p, out, "corrected")


@dataclass
class Discrepancy:
    operator: str
    index: int
    input: dict
    error: str
    witness: Optional[Tuple[str, int]]

    def to_json(self) -> dict:
        return {
            "operator": self.operator,
            "index": self.index,
            "input": self.input,
            "error": self.error,
            "witness": list(self.witness) if self.witness else None,
        }


def discrepancy_report(operator: str, classes: Iterable[GKMClass]) -> List[Discrepancy]:
    """Run ``operator`` on every class and simple index; collect closure failures instead of raising.

    ``operator`` is ``"kk"``, ``"tym"`` (literal) or ``"tym-corrected"``.
    """
    out = []
    for p in classes:
        for i in range(1, p.algebra.group.rank + 1):
            if operator == "tym":
                r = tym_apply_literal(i, p)
                if not r.member:
                    out.append(Discrepancy(operator, i, p.to_json(), "output is not a GKM class", r.member.witness))
                continue
            fn = kk_apply if operator == "kk" else tym_apply_corrected
            try:
                fn(i, p)
            except ClosureViolation as exc:
                out.append(Discrepancy(operator, i, p.to_json(), str(exc), exc.witness))
    return out


# -- localisation at fixed points -------------------------------------------------


class RootFraction:
    """``numerator / prod(denominator)`` with the denominator a multiset of monic linear forms.

    Common factors are cancelled by exact division, so equal values have
    equal representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Sequence[LinearForm] = ()):
        self.num = num
        self.den = tuple(den)
        self._normalize()

    def _normalize(self):
        num = self.num
        den = []
        for form in self.den:
            scalar, monic = form.normalized()
            num = num.scale(Fraction(1) / scalar)
            den.append(monic)
        if num.is_zero():
            self.num, self.den = num, ()
            return
        kept = []
        for form in den:
            q = exact_divide(num, form)
            if q is not None:
                num = q
            else:
                kept.append(form)
        self.num = num
        self.den = tuple(sorted(kept, key=lambda f: f.coeffs))

    @property
    def nvars(self) -> int:
        return self.num.nvars

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other: "RootFraction") -> "RootFraction":
        # lcm of root multisets
        mine, theirs = list(self.den), list(other.den)
        common = []
        rest_other = list(theirs)
        for f in mine:
            if f in rest_other:
                rest_other.remove(f)
            common.append(f)
        lcm = common + rest_other
        a = self.num
        for f in rest_other:
            a = a * f.to_poly()
        b = other.num
        rest_self = list(lcm)
        for f in theirs:
            rest_self.remove(f)
        for f in rest_self:
            b = b * f.to_poly()
        return RootFraction(a + b, lcm)

    def __neg__(self) -> "RootFraction":
        return RootFraction(-self.num, self.den)

    def __sub__(self, other: "RootFraction") -> "RootFraction":
        return self + (-other)

    def __mul__(self, other: Union["RootFraction", Polynomial]) -> "RootFraction":
        if isinstance(other, Polynomial):
            return RootFraction(self.num * other, self.den)
        return RootFraction(self.num * other.num, self.den + other.den)

    def divide_by(self, form: LinearForm) -> "RootFraction":
        return RootFraction(self.num, self.den + (form,))

    def __eq__(self, other) -> bool:
        return isinstance(other, RootFraction) and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __str__(self) -> str:
        if not self.den:
            return str(self.num)
        return f"({self.num}) / (" + ")*(".join(str(f) for f in self.den) + ")"


class FixedPointVector:
    """``sum_w lambda_w psi_w`` with ``lambda_w`` in the fraction field."""

    def __init__(self, nh: NilHecke, values: Mapping):
        self.algebra = nh
        clean = {}
        for w, v in values.items():
            w = nh.group.element(w)
            if isinstance(v, Polynomial):
                v = RootFraction(v)
            if not v.is_zero():
                clean[w] = v
        self.values = clean

    @classmethod
    def basis(cls, nh: NilHecke, w, coeff: Optional[Polynomial] = None) -> "FixedPointVector":
        coeff = Polynomial.one(nh.nvars) if coeff is None else coeff
        return cls(nh, {w: coeff})

    def __add__(self, other: "FixedPointVector") -> "FixedPointVector":
        out = dict(self.values)
        for w, v in other.values.items():
            out[w] = out[w] + v if w in out else v
        return FixedPointVector(self.algebra, out)

    def __neg__(self):
        return FixedPointVector(self.algebra, {w: -v for w, v in self.values.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, f: Polynomial) -> "FixedPointVector":
        return FixedPointVector(self.algebra, {w: v * f for w, v in self.values.items()})

    def is_zero(self) -> bool:
        return not self.values

    def __eq__(self, other) -> bool:
        return isinstance(other, FixedPointVector) and self.values == other.values

    def __str__(self) -> str:
        if not self.values:
            return "0"
        return " + ".join(f"[{v}]psi_{w}" for w, v in sorted(self.values.items(), key=lambda kv: kv[0].index))


def localized_apply(i: int, v: FixedPointVector) -> FixedPointVector:
    """``lambda psi_w -> (lambda psi_{w s_i} - lambda psi_w) / w(alpha_i)``, extended linearly."""
    nh = v.algebra
    group = nh.group
    s = group.simple(i)
    out: Dict[WeylElement, RootFraction] = {}
    for w, lam in v.values.items():
        term = lam.divide_by(group.root_image(w, i))
        ws = group.mul(w, s)
        out[ws] = out[ws] + term if ws in out else term
        out[w] = out[w] - term if w in out else -term
    return FixedPointVector(nh, out)
