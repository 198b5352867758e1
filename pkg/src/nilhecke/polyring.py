"""Sparse multivariate polynomials over the rationals.

A :class:`Polynomial` lives in ``Q[t1, ..., tn]`` and stores a map from
exponent tuples to nonzero :class:`fractions.Fraction` coefficients.  Values
are immutable; every operation returns a new polynomial in canonical form.

Variables are called ``t1 .. tn`` in text and JSON and are indexed from 0
internally.  Terms are printed in graded-lex descending order.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

Exps = Tuple[int, ...]

__all__ = [
    "Polynomial",
    "LinearForm",
    "poly_add",
    "poly_mul",
    "exact_divide",
    "remainder_linear",
    "evaluate_at_zero",
    "grlex_key",
    "monomials_of_degree",
    "monomials_up_to_degree",
]


def grlex_key(exps: Exps) -> Tuple[int, Exps]:
    return (sum(exps), exps)


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"exact rational expected, got {type(c).__name__}")


def monomials_of_degree(nvars: int, degree: int) -> list:
    """All exponent tuples of the given total degree, grlex descending."""
    if nvars == 0:
        return [()] if degree == 0 else []
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), degree, nvars)
    return out


def monomials_up_to_degree(nvars: int, degree: int) -> list:
    out = []
    for d in range(degree, -1, -1):
        out.extend(monomials_of_degree(nvars, d))
    return out


class Polynomial:
    """An element of ``Q[t1..tn]``.

    >>> t1, t2 = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
    >>> str((t1 - t2) * (t1 + t2))
    't1^2 - t2^2'
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Optional[Mapping[Sequence[int], object]] = None):
        clean: Dict[Exps, Fraction] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for {nvars} variables")
            c = _frac(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
                if not clean[exps]:
                    del clean[exps]
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Exps, Fraction]) -> "Polynomial":
        # Caller guarantees canonical form (no zero coefficients).
        p = object.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        c = _frac(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def one(cls, nvars: int) -> "Polynomial":
        return cls.constant(nvars, 1)

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Polynomial":
        if not 0 <= index < nvars:
            raise IndexError(f"variable index {index} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[index] = 1
        return cls._raw(nvars, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> "Polynomial":
        return cls(len(exps), {tuple(exps): coeff})

    @classmethod
    def from_linear(cls, coeffs: Sequence) -> "Polynomial":
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            c = _frac(c)
            if c:
                exps = [0] * n
                exps[i] = 1
                terms[tuple(exps)] = c
        return cls._raw(n, terms)

    # -- inspection -----------------------------------------------------

    @property
    def terms(self) -> Mapping[Exps, Fraction]:
        return self._terms

    def items(self) -> list:
        """Terms in graded-lex descending order."""
        return sorted(self._terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def __iter__(self) -> Iterator[Tuple[Exps, Fraction]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def homogeneous_part(self, degree: int) -> "Polynomial":
        return Polynomial._raw(self.nvars, {e: c for e, c in self._terms.items() if sum(e) == degree})

    # -- arithmetic -----------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"variable-count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Rational)):
            return Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for e, c in small.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v += c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "Polynomial":
        c = _frac(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(self.nvars, {e: v * c for e, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        a, b = self._terms, other._terms
        if not a or not b:
            return Polynomial.zero(self.nvars)
        out: Dict[Exps, Fraction] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return Polynomial._raw(self.nvars, {e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self._terms == Polynomial.constant(self.nvars, other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- substitution / actions ----------------------------------------

    def permute(self, perm: Sequence[int]) -> "Polynomial":
        """Substitute ``t_j -> t_{perm[j]}``."""
        n = self.nvars
        out = {}
        for e, c in self._terms.items():
            ne = [0] * n
            for j, x in enumerate(e):
                ne[perm[j]] = x
            out[tuple(ne)] = c
        return Polynomial._raw(n, out)

    def substitute_linear(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Substitute ``t_j -> images[j]`` (ring homomorphism)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        n_out = images[0].nvars if images else 0
        powers: Dict[Tuple[int, int], Polynomial] = {}

        def power(j: int, k: int) -> Polynomial:
            key = (j, k)
            if key not in powers:
                powers[key] = Polynomial.one(n_out) if k == 0 else power(j, k - 1) * images[j]
            return powers[key]

        total = Polynomial.zero(n_out)
        for e, c in self._terms.items():
            term = Polynomial.constant(n_out, c)
            for j, k in enumerate(e):
                if k:
                    term = term * power(j, k)
            total = total + term
        return total

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self._terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= _frac(x) ** k
            total += v
        return total

    # -- serialisation --------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for exps, c in self.items():
            factors = []
            for i, k in enumerate(exps):
                if k == 1:
                    factors.append(f"t{i + 1}")
                elif k > 1:
                    factors.append(f"t{i + 1}^{k}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            pieces.append(("-" if c < 0 else "+", body))
        sign, body = pieces[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {str(self)!r})"

    def to_json(self) -> dict:
        return {
            "vars": self.nvars,
            "terms": [{"coeff": str(c), "exps": list(e)} for e, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Polynomial":
        n = int(data["vars"])
        return cls(n, {tuple(t["exps"]): Fraction(t["coeff"]) for t in data["terms"]})

    @classmethod
    def parse(cls, text: str, nvars: int) -> "Polynomial":
        from .expr import parse_polynomial

        return parse_polynomial(text, nvars)


class LinearForm:
    """A homogeneous linear form ``sum_i c_i t_i`` with at least one nonzero coefficient."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        self.coeffs = tuple(_frac(c) for c in coeffs)
        if not any(self.coeffs):
            raise ValueError("linear form must be nonzero")

    @property
    def nvars(self) -> int:
        return len(self.coeffs)

    def to_poly(self) -> Polynomial:
        return Polynomial.from_linear(self.coeffs)

    def normalized(self) -> Tuple[Fraction, "LinearForm"]:
        """Split as ``scalar * monic`` where the first nonzero coefficient of ``monic`` is 1."""
        lead = next(c for c in self.coeffs if c)
        return lead, LinearForm(c / lead for c in self.coeffs)

    def __neg__(self) -> "LinearForm":
        return LinearForm(-c for c in self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, LinearForm) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __str__(self) -> str:
        return str(self.to_poly())

    def __repr__(self) -> str:
        return f"LinearForm({str(self)!r})"


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    return a + b


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


def exact_divide(f: Polynomial, form: LinearForm) -> Optional[Polynomial]:
    """Return ``q`` with ``q * form == f``, or ``None`` if ``form`` does not divide ``f``.

    Division runs in lex order with the first variable occurring in ``form``
    as the leading variable, so the remainder is free of that variable and is
    zero exactly when the division is exact.
    """
    if form.nvars != f.nvars:
        raise ValueError(f"variable-count mismatch: {f.nvars} vs {form.nvars}")
    if f.is_zero():
        return f
    k = next(i for i, c in enumerate(form.coeffs) if c)
    lead = form.coeffs[k]
    others = [(j, c) for j, c in enumerate(form.coeffs) if c and j != k]

    rem = dict(f.terms)
    quot: Dict[Exps, Fraction] = {}
    top = max(e[k] for e in rem)
    for level in range(top, 0, -1):
        for m in [m for m in rem if m[k] == level]:
            a = rem.pop(m)
            qm = m[:k] + (level - 1,) + m[k + 1:]
            coef = a / lead
            quot[qm] = quot.get(qm, 0) + coef
            for j, cj in others:
                mm = list(qm)
                mm[j] += 1
                mm = tuple(mm)
                v = rem.get(mm, 0) - coef * cj
                if v:
                    rem[mm] = v
                else:
                    rem.pop(mm, None)
    if rem:
        return None
    q = Polynomial._raw(f.nvars, {e: c for e, c in quot.items() if c})
    if q * form.to_poly() != f:
        raise ArithmeticError("exact division failed re-multiplication check")
    return q


def remainder_linear(f: Polynomial, form: LinearForm) -> Polynomial:
    """Remainder of ``f`` modulo ``form``: eliminate its first variable by substitution.

    The map is linear in ``f`` and vanishes exactly on multiples of ``form``.
    """
    k = next(i for i, c in enumerate(form.coeffs) if c)
    lead = form.coeffs[k]
    images = [Polynomial.variable(f.nvars, j) for j in range(f.nvars)]
    images[k] = Polynomial.from_linear([0 if i == k else -c / lead for i, c in enumerate(form.coeffs)])
    return f.substitute_linear(images)


def evaluate_at_zero(f: Polynomial) -> Fraction:
    return f.constant_term()
