"""The nil Hecke algebra as operators on the polynomial ring.

Elements are stored in left normal form ``sum_w (c_w *) o delta_w`` where
``delta_w`` is the composite of the Demazure operators
``delta_i f = (s_i f - f) / alpha_i`` along any reduced word of ``w``.
Products are normalised with the twisted Leibniz rule

    delta_i o (f *) = (delta_i f *) + (s_i f *) o delta_i

together with ``delta_v delta_w = delta_{vw}`` when lengths add and ``0``
otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .polyring import LinearForm, Polynomial, exact_divide
from .weyl import (
    RankMismatch,
    WeylElement,
    WeylGroup,
    apply_weyl,
    invariant_basis,
    is_invariant,
    weyl_group,
)

PAPER = "paper"
CLASSICAL = "classical"
CONVENTIONS = (PAPER, CLASSICAL)


class DivisibilityError(ArithmeticError):
    """A Demazure quotient was not exact: the roots and the action disagree."""


def convention_sign(length: int, convention: str) -> int:
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    return -1 if convention == CLASSICAL and length % 2 else 1


class NilHecke:
    """Nil Hecke algebra of a finite Weyl group, with its caches."""

    def __init__(self, group: WeylGroup):
        self.group = group
        self.nvars = group.nvars
        self._roots = {i: group.datum.root(i) for i in range(1, group.rank + 1)}
        self._demazure: Dict[Tuple[int, tuple], Polynomial] = {}
        self._push: Dict[Tuple[int, tuple], Dict[int, Polynomial]] = {}
        self._embed: Dict[int, "NHElement"] = {}
        self._lengths = [w.length for w in group.elements]

    @classmethod
    def of(cls, spec) -> "NilHecke":
        group = spec if isinstance(spec, WeylGroup) else weyl_group(spec)
        nh = getattr(group, "_nil_hecke", None)
        if nh is None:
            nh = cls(group)
            group._nil_hecke = nh
        return nh

    def __repr__(self) -> str:
        return f"NilHecke({self.group.datum.name})"

    # -- polynomial side ------------------------------------------------

    def poly(self, f) -> Polynomial:
        """Coerce a polynomial, polynomial text or rational constant."""
        if isinstance(f, str):
            from .expr import parse_polynomial

            return parse_polynomial(f, self.nvars)
        if isinstance(f, Polynomial):
            if f.nvars != self.nvars:
                raise RankMismatch(f"polynomial in {f.nvars} variables, algebra acts on {self.nvars}")
            return f
        return Polynomial.constant(self.nvars, f)

    def var(self, j: int) -> Polynomial:
        """``t_j`` with 1-based ``j``."""
        return Polynomial.variable(self.nvars, j - 1)

    def root(self, i: int) -> LinearForm:
        return self._roots[i]

    def _demazure_monomial(self, i: int, exps: tuple, convention: str = PAPER) -> Polynomial:
        key = (i, exps, convention)
        out = self._demazure.get(key)
        if out is None:
            m = Polynomial.monomial(exps)
            sm = apply_weyl(self.group.simple(i), m)
            # paper: (s f - f) / alpha ; classical: (f - s f) / alpha
            diff = sm - m if convention == PAPER else m - sm
            out = exact_divide(diff, self._roots[i])
            if out is None:
                raise DivisibilityError(f"alpha_{i} does not divide s_{i}(m) - m for m = {m}")
            self._demazure[key] = out
        return out

    def demazure(self, i: int, f: Polynomial, convention: str = PAPER) -> Polynomial:
        if i not in self._roots:
            raise IndexError(f"no simple reflection s{i} in {self.group.datum.name}")
        if convention not in CONVENTIONS:
            raise ValueError(f"unknown convention {convention!r}")
        f = self.poly(f)
        acc: Dict[tuple, Fraction] = {}
        for exps, c in f.terms.items():
            for e, v in self._demazure_monomial(i, exps, convention).terms.items():
                acc[e] = acc.get(e, 0) + c * v
        return Polynomial(self.nvars, acc)

    def delta_w(self, w: WeylElement, f: Polynomial, convention: str = PAPER) -> Polynomial:
        f = self.poly(f)
        for i in reversed(w.word):
            f = self.demazure(i, f, convention)
        return f

    # -- element construction -------------------------------------------

    def element(self, coeffs: Mapping) -> "NHElement":
        out: Dict[int, Polynomial] = {}
        for w, c in coeffs.items():
            k = w if isinstance(w, int) else self.group.index(self.group.element(w))
            c = self.poly(c)
            if c:
                out[k] = out[k] + c if k in out else c
        return NHElement(self, {k: c for k, c in out.items() if c})

    def zero(self) -> "NHElement":
        return NHElement(self, {})

    def one(self) -> "NHElement":
        return self.scalar(1)

    def scalar(self, c) -> "NHElement":
        return self.multiplication(Polynomial.constant(self.nvars, c))

    def multiplication(self, f: Polynomial) -> "NHElement":
        f = self.poly(f)
        return NHElement(self, {0: f} if f else {})

    def t(self, j: int) -> "NHElement":
        return self.multiplication(self.var(j))

    def delta(self, w, convention: str = PAPER) -> "NHElement":
        """``delta_w`` (or a simple ``delta_i`` when ``w`` is an int)."""
        if isinstance(w, int):
            w = self.group.simple(w)
        w = self.group.element(w)
        return NHElement(self, {w.index: Polynomial.constant(self.nvars, convention_sign(w.length, convention))})

    def embed_weyl(self, w) -> "NHElement":
        """The element acting on polynomials as ``w``; ``s_i -> 1 + (alpha_i *) delta_i``."""
        if isinstance(w, int):
            w = self.group.simple(w)
        w = self.group.element(w)
        cached = self._embed.get(w.index)
        if cached is not None:
            return cached
        if w.length == 0:
            out = self.one()
        else:
            i = w.word[-1]
            prefix = self.group.elements[self.group.right_mul[i][w.index]]
            s = NHElement(self, {0: Polynomial.one(self.nvars), self.group.simple(i).index: self._roots[i].to_poly()})
            out = self.embed_weyl(prefix) * s
        self._embed[w.index] = out
        return out

    # -- multiplication engine ------------------------------------------

    def _push_monomial(self, v: int, exps: tuple) -> Dict[int, Polynomial]:
        """Normal form of ``delta_v o (t^exps *)`` as ``{u: coefficient}``."""
        key = (v, exps)
        out = self._push.get(key)
        if out is not None:
            return out
        group = self.group
        if v == 0:
            out = {0: Polynomial.monomial(exps)}
        else:
            i = group.elements[v].word[0]
            rest = group.left_mul[i][v]
            si = group.simple(i)
            acc: Dict[int, Polynomial] = {}
            for u, f in self._push_monomial(rest, exps).items():
                d = self.demazure(i, f)
                if d:
                    acc[u] = acc[u] + d if u in acc else d
                su = group.left_mul[i][u]
                if self._lengths[su] == self._lengths[u] + 1:
                    g = apply_weyl(si, f)
                    acc[su] = acc[su] + g if su in acc else g
            out = {u: f for u, f in acc.items() if f}
        self._push[key] = out
        return out

    def push(self, v: int, f: Polynomial) -> Dict[int, Polynomial]:
        """Normal form of ``delta_v o (f *)``."""
        acc: Dict[int, Dict[tuple, Fraction]] = {}
        for exps, c in f.terms.items():
            for u, g in self._push_monomial(v, exps).items():
                bucket = acc.setdefault(u, {})
                for e, x in g.terms.items():
                    bucket[e] = bucket.get(e, 0) + c * x
        out = {}
        for u, bucket in acc.items():
            p = Polynomial(self.nvars, bucket)
            if p:
                out[u] = p
        return out

    def mul(self, a: "NHElement", b: "NHElement") -> "NHElement":
        if a.algebra is not self or b.algebra is not self:
            raise RankMismatch("elements belong to different nil Hecke algebras")
        group, lengths = self.group, self._lengths
        acc: Dict[int, Polynomial] = {}
        for v, av in a.coeffs.items():
            for w, bw in b.coeffs.items():
                pushed = self.push(v, bw) if v else {0: bw}
                for u, f in pushed.items():
                    uw = group.mul_index(u, w)
                    if lengths[uw] != lengths[u] + lengths[w]:
                        continue
                    term = av * f
                    acc[uw] = acc[uw] + term if uw in acc else term
        return NHElement(self, {k: c for k, c in acc.items() if c})

    def apply(self, h: "NHElement", f: Polynomial) -> Polynomial:
        f = self.poly(f)
        total = Polynomial.zero(self.nvars)
        for k, c in h.coeffs.items():
            total = total + c * self.delta_w(self.group.elements[k], f)
        return total


class NHElement:
    """An element ``sum_w (c_w *) o delta_w`` of a nil Hecke algebra."""

    __slots__ = ("algebra", "coeffs", "_hash")

    def __init__(self, algebra: NilHecke, coeffs: Dict[int, Polynomial]):
        self.algebra = algebra
        self.coeffs = coeffs
        self._hash = None

    # -- views ------------------------------------------------------------

    def items(self) -> List[Tuple[WeylElement, Polynomial]]:
        els = self.algebra.group.elements
        return [(els[k], self.coeffs[k]) for k in sorted(self.coeffs)]

    def coefficient(self, w) -> Polynomial:
        w = self.algebra.group.element(w)
        return self.coeffs.get(w.index, Polynomial.zero(self.algebra.nvars))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def support(self) -> List[WeylElement]:
        return [w for w, _ in self.items()]

    def degree(self) -> Optional[int]:
        """Polynomial degree minus delta length, when all terms agree; else None."""
        degs = set()
        for w, c in self.items():
            for e in c.terms:
                degs.add(sum(e) - w.length)
        return degs.pop() if len(degs) == 1 else None

    def flatten(self) -> Dict[Tuple[int, tuple], Fraction]:
        """Coordinates in the basis ``t^a delta_w``."""
        return {(k, e): v for k, c in self.coeffs.items() for e, v in c.terms.items()}

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "NHElement":
        if isinstance(other, NHElement):
            if other.algebra is not self.algebra:
                raise RankMismatch("elements belong to different nil Hecke algebras")
            return other
        if isinstance(other, Polynomial):
            return self.algebra.multiplication(other)
        if isinstance(other, (int, Rational)):
            return self.algebra.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            v = out[k] + c if k in out else c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return NHElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self) -> "NHElement":
        return NHElement(self.algebra, {k: -c for k, c in self.coeffs.items()})

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

    def scale(self, c) -> "NHElement":
        c = Fraction(c)
        if not c:
            return self.algebra.zero()
        return NHElement(self.algebra, {k: v.scale(c) for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.algebra.mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        if isinstance(other, Polynomial):
            return self.algebra.multiplication(other) * self
        return NotImplemented

    def __pow__(self, k: int) -> "NHElement":
        if k < 0:
            raise ValueError("negative power")
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, NHElement):
            return self.algebra is other.algebra and self.coeffs == other.coeffs
        if isinstance(other, (int, Rational, Polynomial)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.coeffs.items()))
        return self._hash

    def __call__(self, f: Polynomial) -> Polynomial:
        return self.algebra.apply(self, f)

    # -- text ---------------------------------------------------------------

    def to_text(self, convention: str = PAPER) -> str:
        """Text parseable by the operator-expression grammar."""
        if not self.coeffs:
            return "0"
        parts = []
        for w, c in self.items():
            c = c if convention_sign(w.length, convention) > 0 else -c
            ds = "*".join(f"d{i}" for i in w.word)
            if not ds:
                parts.append(str(c))
            elif c == 1:
                parts.append(ds)
            else:
                parts.append(f"({c})*{ds}")
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"NHElement({self.algebra.group.datum.name}: {self.to_text()})"

    def to_json(self) -> dict:
        return {
            "group": self.algebra.group.datum.name,
            "terms": [{"word": list(w.word), "coeff": c.to_json()} for w, c in self.items()],
        }


# -- functional API ---------------------------------------------------------


def demazure_apply(nh: NilHecke, i: int, f: Polynomial, convention: str = PAPER) -> Polynomial:
    return nh.demazure(i, f, convention)


def delta_w_apply(nh: NilHecke, w: WeylElement, f: Polynomial, convention: str = PAPER) -> Polynomial:
    return nh.delta_w(w, f, convention)


def nh_apply(h: NHElement, f: Polynomial) -> Polynomial:
    return h.algebra.apply(h, f)


def nh_mul(a: NHElement, b: NHElement) -> NHElement:
    return a.algebra.mul(a, b)


def embed_weyl(nh: NilHecke, w) -> NHElement:
    return nh.embed_weyl(w)


def wp_group_action(v: WeylElement, w: WeylElement, h: NHElement) -> NHElement:
    """``(v, w) . h = v o h o w^{-1}``."""
    nh = h.algebra
    return nh.embed_weyl(v) * h * nh.embed_weyl(nh.group.inverse(w))


def right_form(h: NHElement) -> Dict[WeylElement, Polynomial]:
    """Coefficients ``r_w`` with ``h = sum_w delta_w o (r_w *)``."""
    nh = h.algebra
    group = nh.group
    rest = h
    out: Dict[int, Polynomial] = {}
    while rest:
        k = max(rest.coeffs, key=lambda j: (group.elements[j].length, j))
        w = group.elements[k]
        r = apply_weyl(group.inverse(w), rest.coeffs[k])
        out[k] = r
        rest = rest - NHElement(nh, nh.push(k, r))
    return {group.elements[k]: c for k, c in sorted(out.items())}


def is_invariant_multiplication(h: NHElement, max_degree: int, on_invariants: bool = False) -> Optional[Polynomial]:
    """The polynomial ``p`` when ``h`` acts as ``(p *)`` in degree <= ``max_degree``, else None.

    By default every monomial is probed.  With ``on_invariants`` only the
    ``W``-invariants are probed and ``p`` must itself be ``W``-invariant;
    this is the statement that matters for elements of the corner
    ``e_W NH e_W``, which act on the invariant subring only.
    """
    from .polyring import monomials_up_to_degree

    nh = h.algebra
    p = nh.apply(h, Polynomial.one(nh.nvars))
    if on_invariants:
        if not is_invariant(nh.group, p):
            return None
        probes = invariant_basis(nh.group, max_degree)
    else:
        probes = [Polynomial.monomial(e) for e in monomials_up_to_degree(nh.nvars, max_degree)]
    for m in probes:
        if nh.apply(h, m) != p * m:
            return None
    return p


def is_w_linear(h: NHElement, max_degree: int, probes: Optional[Iterable[Polynomial]] = None) -> bool:
    """Check ``h(p f) = p h(f)`` for W-invariant ``p`` of degree <= ``max_degree``."""
    nh = h.algebra
    probes = list(probes) if probes is not None else [Polynomial.one(nh.nvars)] + [
        nh.var(j) for j in range(1, nh.nvars + 1)
    ]
    for p in invariant_basis(nh.group, max_degree):
        for f in probes:
            if nh.apply(h, p * f) != p * nh.apply(h, f):
                return False
    return True


def staircase_monomials(nvars: int) -> List[tuple]:
    """Exponents ``a`` with ``0 <= a_i <= n - i`` (1-based ``i``)."""
    out = [()]
    for i in range(nvars):
        out = [e + (k,) for e in out for k in range(nvars - i)]
    return out


__all__ = [
    "PAPER",
    "CLASSICAL",
    "NilHecke",
    "NHElement",
    "DivisibilityError",
    "demazure_apply",
    "delta_w_apply",
    "nh_apply",
    "nh_mul",
    "embed_weyl",
    "wp_group_action",
    "right_form",
    "is_invariant",
    "is_invariant_multiplication",
    "is_w_linear",
    "staircase_monomials",
]
