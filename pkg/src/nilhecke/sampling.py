"""Seeded random inputs for property checks.

Everything takes a :class:`random.Random` so that a seed fixes the whole
sample; nothing here touches the global generator.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .algebra import NHElement, NilHecke
from .polyring import Polynomial, monomials_up_to_degree


def random_rational(rng: random.Random, height: int = 5) -> Fraction:
    num = rng.randint(-height, height) or 1
    return Fraction(num, rng.randint(1, 3))


def random_polynomial(rng: random.Random, nvars: int, max_degree: int, terms: int = 3) -> Polynomial:
    monos = monomials_up_to_degree(nvars, max_degree)
    return Polynomial(nvars, {rng.choice(monos): random_rational(rng) for _ in range(rng.randint(1, terms))})


def random_element(nh: NilHecke, rng: random.Random, coeff_degree: int = 3, max_terms: int = 3) -> NHElement:
    """A sparse element: a few ``delta_w`` with random left coefficients of degree ``<= coeff_degree``."""
    n = len(nh.group)
    coeffs = {}
    for _ in range(rng.randint(1, max_terms)):
        k = rng.randrange(n)
        coeffs[k] = random_polynomial(rng, nh.nvars, coeff_degree, terms=2)
    return nh.element(coeffs)


def random_expression(rng: random.Random, rank: int, nvars: int, depth: int = 3, parabolic: Optional[bool] = True) -> str:
    """Source text in the operator grammar, built from random atoms and operators."""
    if depth <= 0 or rng.random() < 0.3:
        kind = rng.choice(["d", "t", "s", "num", "e"] + (["eP"] if parabolic else []))
        if kind == "d":
            return f"d{rng.randint(1, rank)}"
        if kind == "s":
            return f"s{rng.randint(1, rank)}"
        if kind == "t":
            return f"t{rng.randint(1, nvars)}"
        if kind == "e":
            return "e"
        if kind == "eP":
            J = sorted(rng.sample(range(1, rank + 1), rng.randint(0, rank)))
            return "eP[" + ",".join(map(str, J)) + "]"
        c = random_rational(rng)
        return str(c.numerator) if c.denominator == 1 else f"({c.numerator}/{c.denominator})"
    op = rng.choice(["+", "-", "*", "*", "neg", "pow"])
    left = random_expression(rng, rank, nvars, depth - 1, parabolic)
    if op == "neg":
        return f"-({left})"
    if op == "pow":
        return f"({left})^{rng.randint(0, 2)}"
    right = random_expression(rng, rank, nvars, depth - 1, parabolic)
    return f"({left}) {op} ({right})"
