"""Exact computations in nil Hecke algebras, their parabolic corners and GKM models.

All arithmetic is over the rationals.  The main entry points:

* :class:`Polynomial` and :class:`LinearForm` for ``Q[t1..tn]``;
* :func:`weyl_group` / :class:`WeylGroup` for finite Weyl groups;
* :class:`NilHecke` and :class:`NHElement` for the nil Hecke algebra;
* :mod:`nilhecke.parabolic`, :mod:`nilhecke.schubert`, :mod:`nilhecke.gkm`
  and :mod:`nilhecke.reineke` for the experiments built on top.
"""

from .algebra import CLASSICAL, PAPER, NHElement, NilHecke, embed_weyl, nh_apply, nh_mul
from .expr import ParseError, parse_expr, parse_polynomial
from .polyring import LinearForm, Polynomial, exact_divide
from .weyl import CartanDatum, WeylElement, WeylGroup, min_coset_reps, weyl_group

__version__ = "0.1.0"

__all__ = [
    "CLASSICAL",
    "PAPER",
    "CartanDatum",
    "LinearForm",
    "NHElement",
    "NilHecke",
    "ParseError",
    "Polynomial",
    "WeylElement",
    "WeylGroup",
    "embed_weyl",
    "exact_divide",
    "min_coset_reps",
    "nh_apply",
    "nh_mul",
    "parse_expr",
    "parse_polynomial",
    "weyl_group",
]
