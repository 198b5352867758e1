"""Finite Weyl groups acting on polynomial rings.

A :class:`CartanDatum` fixes the ambient variables, the simple roots and the
coroot pairing, so that ``s_i(x) = x - <x, alpha_i^v> alpha_i`` on linear
forms.  Type A is realised on ``t1..t_{n+1}`` with ``alpha_i = t_i - t_{i+1}``
(the ``GL_{n+1}`` convention); any other finite crystallographic type is
realised on fundamental-weight coordinates from its Cartan matrix.

Group elements are identified by their action matrix on the ambient
variables.  Simple reflections are numbered from 1 in every public API.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .polyring import LinearForm, Polynomial, monomials_of_degree

Matrix = Tuple[Tuple[int, ...], ...]

DEFAULT_BOUND = 10**6


class GroupTooLarge(RuntimeError):
    """Raised when closure under the simple reflections exceeds the enumeration bound."""


class RankMismatch(ValueError):
    pass


@dataclass(frozen=True)
class CartanDatum:
    """Root data on ``nvars`` ambient variables.

    ``simple_roots[i]`` and ``coroots[i]`` are coefficient vectors; the
    pairing ``<t_j, alpha_i^v>`` is ``coroots[i][j]``.
    """

    name: str
    nvars: int
    simple_roots: Tuple[Tuple[int, ...], ...]
    coroots: Tuple[Tuple[int, ...], ...]
    cartan_type: str = "generic"

    def __post_init__(self):
        if len(self.simple_roots) != len(self.coroots):
            raise ValueError("one coroot per simple root required")
        for vec in self.simple_roots + self.coroots:
            if len(vec) != self.nvars:
                raise ValueError("root vectors must have one entry per variable")
        for i, a in enumerate(self.cartan_matrix):
            if a[i] != 2:
                raise ValueError(f"Cartan matrix diagonal entry {i + 1} is {a[i]}, expected 2")

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @property
    def cartan_matrix(self) -> Tuple[Tuple[int, ...], ...]:
        # a_ij = <alpha_j, alpha_i^v>
        return tuple(
            tuple(sum(c * r for c, r in zip(self.coroots[i], self.simple_roots[j])) for j in range(self.rank))
            for i in range(self.rank)
        )

    def root(self, i: int) -> LinearForm:
        return LinearForm(self.simple_roots[i - 1])

    def reflection_matrix(self, i: int) -> Matrix:
        alpha, cor = self.simple_roots[i - 1], self.coroots[i - 1]
        rows = []
        for j in range(self.nvars):
            row = [0] * self.nvars
            row[j] = 1
            for k in range(self.nvars):
                row[k] -= cor[j] * alpha[k]
            rows.append(tuple(row))
        return tuple(rows)

    @classmethod
    def type_a(cls, n: int) -> "CartanDatum":
        if n < 1:
            raise ValueError("type A rank must be >= 1")
        roots, cors = [], []
        for i in range(n):
            v = [0] * (n + 1)
            v[i], v[i + 1] = 1, -1
            roots.append(tuple(v))
            cors.append(tuple(v))
        return cls(f"A{n}", n + 1, tuple(roots), tuple(cors), "A")

    @classmethod
    def from_cartan_matrix(cls, matrix: Sequence[Sequence[int]], name: Optional[str] = None) -> "CartanDatum":
        r = len(matrix)
        if any(len(row) != r for row in matrix):
            raise ValueError("Cartan matrix must be square")
        # variables are fundamental weights: alpha_j = sum_i a_ij omega_i
        roots = tuple(tuple(int(matrix[i][j]) for i in range(r)) for j in range(r))
        cors = tuple(tuple(1 if k == i else 0 for k in range(r)) for i in range(r))
        return cls(name or json.dumps([list(map(int, row)) for row in matrix]), r, roots, cors)


def _cartan_matrix_named(letter: str, n: int) -> List[List[int]]:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
    for i in range(n - 1):
        a[i][i + 1] = a[i + 1][i] = -1
    if letter == "B":
        if n < 2:
            raise ValueError("B_n needs n >= 2")
        a[n - 2][n - 1] = -2
    elif letter == "C":
        if n < 2:
            raise ValueError("C_n needs n >= 2")
        a[n - 1][n - 2] = -2
    elif letter == "D":
        if n < 4:
            raise ValueError("D_n needs n >= 4")
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
    elif letter == "G":
        if n != 2:
            raise ValueError("G_2 only")
        a[0][1] = -3
    elif letter == "F":
        if n != 4:
            raise ValueError("F_4 only")
        a[1][2] = -2
    else:
        raise ValueError(f"unknown Cartan type {letter}")
    return a


def parse_group(spec: str) -> CartanDatum:
    """Parse ``"A3"``, ``"B2"``, ... or a JSON Cartan matrix."""
    spec = spec.strip()
    if spec.startswith("["):
        return CartanDatum.from_cartan_matrix(json.loads(spec))
    m = re.fullmatch(r"([A-Ga-g])_?(\d+)", spec)
    if not m:
        raise ValueError(f"cannot parse group specification {spec!r}")
    letter, n = m.group(1).upper(), int(m.group(2))
    if letter == "A":
        return CartanDatum.type_a(n)
    if letter == "E":
        raise ValueError("type E is not shipped; pass its Cartan matrix as JSON")
    return CartanDatum.from_cartan_matrix(_cartan_matrix_named(letter, n), name=f"{letter}{n}")


def parse_parabolic(text: str) -> Tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(sorted({int(x) for x in text.split(",") if x.strip()}))


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(a[i], cols[j])) for j in range(n)) for i in range(n))


def _as_permutation(m: Matrix) -> Optional[Tuple[int, ...]]:
    perm = []
    for row in m:
        nz = [k for k, v in enumerate(row) if v]
        if len(nz) != 1 or row[nz[0]] != 1:
            return None
        perm.append(nz[0])
    return tuple(perm)


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element: its action matrix, length and one reduced word.

    Row ``j`` of ``matrix`` is the image of ``t_{j+1}`` as a linear form.
    Equality and hashing use the matrix only.
    """

    matrix: Matrix
    length: int = field(compare=False)
    word: Tuple[int, ...] = field(compare=False)
    index: int = field(compare=False, default=-1)
    perm: Optional[Tuple[int, ...]] = field(compare=False, default=None, repr=False)

    def __str__(self) -> str:
        return "e" if not self.word else "".join(f"s{i}" for i in self.word)


class WeylGroup:
    """Enumerated finite Weyl group with multiplication and length tables."""

    def __init__(self, datum: CartanDatum, bound: int = DEFAULT_BOUND):
        self.datum = datum
        self.bound = bound
        self.gens = [datum.reflection_matrix(i) for i in range(1, datum.rank + 1)]
        for i, g in enumerate(self.gens, start=1):
            img = Polynomial.from_linear(datum.simple_roots[i - 1]).substitute_linear(
                [Polynomial.from_linear(row) for row in g]
            )
            if img != -Polynomial.from_linear(datum.simple_roots[i - 1]):
                raise ValueError(f"s{i} does not negate alpha_{i}")
        self.elements: List[WeylElement] = self._enumerate()
        self._lookup: Dict[Matrix, int] = {w.matrix: w.index for w in self.elements}
        # right_mul[i][k] = index of w_k * s_i ; left_mul[i][k] = index of s_i * w_k
        self.right_mul = {i: [self._lookup[_matmul(g, w.matrix)] for w in self.elements] for i, g in enumerate(self.gens, 1)}
        self.left_mul = {i: [self._lookup[_matmul(w.matrix, g)] for w in self.elements] for i, g in enumerate(self.gens, 1)}
        self._mul_cache: Dict[Tuple[int, int], int] = {}
        self.identity = self.elements[0]
        self.longest = max(self.elements, key=lambda w: w.length)

    def _enumerate(self) -> List[WeylElement]:
        n = self.datum.nvars
        ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        found: Dict[Matrix, Tuple[int, Tuple[int, ...]]] = {ident: (0, ())}
        queue = deque([ident])
        while queue:
            m = queue.popleft()
            length, word = found[m]
            for i, g in enumerate(self.gens, start=1):
                # matrix of w*s_i is M(s_i) @ M(w)
                nm = _matmul(g, m)
                if nm not in found:
                    found[nm] = (length + 1, word + (i,))
                    if len(found) > self.bound:
                        raise GroupTooLarge(
                            f"group generated by {self.datum.name} exceeds {self.bound} elements"
                        )
                    queue.append(nm)
        ordered = sorted(found.items(), key=lambda kv: (kv[1][0], kv[0]))
        return [
            WeylElement(m, length, word, idx, _as_permutation(m))
            for idx, (m, (length, word)) in enumerate(ordered)
        ]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def rank(self) -> int:
        return self.datum.rank

    @property
    def nvars(self) -> int:
        return self.datum.nvars

    def simple(self, i: int) -> WeylElement:
        if not 1 <= i <= self.rank:
            raise IndexError(f"simple reflection s{i} out of range 1..{self.rank}")
        return self.elements[self.right_mul[i][0]]

    def element(self, key) -> WeylElement:
        if isinstance(key, WeylElement):
            return self.elements[self._lookup[key.matrix]]
        if isinstance(key, int):
            return self.elements[key]
        return self.from_word(key)

    def from_word(self, word: Iterable[int]) -> WeylElement:
        k = 0
        for i in word:
            if not 1 <= i <= self.rank:
                raise IndexError(f"simple reflection s{i} out of range 1..{self.rank}")
            k = self.right_mul[i][k]
        return self.elements[k]

    def mul_index(self, a: int, b: int) -> int:
        key = (a, b)
        r = self._mul_cache.get(key)
        if r is None:
            r = a
            for i in self.elements[b].word:
                r = self.right_mul[i][r]
            self._mul_cache[key] = r
        return r

    def mul(self, v: WeylElement, w: WeylElement) -> WeylElement:
        return self.elements[self.mul_index(self.index(v), self.index(w))]

    def index(self, w: WeylElement) -> int:
        if w.index >= 0 and w.index < len(self.elements) and self.elements[w.index] == w:
            return w.index
        return self._lookup[w.matrix]

    def inverse(self, w: WeylElement) -> WeylElement:
        return self.from_word(reversed(w.word))

    def root_image(self, w: WeylElement, i: int) -> LinearForm:
        """``w(alpha_i)`` as a linear form."""
        return LinearForm(_apply_matrix_to_form(w.matrix, self.datum.simple_roots[i - 1]))

    def positive_roots(self) -> List[LinearForm]:
        roots = set()
        for w in self.elements:
            for i in range(1, self.rank + 1):
                roots.add(self.root_image(w, i).coeffs)
        point = self._chamber_point()
        pos = [r for r in roots if sum(c * x for c, x in zip(r, point)) > 0]
        return [LinearForm(r) for r in sorted(pos)]

    def _chamber_point(self) -> Tuple[Fraction, ...]:
        # a point where every simple root is positive
        if self.datum.cartan_type == "A":
            n = self.nvars
            return tuple(Fraction(n - j) for j in range(n))
        from .linalg import solve_columns

        cols = [{i: Fraction(self.datum.simple_roots[i][j]) for i in range(self.rank)} for j in range(self.nvars)]
        sol = solve_columns(cols, {i: Fraction(1) for i in range(self.rank)})
        return tuple(sol)


def _apply_matrix_to_form(m: Matrix, coeffs: Sequence) -> Tuple[int, ...]:
    n = len(m)
    return tuple(sum(coeffs[j] * m[j][k] for j in range(n)) for k in range(n))


@lru_cache(maxsize=64)
def weyl_group(spec) -> WeylGroup:
    datum = parse_group(spec) if isinstance(spec, str) else spec
    return WeylGroup(datum)


def _validate_subset(group: WeylGroup, J: Iterable[int]) -> Tuple[int, ...]:
    J = tuple(sorted(set(J)))
    for j in J:
        if not 1 <= j <= group.rank:
            raise ValueError(f"parabolic index {j} outside 1..{group.rank}")
    return J


def enumerate_group(group: WeylGroup) -> List[WeylElement]:
    return list(group.elements)


def enumerate_parabolic(group: WeylGroup, J: Iterable[int]) -> List[WeylElement]:
    """Elements of the subgroup generated by ``{s_j : j in J}``, sorted by (length, matrix)."""
    J = _validate_subset(group, J)
    seen = {0}
    queue = deque([0])
    while queue:
        k = queue.popleft()
        for j in J:
            nk = group.right_mul[j][k]
            if nk not in seen:
                seen.add(nk)
                queue.append(nk)
    return [group.elements[k] for k in sorted(seen)]


def min_coset_reps(group: WeylGroup, J: Iterable[int]) -> List[WeylElement]:
    """Minimal-length representatives of the left cosets ``w W_J``."""
    J = _validate_subset(group, J)
    out = []
    for w in group.elements:
        if all(group.elements[group.right_mul[j][w.index]].length > w.length for j in J):
            out.append(w)
    return out


def is_min_coset_rep(group: WeylGroup, w: WeylElement, J: Iterable[int]) -> bool:
    k = group.index(w)
    return all(group.elements[group.right_mul[j][k]].length > w.length for j in J)


def coset_rep(group: WeylGroup, w: WeylElement, J: Iterable[int]) -> WeylElement:
    """The minimal representative of ``w W_J``."""
    J = tuple(J)
    k = group.index(w)
    changed = True
    while changed:
        changed = False
        for j in J:
            nk = group.right_mul[j][k]
            if group.elements[nk].length < group.elements[k].length:
                k, changed = nk, True
    return group.elements[k]


def reduced_word(w: WeylElement) -> List[int]:
    return list(w.word)


def apply_weyl(w: WeylElement, f: Polynomial) -> Polynomial:
    """The ring automorphism of ``w`` applied to ``f``."""
    if len(w.matrix) != f.nvars:
        raise RankMismatch(f"element acts on {len(w.matrix)} variables, polynomial has {f.nvars}")
    if w.perm is not None:
        return f.permute(w.perm)
    return f.substitute_linear([Polynomial.from_linear(row) for row in w.matrix])


def _subgroup_key(group: WeylGroup, J) -> Tuple[int, ...]:
    return tuple(range(1, group.rank + 1)) if J is None else _validate_subset(group, J)


_INV_CACHE: Dict[Tuple[int, Tuple[int, ...], int], List[Polynomial]] = {}


def invariant_basis_homogeneous(group: WeylGroup, degree: int, J: Optional[Iterable[int]] = None) -> List[Polynomial]:
    """Basis of the degree-``degree`` invariants of ``W_J`` (all of ``W`` when ``J`` is None)."""
    J = _subgroup_key(group, J)
    key = (id(group), J, degree)
    if key in _INV_CACHE:
        return _INV_CACHE[key]
    n = group.nvars
    if all(group.simple(j).perm is not None for j in J):
        sub = enumerate_parabolic(group, J)
        seen = set()
        basis = []
        for m in monomials_of_degree(n, degree):
            if m in seen:
                continue
            orbit = set()
            for w in sub:
                ne = [0] * n
                for j, x in enumerate(m):
                    ne[w.perm[j]] = x
                orbit.add(tuple(ne))
            seen |= orbit
            basis.append(Polynomial(n, {e: 1 for e in orbit}))
    else:
        from .linalg import nullspace_columns

        monos = monomials_of_degree(n, degree)
        images = {j: [apply_weyl(group.simple(j), Polynomial.monomial(m)) for m in monos] for j in J}
        cols = []
        for c, m in enumerate(monos):
            col = {}
            for j in J:
                img = images[j][c]
                for e, v in img.terms.items():
                    col[(j, e)] = col.get((j, e), 0) + v
                col[(j, m)] = col.get((j, m), 0) - 1
            cols.append({k: v for k, v in col.items() if v})
        basis = []
        for vec in nullspace_columns(cols):
            basis.append(Polynomial(n, {monos[c]: v for c, v in enumerate(vec) if v}))
    _INV_CACHE[key] = basis
    return basis


def invariant_basis(group: WeylGroup, max_degree: int, J: Optional[Iterable[int]] = None) -> List[Polynomial]:
    """Basis of the invariants of degree <= ``max_degree``, listed by increasing degree."""
    if max_degree < 0:
        raise ValueError("degree bound must be non-negative")
    out = []
    for d in range(max_degree + 1):
        out.extend(invariant_basis_homogeneous(group, d, J))
    return out


def is_invariant(group: WeylGroup, f: Polynomial, J: Optional[Iterable[int]] = None) -> bool:
    return all(apply_weyl(group.simple(j), f) == f for j in _subgroup_key(group, J))
