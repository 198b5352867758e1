import itertools
import random
from fractions import Fraction

import pytest

from nilhecke.algebra import NilHecke, is_invariant_multiplication
from nilhecke.parabolic import (
    CornerElement,
    NotACornerElement,
    average_bimodule,
    bimodule_invariance_check,
    corner_generators,
    corner_project,
    delta_s_kills_idempotent_check,
    forgetful_span_check,
    freeness_experiment,
    idempotent,
    invariant_multiplication,
    matrix_rep,
    parabolic_demazure,
)
from nilhecke.polyring import Polynomial, monomials_up_to_degree
from nilhecke.sampling import random_element
from nilhecke.weyl import apply_weyl, enumerate_parabolic, invariant_basis, is_invariant, min_coset_reps


def subsets(rank):
    for k in range(rank + 1):
        yield from itertools.combinations(range(1, rank + 1), k)


def test_idempotent_examples():
    nh = NilHecke.of("A1")
    assert idempotent(nh, ()) == nh.one()
    e = idempotent(nh, (1,))
    expected = nh.one() + nh.multiplication(Polynomial.parse("t1 - t2", 2)).scale(Fraction(1, 2)) * nh.delta(1)
    assert e == expected
    assert e(Polynomial.parse("t1", 2)) == Polynomial.parse("1/2*t1 + 1/2*t2", 2)
    assert e * e == e


@pytest.mark.parametrize("spec", ["A2", "B2"])
def test_idempotent_averages(spec):
    nh = NilHecke.of(spec)
    probes = [Polynomial.monomial(m) for m in monomials_up_to_degree(nh.nvars, 3)]
    for J in subsets(nh.group.rank):
        e = idempotent(nh, J)
        sub = enumerate_parabolic(nh.group, J)
        assert e * e == e
        assert delta_s_kills_idempotent_check(nh, J).holds
        for f in probes:
            avg = sum((apply_weyl(w, f) for w in sub), Polynomial.zero(nh.nvars)).scale(Fraction(1, len(sub)))
            assert e(f) == avg
        for b in invariant_basis(nh.group, 4, J):
            assert e(b) == b


def test_corner_project_examples():
    nh = NilHecke.of("A1")
    e = idempotent(nh, (1,))
    assert corner_project(nh.one(), (1,)).carrier == e
    # e d1 e vanishes because d1 e = 0
    assert corner_project(nh.delta(1), (1,)).carrier.is_zero()
    with pytest.raises(NotACornerElement):
        CornerElement(nh.delta(1), (1,))


def test_corner_elements_preserve_invariants():
    nh = NilHecke.of("A2")
    rng = random.Random(2)
    for J in [(1,), (2,), (1, 2)]:
        for _ in range(5):
            c = corner_project(random_element(nh, rng), J)
            assert c.preserves_invariants(4)


def test_parabolic_demazure_examples():
    nh = NilHecke.of("A2")
    g = nh.group
    assert parabolic_demazure(nh, g.identity, (1,)).carrier == idempotent(nh, (1,))
    assert not parabolic_demazure(nh, g.from_word([2]), (1,)).carrier.is_zero()
    assert not parabolic_demazure(nh, g.from_word([1, 2]), (1,)).carrier.is_zero()
    with pytest.raises(ValueError):
        parabolic_demazure(nh, g.from_word([1]), (1,))


def test_bimodule_invariance():
    nh = NilHecke.of("A2")
    assert bimodule_invariance_check(idempotent(nh, (1,)), (1,))
    a1 = NilHecke.of("A1")
    assert not bimodule_invariance_check(a1.delta(1), (1,))
    for w in min_coset_reps(nh.group, (1,)):
        assert bimodule_invariance_check(parabolic_demazure(nh, w, (1,)), (1,))


def test_full_average_acts_on_invariants_by_invariant_multiplication():
    nh = NilHecke.of("A2")
    rng = random.Random(4)
    for _ in range(3):
        avg = average_bimodule(random_element(nh, rng, coeff_degree=2))
        p = is_invariant_multiplication(avg, 4, on_invariants=True)
        assert p is not None and is_invariant(nh.group, p)
    # the average of the identity is e_W, which is not a multiplication on all of Q[t]
    assert is_invariant_multiplication(average_bimodule(nh.one()), 2) is None


def test_matrix_rep_examples():
    nh = NilHecke.of("A2")
    J = (1,)
    e = CornerElement(idempotent(nh, J), J)
    assert matrix_rep(e, 6).is_identity()
    gens = [g for _, g in corner_generators(nh, J, 1)]
    for a, b in itertools.product(gens, repeat=2):
        assert matrix_rep(a * b, 6) == matrix_rep(a, 6) @ matrix_rep(b, 6)


def test_matrix_entries_are_invariant():
    nh = NilHecke.of("A2")
    m = matrix_rep(parabolic_demazure(nh, nh.group.from_word([1, 2]), (1,)), 6)
    assert m.size == 3
    for row in m.entries:
        for x in row:
            assert is_invariant(nh.group, x)


def test_invariant_multiplication_rejects_non_invariant():
    nh = NilHecke.of("A2")
    with pytest.raises(ValueError):
        invariant_multiplication(nh, Polynomial.parse("t1", 3), (1,))
    c = invariant_multiplication(nh, Polynomial.parse("t1 + t2", 3), (1,))
    assert c.preserves_invariants(3)


def test_forgetful_span_a2():
    report = forgetful_span_check(NilHecke.of("A2"), (1,), max_degree=6)
    assert report.r == 3
    assert report.span_dimension == 9
    assert report.holds


def test_freeness_trivial_and_consistency():
    report = freeness_experiment(NilHecke.of("A1"), (1,), 4)
    assert report.r == 1
    assert all(row["kernel_dim"] == 0 for row in report.per_degree)
    report = freeness_experiment(NilHecke.of("A2"), (1,), 5)
    assert report.consistent
    assert report.to_json()["per_degree"][0]["degree"] == 0
