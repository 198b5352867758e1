import pytest

from nilhecke.algebra import CLASSICAL, PAPER, NilHecke
from nilhecke.polyring import Polynomial
from nilhecke.schubert import (
    BasisFailure,
    FlowUpBasis,
    NotStabilized,
    coinvariant_dimension,
    coinvariant_hilbert,
    flowup_check,
    free_basis_failure,
    parabolic_basis,
    schubert_family,
    sign_bridge_holds,
    staircase,
)
from nilhecke.weyl import is_invariant, min_coset_reps


def P(text, n):
    return Polynomial.parse(text, n)


def test_schubert_s3_known_values():
    fam = schubert_family(3)
    # the six Schubert polynomials of S_3
    expected = {"1", "t1", "t1 + t2", "t1^2", "t1*t2", "t1^2*t2"}
    assert {str(p) for p in fam.values()} == expected
    g = NilHecke.of("A2").group
    assert fam[g.identity] == P("1", 3)
    assert fam[g.longest] == P("t1^2*t2", 3)
    assert fam[g.simple(1)] == P("t1", 3)
    assert fam[g.simple(2)] == P("t1 + t2", 3)


@pytest.mark.parametrize("n", [3, 4])
def test_schubert_divided_difference_rule(n):
    nh = NilHecke.of(f"A{n - 1}")
    g = nh.group
    fam = schubert_family(n)
    for w, p in fam.items():
        assert p.is_zero() is False and (p.degree() == w.length)
        for i in range(1, n):
            ws = g.mul(w, g.simple(i))
            d = nh.demazure(i, p, CLASSICAL)
            assert d == (fam[ws] if ws.length < w.length else Polynomial.zero(n))


def test_schubert_family_is_graded_basis():
    nh = NilHecke.of("A2")
    fam = schubert_family(3)
    assert free_basis_failure(nh, list(fam.values()), (1, 2), 5) is None


def test_schubert_paper_convention_signs():
    classical, paper = schubert_family(3), schubert_family(3, PAPER)
    g = NilHecke.of("A2").group
    for w in g:
        u = g.mul(g.inverse(w), g.longest)
        assert paper[w] == classical[w].scale((-1) ** u.length)


def test_sign_bridge():
    assert sign_bridge_holds(NilHecke.of("A2"), 4)
    assert sign_bridge_holds(NilHecke.of("B2"), 4)


def test_flowup_examples():
    a1 = NilHecke.of("A1")
    basis = flowup_check(a1, staircase(2), (1,), 6)
    assert isinstance(basis, FlowUpBasis)
    assert set(map(str, basis.generators.values())) == {"t1", "-1"}
    failure = flowup_check(a1, P("t1 + t2", 2), (1,), 6)
    assert isinstance(failure, BasisFailure) and failure.reason == "zero generator"
    a2 = NilHecke.of("A2")
    assert isinstance(flowup_check(a2, staircase(3), (1, 2), 6), FlowUpBasis)
    assert not flowup_check(a2, P("t1^3", 3), (1, 2), 6)


def test_free_basis_failure_modes():
    nh = NilHecke.of("A1")
    f = free_basis_failure(nh, [P("1", 2)], (1,), 3)
    assert f.reason == "not spanning" and f.degree == 1
    f = free_basis_failure(nh, [P("1", 2), P("t1 + t2", 2), P("t1", 2)], (1,), 3)
    assert f.reason == "not independent"


def test_parabolic_basis_is_invariant():
    nh = NilHecke.of("A3")
    J = (1, 2)
    basis = parabolic_basis(nh, J)
    assert len(basis) == len(min_coset_reps(nh.group, J)) == 4
    for p in basis.values():
        assert is_invariant(nh.group, p, J)


def test_coinvariant_dimensions():
    a2 = NilHecke.of("A2")
    assert coinvariant_dimension(a2, (), 3) == 6
    assert coinvariant_dimension(a2, (1,), 3) == 3
    assert coinvariant_hilbert(a2, (), 4) == [1, 2, 2, 1, 0]
    assert coinvariant_dimension(NilHecke.of("B2"), (), 4) == 8
    with pytest.raises(NotStabilized):
        coinvariant_dimension(a2, (), 1)
