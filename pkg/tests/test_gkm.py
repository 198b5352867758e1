import itertools

import pytest

from nilhecke.algebra import NilHecke
from nilhecke.gkm import (
    LEFT_ALL,
    LEFT_SIMPLE,
    RIGHT_ALL,
    ClosureViolation,
    FixedPointVector,
    GKMClass,
    NotGKM,
    discrepancy_report,
    gkm_basis,
    gkm_member,
    kk_apply,
    localized_apply,
    tym_apply_corrected,
    tym_apply_literal,
)
from nilhecke.polyring import Polynomial, monomials_up_to_degree


def P(text, n):
    return Polynomial.parse(text, n)


def a1_input():
    nh = NilHecke.of("A1")
    return nh, GKMClass.build(nh, [P("0", 2), P("t1 - t2", 2)])


def test_membership_examples():
    nh = NilHecke.of("A1")
    assert gkm_member(nh, [P("0", 2), P("t1 - t2", 2)])
    m = gkm_member(nh, [P("0", 2), P("t1", 2)])
    assert not m and m.witness is not None
    with pytest.raises(NotGKM):
        GKMClass.build(nh, [P("0", 2), P("t1", 2)])
    # constant tuples are always classes
    a2 = NilHecke.of("A2")
    for conv in (LEFT_SIMPLE, LEFT_ALL, RIGHT_ALL):
        assert gkm_member(a2, [P("3", 3)] * 6, convention=conv)


def test_parabolic_member():
    nh = NilHecke.of("A2")
    # W^J for J={1} has three elements, and equal entries always satisfy the condition
    assert gkm_member(nh, [P("t3", 3)] * 3, J=(1,))


def test_tym_literal_closure_failure():
    nh, p = a1_input()
    r = tym_apply_literal(1, p)
    assert [str(v) for v in r.values] == ["0", "2"]
    assert not r.member
    assert r.to_json()["member"] is False


def test_tym_corrected_and_kk_on_a1():
    nh, p = a1_input()
    assert [str(v) for v in tym_apply_corrected(1, p).polys()] == ["1", "1"]
    q = GKMClass.build(nh, [P("0", 2), P("t1 - t2", 2)], convention=RIGHT_ALL)
    assert [str(v) for v in kk_apply(1, q).polys()] == ["1", "1"]


def test_right_all_hilbert_dims_a2():
    # equivariant cohomology of the flag variety of GL_3: (1 + 2q + 2q^2 + q^3) / (1 - q)^3
    nh = NilHecke.of("A2")
    assert [len(gkm_basis(nh, k, convention=RIGHT_ALL)) for k in range(4)] == [1, 5, 14, 29]


def spanning(nh, convention, degree):
    return [c for k in range(degree + 1) for c in gkm_basis(nh, k, convention=convention)]


@pytest.mark.parametrize("spec", ["A2", "B2"])
def test_kk_relations_on_right_all(spec):
    nh = NilHecke.of(spec)
    r = nh.group.rank
    A = nh.group.datum.cartan_matrix
    order = {0: 2, 1: 3, 2: 4, 3: 6}
    classes = spanning(nh, RIGHT_ALL, 3)
    assert discrepancy_report("kk", classes) == []
    for p in classes:
        for i in range(1, r + 1):
            assert kk_apply(i, kk_apply(i, p)).is_zero()
        for i, j in itertools.combinations(range(1, r + 1), 2):
            m = order[A[i - 1][j - 1] * A[j - 1][i - 1]]
            x, y = p, p
            for k in range(m):
                x = kk_apply(i if k % 2 == 0 else j, x)
                y = kk_apply(j if k % 2 == 0 else i, y)
            assert x == y


def test_corrected_closed_on_left_all():
    nh = NilHecke.of("A2")
    classes = spanning(nh, LEFT_ALL, 3)
    assert discrepancy_report("tym-corrected", classes) == []
    for p in classes:
        for i in (1, 2):
            assert tym_apply_corrected(i, tym_apply_corrected(i, p)).is_zero()


def test_discrepancies_are_reported():
    nh = NilHecke.of("A2")
    left = spanning(nh, LEFT_SIMPLE, 2)
    report = discrepancy_report("kk", left)
    assert report and all(d.witness is not None for d in report)
    assert discrepancy_report("tym", left)
    with pytest.raises(ClosureViolation):
        for d in report[:1]:
            p = GKMClass.from_json(d.input, nh)
            kk_apply(d.index, p)


def test_json_round_trip():
    nh = NilHecke.of("A2")
    for p in gkm_basis(nh, 2, convention=RIGHT_ALL)[:5]:
        q = GKMClass.from_json(p.to_json(), nh)
        assert q == p and q.convention == RIGHT_ALL


@pytest.mark.parametrize("spec", ["A2", "B2"])
def test_localized_relations(spec):
    nh = NilHecke.of(spec)
    g = nh.group
    A = g.datum.cartan_matrix
    order = {0: 2, 1: 3, 2: 4, 3: 6}
    for w in g:
        for exps in monomials_up_to_degree(nh.nvars, 1):
            v = FixedPointVector.basis(nh, w, Polynomial.monomial(exps))
            assert localized_apply(1, localized_apply(1, v)).is_zero()
            m = order[A[0][1] * A[1][0]]
            x, y = v, v
            for k in range(m):
                x = localized_apply(1 if k % 2 == 0 else 2, x)
                y = localized_apply(2 if k % 2 == 0 else 1, y)
            assert x == y


def test_localized_a1_example():
    nh = NilHecke.of("A1")
    v = FixedPointVector.basis(nh, nh.group.identity)
    out = localized_apply(1, v)
    s = nh.group.simple(1)
    assert set(out.values) == {nh.group.identity, s}
    assert out.values[s] == -out.values[nh.group.identity]
