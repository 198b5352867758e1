import itertools
import json

import pytest

from nilhecke.polyring import Polynomial
from nilhecke.weyl import (
    CartanDatum,
    GroupTooLarge,
    WeylGroup,
    apply_weyl,
    coset_rep,
    enumerate_group,
    enumerate_parabolic,
    min_coset_reps,
    parse_group,
    parse_parabolic,
    reduced_word,
    weyl_group,
)


def words_by_matrix(group, max_len):
    """Shortest word for each reachable matrix, by brute force over all words."""
    best = {}
    for L in range(max_len + 1):
        for word in itertools.product(range(1, group.rank + 1), repeat=L):
            w = group.from_word(word)
            best.setdefault(w.matrix, L)
    return best


def test_group_orders():
    assert len(enumerate_group(weyl_group("A1"))) == 2
    assert len(enumerate_group(weyl_group("A2"))) == 6
    assert len(enumerate_group(weyl_group("B2"))) == 8
    assert len(weyl_group("A3")) == 24
    assert len(weyl_group("G2")) == 12


def test_sorted_by_length():
    lengths = [w.length for w in weyl_group("A3")]
    assert lengths == sorted(lengths)


@pytest.mark.parametrize("spec", ["A2", "B2", "A3"])
def test_length_is_minimal_word_length(spec):
    group = weyl_group(spec)
    best = words_by_matrix(group, group.longest.length)
    for w in group:
        assert best[w.matrix] == w.length == len(reduced_word(w))
        assert group.from_word(reduced_word(w)) == w


@pytest.mark.parametrize("spec", ["A2", "B2", "A3"])
def test_length_changes_by_one(spec):
    group = weyl_group(spec)
    for w in group:
        for i in range(1, group.rank + 1):
            assert abs(group.mul(w, group.simple(i)).length - w.length) == 1


def test_type_a_matches_permutations():
    group = weyl_group("A2")
    t = [Polynomial.variable(3, j) for j in range(3)]
    s1s2 = group.from_word([1, 2])
    # s1 s2 acts on t1 by first applying s2 (fixing t1), then s1: t1 -> t2
    assert apply_weyl(s1s2, t[0]) == apply_weyl(group.simple(1), apply_weyl(group.simple(2), t[0]))
    assert apply_weyl(s1s2, t[0]) == t[1]
    assert apply_weyl(group.simple(1), t[0] * t[1]) == t[0] * t[1]


def test_action_is_homomorphism():
    group = weyl_group("B2")
    f = Polynomial.parse("t1^3*t2 - 2*t2^2 + t1", 2)
    for v in group:
        for w in group:
            assert apply_weyl(group.mul(v, w), f) == apply_weyl(v, apply_weyl(w, f))


def test_simple_reflection_negates_root():
    for spec in ("A3", "B2", "G2", "C3"):
        group = weyl_group(spec)
        for i in range(1, group.rank + 1):
            alpha = group.datum.root(i).to_poly()
            assert apply_weyl(group.simple(i), alpha) == -alpha


def test_parabolic_examples():
    a2 = weyl_group("A2")
    assert [str(w) for w in enumerate_parabolic(a2, [1])] == ["e", "s1"]
    assert [str(w) for w in enumerate_parabolic(a2, [])] == ["e"]
    assert len(enumerate_parabolic(weyl_group("A3"), [1, 2])) == 6


def coset_minima(group, J):
    sub = enumerate_parabolic(group, J)
    seen, out = set(), []
    for w in group:
        coset = frozenset(group.mul(w, v).matrix for v in sub)
        if coset not in seen:
            seen.add(coset)
            out.append(min((group.mul(w, v) for v in sub), key=lambda u: u.length))
    return out


def test_min_coset_reps_examples():
    a2 = weyl_group("A2")
    assert {str(w) for w in min_coset_reps(a2, [1])} == {"e", "s2", "s1s2"}
    assert [str(w) for w in min_coset_reps(a2, [1, 2])] == ["e"]
    assert len(min_coset_reps(weyl_group("A1"), [])) == 2


@pytest.mark.parametrize("spec", ["A2", "A3", "B2"])
def test_coset_factorisation(spec):
    group = weyl_group(spec)
    for k in range(group.rank + 1):
        for J in itertools.combinations(range(1, group.rank + 1), k):
            reps = min_coset_reps(group, J)
            sub = enumerate_parabolic(group, J)
            assert len(reps) * len(sub) == len(group)
            assert set(reps) == set(coset_minima(group, J))
            products = {}
            for u in reps:
                for v in sub:
                    w = group.mul(u, v)
                    assert w.length == u.length + v.length
                    assert w not in products
                    products[w] = (u, v)
                    assert coset_rep(group, w, J) == u
            assert len(products) == len(group)


def test_cartan_matrix_input():
    datum = parse_group(json.dumps([[2, -1], [-2, 2]]))
    assert len(WeylGroup(datum)) == 8
    assert datum.cartan_matrix == ((2, -1), (-2, 2))


def test_infinite_group_rejected():
    datum = CartanDatum.from_cartan_matrix([[2, -3], [-3, 2]])
    with pytest.raises(GroupTooLarge):
        WeylGroup(datum, bound=1000)


def test_bad_specs():
    with pytest.raises(ValueError):
        parse_group("Q7")
    with pytest.raises(ValueError):
        parse_parabolic("1,x")
    assert parse_parabolic("3,1") == (1, 3)
    assert parse_parabolic("") == ()
