"""Tests for number-field arithmetic, factorization, and residue splittings."""

import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gfe25 import algebra as alg

# Table of degree multisets of the twelfth-degree forms: index -> (over Q, over Q(sqrt5))
FACT_TYPES = {
    **{i: [1, 1, 10] for i in (1, 20, 25)},
    **{i: [4, 8] for i in (3, 4, 12, 17, 18, 27)},
    **{i: [6, 6] for i in (2, 10, 26)},
    **{i: [12] for i in (5, 6, 7, 8, 9, 11, 13, 14, 15, 16, 19, 21, 22, 23, 24)},
}


def test_factor_fp_gauss_mod5():
    lead, facs = alg.factor_fp([1, 0, 1], 5)
    assert lead == 1
    assert sorted(f for f, _ in facs) == [[2, 1], [3, 1]]


def test_factor_fp_gauss_mod3_irreducible():
    _, facs = alg.factor_fp([1, 0, 1], 3)
    assert facs == [([1, 0, 1], 1)]


def test_factor_q_content_and_factors():
    content, facs = alg.factor_q([-4, 0, 4])   # 4x^2 - 4 = 4(x-1)(x+1)
    assert content == 4
    assert sorted(f for f, _ in facs) == [[-1, 1], [1, 1]]


def test_factorization_types_over_q():
    for i, want in FACT_TYPES.items():
        if want in ([1, 1, 10], [4, 8]):
            assert alg.factorization_type(i, "Q") == want, i


def test_factorization_types_over_golden():
    for i, want in FACT_TYPES.items():
        if want in ([6, 6], [12]):
            assert alg.factorization_type(i, "golden") == want, i
    # the degree-8 factor of a [4,8] row splits further over Q(sqrt5)
    assert alg.factorization_type(3, "golden") == [4, 4, 4]


def test_golden_ramified_at_5():
    K = alg.auxiliary_field("golden")
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        rs = alg.residue_split(K, 5)
    assert rs.ramified
    assert rs.factors == [([2, 1], 2)]


def test_k5_residue_degrees():
    K5 = alg.coefficient_field(5)
    rs7 = alg.residue_split(K5, 7)
    assert sum((len(f) - 1) * e for f, e in rs7.factors) == 6
    rs11 = alg.residue_split(K5, 11)
    assert sorted(len(f) - 1 for f, _ in rs11.factors) == [3, 3]


def test_index_risk_warning():
    K = alg.NumberField([4, 0, 1], label="2i")  # disc = -16, 2^2 | disc
    with pytest.warns(alg.NonMaximalOrderWarning):
        alg.residue_split(K, 2)


def test_nfelement_field_ops():
    G = alg.auxiliary_field("gauss")
    i = G.gen
    assert i * i == -1
    assert (1 + i) * (1 - i) == 2
    assert (G.element([2, 3]) / G.element([2, 3])) == G.one
    assert G.element([1, 1]).norm() == 2
    assert (1 / (1 + i)) == G.element([Fraction(1, 2), Fraction(-1, 2)])
    assert not G.element([Fraction(1, 2)]).is_integral
    assert (i ** 4) == 1


def test_golden_unit_is_integral():
    # the golden basis makes the fundamental unit a basis element
    K = alg.auxiliary_field("golden")
    eps = K.gen
    assert eps * eps == eps + 1
    assert (eps * (eps - 1)).is_rational() and (eps * (eps - 1)).as_rational() == 1
    assert eps.norm() == -1


def test_factor_nf_splits_gauss_quadratic():
    G = alg.auxiliary_field("gauss")
    lead, facs = alg.factor_nf([1, 0, 1], G)   # x^2 + 1 = (x-i)(x+i)
    assert lead == G.one
    roots = sorted(tuple(f[0].coords) for f, _ in facs)
    assert roots == [((-Fraction(1),) * 0 + (Fraction(0), Fraction(-1))),
                     ((Fraction(0), Fraction(1)))]


def test_nf_fifth_root_gauss():
    G = alg.auxiliary_field("gauss")
    r = alg.nf_fifth_root(G.element([-4, -4]))
    assert r == G.element([1, 1])
    assert alg.nf_fifth_root(G.element([2])) is None
    assert alg.nf_fifth_root(G.zero) == G.zero


def test_nf_fifth_root_sextic_roundtrip():
    K = alg.coefficient_field(22)
    e = K.element([1, -1, 0, 1])
    assert alg.nf_fifth_root(e ** 5) == e
    assert alg.nf_fifth_root(K.element([3])) is None


def test_fq_fifth_power_class():
    K5 = alg.coefficient_field(5)
    fq = alg.residue_split(K5, 11).residue_fields[0]
    assert fq.q == 11**3 and fq.q % 5 == 1
    a = fq.element([2, 1])
    assert fq.fifth_power_class(fq.pow(a, 5)) == 0
    classes = {fq.fifth_power_class(fq.element([c])) for c in range(1, 11)}
    assert 0 in classes and len(classes) > 1
    with pytest.raises(alg.ZeroInput):
        fq.fifth_power_class(fq.zero)


def test_fq_fifth_power_class_trivial_when_q_not_1_mod_5():
    fq = alg.Fq(3, [1, 0, 1])  # q = 9, 9 % 5 != 1
    assert fq.fifth_power_class(fq.element([1, 2])) == 0


def test_reduction_map_is_ring_hom():
    K = alg.coefficient_field(5)
    rs = alg.residue_split(K, 7)
    j = max(range(len(rs.factors)), key=lambda j: len(rs.factors[j][0]))
    fq = rs.residue_fields[j]
    a = K.element([1, 2, 0, 1])
    b = K.element([3, 0, 1])
    assert rs.reduce(a * b, j) == fq.mul(rs.reduce(a, j), rs.reduce(b, j))
    assert rs.reduce(a + b, j) == fq.add(rs.reduce(a, j), rs.reduce(b, j))


coord = st.integers(min_value=-9, max_value=9)


@settings(max_examples=40, deadline=None)
@given(st.lists(coord, min_size=2, max_size=2), st.lists(coord, min_size=2, max_size=2))
def test_gauss_norm_multiplicative(ac, bc):
    G = alg.auxiliary_field("gauss")
    a, b = G.element(ac), G.element(bc)
    assert (a * b).norm() == a.norm() * b.norm()


@settings(max_examples=25, deadline=None)
@given(st.lists(coord, min_size=2, max_size=2))
def test_gauss_inverse_roundtrip(ac):
    G = alg.auxiliary_field("gauss")
    a = G.element(ac)
    if a:
        assert a * a.inverse() == G.one


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_sextic_mul_matches_sympy_norm(coords):
    K = alg.coefficient_field(6)
    a = K.element(coords)
    sq = a * a
    if a:
        assert sq.norm() == a.norm() ** 2
