"""Tests for the four descent pipelines: Klein/genus-2, Gaussian, real
quadratic, and the sextic splitting with its unit sieve."""

from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings, strategies as st

from gfe25 import descent as D
from gfe25.algebra import nf_fifth_root
from gfe25.bforms import BinaryForm, edwards_triple, evaluate_triple
from gfe25.search import AffinePoint, InfinitePoint


# ---------------------------------------------------------------------------
# Klein splitting and the genus-2 reduction
# ---------------------------------------------------------------------------

def test_klein_split_h1():
    s = D.rational_split(1)
    assert (s.A, s.B, s.C) == (12**4, 11 * 12**2, -1)
    assert s.scale == -12


def test_klein_split_h25():
    s = D.rational_split(25)
    assert (s.A, s.B, s.C) == (1, 11 * 9, -(3**4))
    assert s.scale == -3


def test_klein_split_klein_form():
    klein = BinaryForm(12, (0, -1, 0, 0, 0, 0, 11, 0, 0, 0, 0, 1, 0))
    s = D.klein_split(klein, (BinaryForm(1, (0, 1)), BinaryForm(1, (1, 0))))
    assert (s.A, s.B, s.C, s.scale) == (1, 11, -1, 1)


def test_klein_split_b11_recorded_not_asserted():
    # the (B/11)^2-vs-AC relation fails already for the Klein form itself,
    # so it must only ever be reported
    klein = BinaryForm(12, (0, -1, 0, 0, 0, 0, 11, 0, 0, 0, 0, 1, 0))
    s = D.klein_split(klein, (BinaryForm(1, (0, 1)), BinaryForm(1, (1, 0))))
    lhs, rhs = s.b11_observed
    assert (lhs, rhs) == (1, -1) and lhs != rhs


def test_klein_split_rejects_non_roots():
    with pytest.raises(D.NoRationalRoots):
        D.klein_split(edwards_triple(1).h,
                      (BinaryForm(1, (1, 1)), BinaryForm(1, (1, 0))))


def test_alpha_candidates():
    assert D.alpha_candidates(1) == {12}
    assert D.alpha_candidates(20) == {12}
    assert D.alpha_candidates(25) == {1}


def test_genus2_models():
    expected = {
        (1, 12): {2**8 * 5**3, 2**6 * 3**4 * 5**3},
        (20, 12): {2**8 * 3**4 * 5**3, 2**6 * 5**3},
        (25, 1): {2**8 * 5**3, 2**8 * 3**6 * 5**3},
    }
    for (i, alpha), gammas in expected.items():
        models = D.genus2_models(D.rational_split(i), alpha)
        assert {m.coeffs[0] for m in models} == gammas
        assert all(m.coeffs[1:] == (0, 0, 0, 0, 1) for m in models)


def test_genus2_gamma_tenth_power_free():
    import sympy as sp
    for i, alpha in ((1, 12), (20, 12), (25, 1)):
        for m in D.genus2_models(D.rational_split(i), alpha):
            fac = sp.factorint(abs(m.coeffs[0]))
            assert all(e < 10 for e in fac.values())


def test_genus2_back_substitute_i1():
    s = D.rational_split(1)
    lifted = {pt: D.genus2_back_substitute(s, 12, pt)
              for pt in (AffinePoint(Fr(-4), Fr(176)),
                         AffinePoint(Fr(-4), Fr(-176)))}
    assert set(lifted.values()) == {(0, 1), None}  # one point does not lift


def test_genus2_back_substitute_i25():
    # of the three rational points, one maps to (1,1), one to (1,-1)
    # through the second linear factor, and one does not lift
    s = D.rational_split(25)
    got = {D.genus2_back_substitute(s, 1, pt)
           for pt in (AffinePoint(Fr(-4), Fr(176)),
                      AffinePoint(Fr(-4), Fr(-176)),
                      InfinitePoint(1))}
    assert got == {(1, 1), (1, -1), None}


def test_genus2_back_substitute_i20_infinity():
    s = D.rational_split(20)
    assert D.genus2_back_substitute(s, 12, InfinitePoint(1)) == (1, 0)


def test_rational_family_final_solutions():
    # primitive solutions recovered from the three curves: exactly (+-1, -1, 0)
    import math
    sols = set()
    for i, uvs in ((1, [(0, 1)]), (20, [(1, 0)]), (25, [(1, 1), (1, -1)])):
        for u, v in uvs:
            f, g, h = evaluate_triple(i, u, v)
            assert f * f + g**3 + h**5 == 0
            if math.gcd(math.gcd(f, g), h) == 1:
                sols.update({(f, g, -h), (-f, g, -h)})
    assert sols == {(1, -1, 0), (-1, -1, 0)}


# ---------------------------------------------------------------------------
# Gaussian descent
# ---------------------------------------------------------------------------

def test_gauss_family_all_verify():
    for i in D.GAUSS_INDICES:
        D.gauss_family(i)


def test_gauss_f4_printed():
    # 3X(X^4 - 10X^2 + 5)(X^5 + 10X^4 - 10X^3 - 20X^2 + 5X + 2), ascending
    assert D.gauss_family(4).F == (0, 30, 75, -360, -300, 756, 330,
                                   -360, -60, 30, 3)


def test_gauss_relation_web():
    F4 = D.gauss_family(4).F
    assert D.gauss_family(18).F == tuple(c * (-1) ** k
                                         for k, c in enumerate(F4))
    assert D.gauss_family(12).F == D.gauss_family(17).F == \
        tuple(-c for c in F4)
    assert D.gauss_family(3).F == D.gauss_family(27).F == \
        tuple(-c * (-1) ** k for k, c in enumerate(F4))


def test_gauss_resultant_support():
    for i in D.GAUSS_INDICES:
        assert D.gauss_family(i).resultant == -144


def test_gauss_s17():
    assert tuple(D.gauss_family(17).S.coeffs) == (0, 6, 0)  # 6uv


@settings(max_examples=50, deadline=None)
@given(st.integers(-30, 30), st.integers(-30, 30))
def test_gauss_norm_form_identity(u, v):
    for i in D.GAUSS_INDICES:
        d = D.gauss_family(i)
        re, im = d.re.evaluate(u, v), d.im.evaluate(u, v)
        assert re * re + im * im == d.quartic.evaluate(u, v)


def test_gauss_back_substitute_origin():
    fib = D.gauss_back_substitute(3, (0, 0))
    assert fib.solutions == {(0, 1), (0, -1), (1, 0), (-1, 0)}
    assert not fib.contradiction


def test_gauss_back_substitute_contradictions():
    fib = D.gauss_back_substitute(4, (1, 12))
    assert not fib.solutions and fib.contradiction == "+-4 = 6u^2"
    fib = D.gauss_back_substitute(18, (-1, 12))
    assert not fib.solutions and fib.contradiction == "+-4 = -2v^2"


def test_gauss_family_final_solutions():
    sols = set()
    for i in (3, 4):
        for u, v in D.gauss_back_substitute(i, (0, 0)).solutions:
            f, g, h = evaluate_triple(i, u, v)
            if f or g or h:
                sols.add((f, g, -h))
    assert {s for s in sols if all(s)} == set()
    assert {(0, 1, 1), (0, -1, -1)} <= sols


# ---------------------------------------------------------------------------
# Real-quadratic descent
# ---------------------------------------------------------------------------

def test_sqrt5_family_printed_f0():
    F = D.sqrt5_family(0).F
    assert F.coeff(9) == -1650  # a^9 b term, ascending in b
    assert F.coeff(0) == 215625
    assert tuple(F.coeffs) == tuple(reversed(
        (81, -1650, 16725, -99000, 395250, -1039500, 1961250,
         -2475000, 2128125, -1031250, 215625)))


def test_sqrt5_family_all_j():
    for j in (-2, -1, 0, 1, 2):
        d = D.sqrt5_family(j)
        assert d.F.degree == 10 and d.D.genus == 4


@settings(max_examples=60, deadline=None)
@given(st.integers(-20, 20), st.integers(-20, 20))
def test_sqrt5_f_from_g1_g2(a, b):
    for j in (-1, 0, 2):
        d = D.sqrt5_family(j)
        g1, g2 = d.g1.evaluate(a, b), d.g2.evaluate(a, b)
        assert d.F.evaluate(a, b) == 81 * g1 * g1 - 330 * g1 * g2 + 345 * g2 * g2


def test_sqrt5_conclude_requires_flags():
    with pytest.raises(ValueError):
        D.sqrt5_conclude({0: []})


def test_sqrt5_conclude():
    points = {0: [InfinitePoint(1), InfinitePoint(-1)],
              -1: [AffinePoint(Fr(1), Fr(192)), AffinePoint(Fr(1), Fr(-192))],
              -2: [AffinePoint(Fr(1), Fr(96)), AffinePoint(Fr(1), Fr(-96))]}
    out = D.sqrt5_conclude(points, d1_empty=True, d2_empty=True)
    assert out.values == {1, 3**5, 3**4, 2 * 3**4, 2**5 * 3**4, 2**6 * 3**4}
    assert out.solutions == {(0, 1), (0, -1)}


def test_sqrt5_family_final_solutions():
    for u, v in ((0, 1), (0, -1)):
        assert v**6 + 5 * u**6 == 1  # z = 1 branch: solutions (+-1, 0, 1)


# ---------------------------------------------------------------------------
# Sextic splitting
# ---------------------------------------------------------------------------

def test_sextic_split_resultants():
    for i in D.SEXTIC_INDICES:
        s = D.sextic_split(i)
        assert set(s.res_support) <= {2, 3, 5}
        assert s.primes_above_5 == 1


def test_sextic_split_rebuild_h22():
    s = D.sextic_split(22)
    K = s.field
    assert list(K.min_poly) == [-4, 12, 0, -10, 0, 3, 1]
    rebuilt = (s.q * s.H).map_coeffs(lambda c: c * s.scalar)
    h = edwards_triple(22).h
    assert all(x == y for x, y in zip(rebuilt.coeffs, h.coeffs))


def test_sextic_split_monic_quadratic():
    for i in (5, 22, 24):
        q = D.sextic_split(i).q
        assert q.degree == 2 and q.coeff(2) == D.sextic_split(i).field.one


def test_sextic_split_rejects_non_sextic_index():
    with pytest.raises(ValueError):
        D.sextic_split(1)


def test_unit_data_verifies():
    for rep in sorted(set(D.FIELD_REP.values())):
        D.verify_unit_data(rep)


def test_unit_data_rejects_non_units():
    gens, qs = D.load_unit_data(22)
    bad = [gens[0] * 2, gens[1], gens[2]]
    with pytest.raises(D.BadUnitData):
        D.verify_unit_data(22, bad, qs)


def test_unit_data_rejects_dependent_sets():
    gens, qs = D.load_unit_data(22)
    bad = [gens[0], gens[1], gens[0] * gens[1]]
    with pytest.raises(D.BadUnitData):
        D.verify_unit_data(22, bad, qs)


def test_unit_sieve_monotone_and_order_independent():
    small = D.unit_sieve(22, primes=(11, 31), use_mod25=False)
    bigger = D.unit_sieve(22, primes=(11, 31, 41, 61), use_mod25=False)
    assert set(bigger) <= set(small)
    swapped = D.unit_sieve(22, primes=(61, 41, 31, 11), use_mod25=False)
    assert swapped == bigger


def test_unit_sieve_rejects_bad_prime():
    with pytest.raises(D.IndexRisk):
        D.unit_sieve(22, primes=(5,))


def test_unit_sieve_catalan_witness():
    surv = D.unit_sieve(5)
    assert len(surv) == 1
    s = D.sextic_split(5)
    eta = D.class_unit(D.FIELD_REP[5], surv[0])
    val = s.H.evaluate(s.field.from_int(0), s.field.from_int(1)) * eta.inverse()
    root = nf_fifth_root(val)
    assert root is not None and root**5 == val
    # the witness evaluates to the Catalan solution
    f, g, h = evaluate_triple(5, 0, 1)
    assert (abs(f), g, -h) == (3, -2, 1)


def test_unit_sieve_one_empty_case():
    assert D.unit_sieve(9) == []
