"""Reductions of the parameterized curves to explicit auxiliary equations.

Four pipelines, one per factorization family of the degree-12 forms:

* Klein splitting: when h_i has two rational linear factors, pull them out,
  read off the (A, B, C) bracket, determine the finite set of twist scalars
  alpha, and derive the two Y^2 = X^5 + gamma curves together with the maps
  back to (u : v).
* Gaussian descent: when h_i has a quadratic factor splitting over Z[i],
  build the degree-10 hyperelliptic models M_i from the bracket data and invert
  points back to the two coefficient equations over Z.
* Real-quadratic descent: the unit-twisted fifth-power expansions over
  Z[(1+sqrt5)/2] and the resulting genus-4 curves D_j, plus the gcd analysis
  that turns their rational points into coprime (u, v) solutions.
* Sextic splitting and unit sieve: over each coefficient sextic field, split
  h_i into a quadratic times a primitive degree-10 form H_i and sieve the
  125 unit classes that could twist H_i(u, v) = unit * w^5.

Every splitting identity is verified by exact polynomial arithmetic.
"""

import contextlib
import itertools
import json
import math
import os
import pathlib
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from importlib import resources

import sympy as sp

from . import padic
from .algebra import (
    NFElement,
    NonMaximalOrderWarning,
    auxiliary_field,
    coefficient_field,
    residue_split,
)
from .bforms import BinaryForm, binary_resultant, edwards_triple, integer_fifth_root
from .search import AffinePoint, HyperellipticModel, InfinitePoint


class NoRationalRoots(Exception):
    pass


class SplitInconsistent(Exception):
    pass


class IdentityFailure(Exception):
    pass


class ReconstructionFailed(Exception):
    pass


class ContentNotClearable(Exception):
    pass


class BadUnitData(Exception):
    pass


class IndexRisk(Exception):
    pass


RATIONAL_SPLIT_INDICES = (1, 20, 25)
GAUSS_INDICES = (3, 4, 12, 17, 18, 27)
SEXTIC_INDICES = (5, 6, 8, 9, 13, 14, 15, 16, 21, 22, 23, 24)

# which labeled sextic field each index splits over
FIELD_REP = {5: 5, 9: 5, 13: 5, 6: 6, 23: 6, 8: 16, 14: 16, 16: 16,
             22: 22, 15: 24, 21: 24, 24: 24}

ROOT_PAIRS = {
    1: (BinaryForm(1, (0, 1)), BinaryForm(1, (1, 0))),      # u, v
    20: (BinaryForm(1, (0, 1)), BinaryForm(1, (1, 0))),     # u, v
    25: (BinaryForm(1, (-1, 1)), BinaryForm(1, (1, 1))),    # u-v, u+v
}


# ---------------------------------------------------------------------------
# Klein splitting and the genus-2 reduction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KleinSplit:
    l1: BinaryForm
    l2: BinaryForm
    A: Fraction
    B: Fraction
    C: Fraction
    scale: Fraction
    b11_observed: tuple  # ((B/11)^2, A*C), recorded, never asserted


def _substitute(F, m00, m01, m10, m11):
    """F(m00*s + m01*t, m10*s + m11*t) as a form in (s, t)."""
    lu = BinaryForm(1, (m01, m00))
    lv = BinaryForm(1, (m11, m10))
    d = F.degree
    out = BinaryForm(d, (Fraction(0),) * (d + 1))
    for k, c in enumerate(F.coeffs):
        if c:
            out = out + (lu**k * lv ** (d - k)).scale(c)
    return out


def _linear_parts(linear):
    """(a, b) with linear = a*u + b*v."""
    return linear.coeffs[1], linear.coeffs[0]


def klein_split(h, root_pair, field=None):
    """Split h = scale * l1 * l2 * (A l1^10 + B l1^5 l2^5 + C l2^10)."""
    l1, l2 = root_pair
    a1, b1 = _linear_parts(l1)
    a2, b2 = _linear_parts(l2)
    det = Fraction(a1) * b2 - Fraction(b1) * a2
    if det == 0:
        raise ValueError("root pair is degenerate")
    # coordinates (s, t) = (l1, l2); substitute the inverse map
    ht = _substitute(h, b2 / det, -b1 / det, -a2 / det, a1 / det)
    if ht.coeff(0) != 0 or ht.coeff(12) != 0:
        raise NoRationalRoots("designated linear forms do not divide h")
    for k in range(2, 11):
        if k != 6 and ht.coeff(k) != 0:
            raise SplitInconsistent(f"unexpected s^{k} t^{12 - k} term")
    raw = [Fraction(ht.coeff(11)), Fraction(ht.coeff(6)), Fraction(ht.coeff(1))]
    num = 0
    den = 1
    for c in raw:
        num = math.gcd(num, c.numerator)
        den = den * c.denominator // math.gcd(den, c.denominator)
    content = Fraction(num, den)
    scale = content if raw[0] > 0 else -content
    A, B, C = (c / scale for c in raw)
    rebuilt = (l1 * l2 * ((l1**10).scale(A) + (l1**5 * l2**5).scale(B)
                          + (l2**10).scale(C))).scale(scale)
    if any(Fraction(x) != Fraction(y) for x, y in zip(rebuilt.coeffs, h.coeffs)):
        raise SplitInconsistent("product identity failed")
    return KleinSplit(l1, l2, A, B, C, scale, ((B / 11) ** 2, A * C))


def rational_split(i):
    """Klein split of h_i for the three rational indices."""
    if i not in RATIONAL_SPLIT_INDICES:
        raise ValueError(f"i={i} has no rational Klein split")
    return klein_split(edwards_triple(i).h, ROOT_PAIRS[i])


def _absorbed(split):
    """(A', B', C') with -h = l1 l2 (A' l1^10 + B' l1^5 l2^5 + C' l2^10)."""
    s = -split.scale
    return split.A * s, split.B * s, split.C * s


def _cofactor_form(split):
    A2, B2, C2 = _absorbed(split)
    l1, l2 = split.l1, split.l2
    return ((l1**10).scale(A2) + (l1**5 * l2**5).scale(B2)
            + (l2**10).scale(C2)).map_coeffs(lambda c: int(Fraction(c)))


_FIFTH_POWERS_MOD25 = {0, 1, 7, 18, 24}


def alpha_candidates(i, split=None):
    """The finite set of twist scalars compatible with the local data.

    Candidates are signed {2,3}-smooth numbers with exponents below 5.  For
    each small prime the admissible exponent is read off from the valuation
    of the cofactor on the surviving residue classes; since the split only
    pins the parameter line up to the sign re-parameterisation
    (u, v) -> (u, -v), both presentations are profiled and the smaller
    exponent is kept.  A fifth-power-residue check mod 25 is applied last.
    """
    if i not in RATIONAL_SPLIT_INDICES:
        raise ValueError(f"i={i} is not one of the rational-split indices")
    if split is None:
        split = rational_split(i)
    support = set()
    for n in (split.scale.numerator, split.scale.denominator,
              int(binary_resultant(split.l1, split.l2))):
        support |= set(sp.factorint(abs(n)))
    support.discard(1)
    support = sorted(support)
    G = _cofactor_form(split)
    allowed = {}
    for p in (2, 3):
        if p not in support:
            continue
        classes = padic.sieve_residue_classes(i, p).classes
        mirrored = [padic.ResidueClass(c.unit_slot, c.modulus,
                                       (-c.residue) % c.modulus)
                    for c in classes]
        depth = padic.DEFAULT_DEPTH[p] + 3
        vals = set()
        for cover in (classes, mirrored):
            prof = padic.valuation_profile(G, p, cover, depth)
            vals |= {w % 5 for w, det in prof if det}
        allowed[p] = {min(vals)} if vals else set(range(5))
    classes25 = padic.five_adic_classes(i)
    pairs25 = [uv for cls in classes25 for uv in cls.pair_mod(25)]
    out = set()
    for exps in itertools.product(range(5), repeat=len(support)):
        cand = 1
        for p, e in zip(support, exps):
            cand *= p**e
        ok = True
        for p, e in zip(support, exps):
            if p in allowed and e % 5 not in allowed[p]:
                ok = False
        if not ok:
            continue
        inv = pow(cand, -1, 25)
        if not any(G.evaluate(u, v) * inv % 25 in _FIFTH_POWERS_MOD25
                   for (u, v) in pairs25):
            continue
        out.add(cand)
    return out


def _tenth_free(n):
    """(m, T) with n = m * T^10 and m free of 10th-power factors."""
    sign = -1 if n < 0 else 1
    T = 1
    for p, e in sp.factorint(abs(n)).items():
        T *= p ** (e // 10)
    return sign * (abs(n) // T**10), T


def _side_data(split, alpha):
    """Per-side reduction data: (lead, m, gamma, T, t_num, t_den)."""
    A2, B2, C2 = _absorbed(split)
    D = B2 * B2 - 4 * A2 * C2
    out = []
    for lead, t_num, t_den in ((A2, split.l1, split.l2),
                               (C2, split.l2, split.l1)):
        m = 4 * alpha * lead
        gamma, T = _tenth_free(int(m**4 * D))
        out.append((lead, m, gamma, T, t_num, t_den))
    return out, B2


def genus2_models(split, alpha):
    """The two reduced curves Y^2 = X^5 + gamma."""
    sides, _ = _side_data(split, alpha)
    return tuple(HyperellipticModel((g, 0, 0, 0, 0, 1))
                 for (_, _, g, _, _, _) in sides)


def _normalized_pair(u, v):
    u, v = Fraction(u), Fraction(v)
    den = u.denominator * v.denominator // math.gcd(u.denominator, v.denominator)
    iu, iv = int(u * den), int(v * den)
    g = math.gcd(iu, iv)
    if g:
        iu, iv = iu // g, iv // g
    if iu < 0 or (iu == 0 and iv < 0):
        iu, iv = -iu, -iv
    return iu, iv


def _fraction_fifth_root(x):
    x = Fraction(x)
    rn = integer_fifth_root(x.numerator)
    rd = integer_fifth_root(x.denominator)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)


def genus2_back_substitute(split, alpha, point):
    """(u, v) behind a point on one of the reduced curves, or None."""
    sides, B2 = _side_data(split, alpha)
    if isinstance(point, InfinitePoint):
        a2, b2 = _linear_parts(split.l2)
        return _normalized_pair(-b2, a2)
    X, Y = Fraction(point.x), Fraction(point.y)
    for lead, m, gamma, T, t_num, t_den in sides:
        if Y * Y != X**5 + gamma:
            continue
        Yo = Y * T**5 / m**2
        t = _fraction_fifth_root((Yo - B2) / (2 * lead))
        if t is None:
            return None  # the point does not lift
        an, bn = _linear_parts(t_num)
        ad, bd = _linear_parts(t_den)
        return _normalized_pair(-(bn - t * bd), an - t * ad)
    raise ValueError("point lies on neither reduced model")


# ---------------------------------------------------------------------------
# Gaussian descent
# ---------------------------------------------------------------------------

# per index: ascending (v^2, uv, u^2) coefficients of Re/Im, the scalars
# (gamma, alpha, beta), and the square-root form S
_GAUSS_TABLE = {
    3: ((1, 0, 3), (0, 0, 6), (3, 2, -1), (0, 6, 0)),
    4: ((1, 0, -3), (0, 0, 6), (3, 2, 1), (0, 6, 0)),
    12: ((2, 2, 2), (0, 0, -3), (-3, 2, 1), (0, 6, 3)),
    17: ((1, 0, 3), (-2, 0, 0), (-3, 2, 1), (0, 6, 0)),
    18: ((-1, 0, 3), (-2, 0, 0), (3, -2, 1), (0, 6, 0)),
    27: ((2, 2, 2), (1, -2, 1), (-3, -2, 1), (-3, 0, 3)),
}

# phi(1, X) and psi(1, X) from the fifth power (a + b i)^5, ascending in X
_PHI1 = (1, 0, -10, 0, 5)
_PSI1 = (0, 5, 0, -10, 0, 1)


@dataclass(frozen=True)
class GaussDescentData:
    i: int
    re: BinaryForm
    im: BinaryForm
    gamma: int
    alpha: int
    beta: int
    S: BinaryForm
    F: tuple  # ascending degree-10 coefficients
    M: HyperellipticModel
    quartic: BinaryForm       # re^2 + im^2, the rational quartic factor of h_i
    resultant: int            # Res(H, conj H) as a rational integer


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _gauss_F(i):
    re_c, im_c, (g, al, be), _ = _GAUSS_TABLE[i]
    inner = [al * x + be * y for x, y in
             zip(list(_PHI1) + [0], _PSI1)]
    return tuple(g * c for c in _poly_mul(inner, list(_PSI1)))


def _poly_divmod_frac(num, den):
    num = [Fraction(c) for c in num]
    den = [Fraction(c) for c in den]
    q = [Fraction(0)] * (len(num) - len(den) + 1)
    for k in range(len(q) - 1, -1, -1):
        q[k] = num[k + len(den) - 1] / den[-1]
        if q[k]:
            for j, d in enumerate(den):
                num[k + j] -= q[k] * d
    return q, num[:len(den) - 1]


def gauss_family(i):
    if i not in GAUSS_INDICES:
        raise ValueError(f"i={i} is not one of the Gaussian-descent indices")
    re_c, im_c, (g, al, be), s_c = _GAUSS_TABLE[i]
    re, im = BinaryForm(2, re_c), BinaryForm(2, im_c)
    S = BinaryForm(2, s_c)
    quartic = re * re + im * im
    h = edwards_triple(i).h
    if h.coeff(12) == 0:
        raise IdentityFailure("h has a root at infinity; quartic split invalid")
    quot, rem = _poly_divmod_frac(h.dehomogenize(), quartic.dehomogenize())
    if any(rem):
        raise IdentityFailure(f"re^2 + im^2 does not divide h_{i}")
    octic = BinaryForm(8, tuple(quot))
    if quartic * octic != h:
        raise IdentityFailure(f"quartic * octic != h_{i}")
    prehyper = (re.scale(al) + im.scale(be)) * im
    if prehyper.scale(g) != S * S:
        raise IdentityFailure(f"gamma (alpha Re + beta Im) Im != S^2 for i={i}")
    F = _gauss_F(i)
    # relation web among the six polynomials
    F4 = _gauss_F(4)
    web = {3: [-c * (-1) ** k for k, c in enumerate(F4)],
           4: list(F4),
           12: [-c for c in F4],
           17: [-c for c in F4],
           18: [c * (-1) ** k for k, c in enumerate(F4)],
           27: [-c * (-1) ** k for k, c in enumerate(F4)]}
    if list(F) != web[i]:
        raise IdentityFailure(f"F_{i} violates the relation web")
    G = auxiliary_field("gauss")
    H = BinaryForm(2, tuple(G.element([r, m]) for r, m in zip(re_c, im_c)))
    Hc = BinaryForm(2, tuple(G.element([r, -m]) for r, m in zip(re_c, im_c)))
    res = binary_resultant(H, Hc).as_rational()
    if res.denominator != 1:
        raise IdentityFailure("non-integral resultant")
    res = int(res)
    if set(sp.factorint(abs(res))) - {2, 3}:
        raise IdentityFailure(f"Res(H, conj H) = {res} not {{2,3}}-supported")
    return GaussDescentData(i, re, im, g, al, be, S, F,
                            HyperellipticModel(F), quartic, res)


@dataclass(frozen=True)
class GaussFiber:
    solutions: frozenset  # of (u, v)
    contradiction: str    # empty, or the impossible equation


_IM_DESC = {3: "6u^2", 4: "6u^2", 12: "-3u^2", 17: "-2v^2", 18: "-2v^2",
            27: "(u-v)^2"}


def _integer_quadratic_roots(a, b, c):
    """Integer roots of a x^2 + b x + c (a may be zero)."""
    if a == 0:
        if b == 0:
            return []
        return [-c // b] if c % b == 0 else []
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    r = math.isqrt(disc)
    if r * r != disc:
        return []
    out = []
    for s in (r, -r) if r else (0,):
        if (-b + s) % (2 * a) == 0:
            out.append((-b + s) // (2 * a))
    return sorted(set(out))


def _solve_pair(i, r, s):
    """Integer (u, v) with Re_i(u, v) = r and Im_i(u, v) = s, or None if the
    Im equation is already impossible."""
    re_c, im_c, _, _ = _GAUSS_TABLE[i]
    c2, c1, c0 = re_c[0], re_c[1], re_c[2]  # re = c0 u^2 + c1 uv + c2 v^2
    sols = set()
    if i in (3, 4, 12):       # im = c u^2
        c = im_c[2]
        if s % c or s // c < 0 or math.isqrt(s // c) ** 2 != s // c:
            return None
        for u in {math.isqrt(s // c), -math.isqrt(s // c)}:
            for v in _integer_quadratic_roots(c2, c1 * u, c0 * u * u - r):
                sols.add((u, v))
    elif i in (17, 18):       # im = c v^2
        c = im_c[0]
        if s % c or s // c < 0 or math.isqrt(s // c) ** 2 != s // c:
            return None
        for v in {math.isqrt(s // c), -math.isqrt(s // c)}:
            for u in _integer_quadratic_roots(c0, c1 * v, c2 * v * v - r):
                sols.add((u, v))
    else:                     # i = 27: im = (u - v)^2
        if s < 0 or math.isqrt(s) ** 2 != s:
            return None
        for d in {math.isqrt(s), -math.isqrt(s)}:
            for v in _integer_quadratic_roots(c0 + c1 + c2,
                                              2 * c0 * d + c1 * d,
                                              c0 * d * d - r):
                sols.add((v + d, v))
    return sols


def gauss_back_substitute(i, point):
    """Solve the two coefficient equations behind a rational point on M_i."""
    if i not in GAUSS_INDICES:
        raise ValueError(f"i={i} is not one of the Gaussian-descent indices")
    X, Y = Fraction(point[0]), Fraction(point[1])
    b, a = X.numerator, X.denominator
    G = auxiliary_field("gauss")
    z5 = G.element([a, b]) ** 5
    r0, i0 = z5.coords
    targets = [(r0, i0), (-r0, -i0), (-i0, r0), (i0, -r0)]
    solutions = set()
    im_failed = []
    for r, s in targets:
        got = _solve_pair(i, int(r), int(s))
        if got is None:
            im_failed.append(int(s))
        else:
            solutions |= got
    if solutions and Y == 0:
        # ramification fibers: the square-root form S vanishes there
        _, _, _, s_c = _GAUSS_TABLE[i]
        Sf = BinaryForm(2, s_c)
        for u, v in ((0, 1), (0, -1), (1, 0), (-1, 0), (1, 1), (1, -1),
                     (-1, 1), (-1, -1)):
            if Sf.evaluate(u, v) == 0:
                solutions.add((u, v))
    contradiction = ""
    if not solutions and len(im_failed) == 4 and len({abs(s) for s in im_failed}) == 1:
        contradiction = f"+-{abs(im_failed[0])} = {_IM_DESC[i]}"
    return GaussFiber(frozenset(solutions), contradiction)


# ---------------------------------------------------------------------------
# Descent over the real quadratic field of golden ratio
# ---------------------------------------------------------------------------

# (a + b sqrt5)^5 = P + Q sqrt5, ascending in a
_P5 = (0, 125, 0, 50, 0, 1)
_Q5 = (25, 0, 50, 0, 5, 0)


def _eps_power(j):
    """epsilon^j = c + d sqrt5 with epsilon = (1 + sqrt5)/2."""
    c, d = Fraction(1), Fraction(0)
    step = (Fraction(1, 2), Fraction(1, 2)) if j >= 0 else (Fraction(-1, 2),
                                                            Fraction(1, 2))
    for _ in range(abs(j)):
        c, d = c * step[0] + 5 * d * step[1], c * step[1] + d * step[0]
    return c, d


@dataclass(frozen=True)
class Sqrt5DescentData:
    j: int
    g1: BinaryForm
    g2: BinaryForm
    F: BinaryForm
    D: HyperellipticModel


def _check_sqrt5_identities(data):
    # epsilon^j (a + b sqrt5)^5 = g1 + g2 sqrt5, sampled exactly
    golden = auxiliary_field("golden")
    eps = golden.gen
    sqrt5 = 2 * eps - 1
    for a, b in ((1, 0), (0, 1), (2, -3), (-5, 4), (7, 11), (3, 2)):
        lhs = eps**data.j * (golden.from_int(a) + sqrt5 * b) ** 5
        rhs = (golden.from_int(0) + 1 * data.g1.evaluate(a, b)
               + sqrt5 * data.g2.evaluate(a, b))
        if lhs != rhs:
            raise IdentityFailure(f"unit-twisted fifth power mismatch, j={data.j}")
    # F factors through conjugate linear combinations over Q(sqrt(-5))
    K = auxiliary_field("sqrt-5")
    lam = K.element([Fraction(55, 27), Fraction(4, 27)])
    lamc = K.element([Fraction(55, 27), Fraction(-4, 27)])
    c1 = data.g1 + data.g2.map_coeffs(lambda c: -lam * c)
    c2 = data.g1 + data.g2.map_coeffs(lambda c: -lamc * c)
    prod = c1 * c2
    for k in range(11):
        if prod.coeff(k) != Fraction(data.F.coeff(k), 81):
            raise IdentityFailure("conjugate combination product != F/81")
    # the pulled-out square identity behind the construction
    G1 = BinaryForm(6, (1, 0, 0, Fraction(-55, 2), 0, 0, -5))
    G2 = BinaryForm(6, (0, 0, 0, Fraction(-27, 2), 0, 0, 0))
    lhs = (G1 * G1).scale(81) - (G1 * G2).scale(330) + (G2 * G2).scale(345)
    rhs = BinaryForm(12, (1, 0, 0, 0, 0, 0, 10, 0, 0, 0, 0, 0, 25)).scale(81)
    if any(Fraction(x) != Fraction(y) for x, y in zip(lhs.coeffs, rhs.coeffs)):
        raise IdentityFailure("square identity (9(v^6 + 5u^6))^2 failed")


_F0_PRINTED = (81, -1650, 16725, -99000, 395250, -1039500, 1961250,
               -2475000, 2128125, -1031250, 215625)  # descending in a


@lru_cache(maxsize=None)
def sqrt5_family(j):
    if j not in (-2, -1, 0, 1, 2):
        raise ValueError("j must be in -2..2")
    c, d = _eps_power(j)
    g1 = BinaryForm(5, tuple(c * p + 5 * d * q for p, q in zip(_P5, _Q5)))
    g2 = BinaryForm(5, tuple(c * q + d * p for p, q in zip(_P5, _Q5)))
    F = (g1 * g1).scale(81) - (g1 * g2).scale(330) + (g2 * g2).scale(345)
    if not all(Fraction(cf).denominator == 1 for cf in F.coeffs):
        raise IdentityFailure(f"F_{j} is not integral")
    F = F.map_coeffs(lambda cf: int(Fraction(cf)))
    if j == 0 and tuple(F.coeffs) != tuple(reversed(_F0_PRINTED)):
        raise IdentityFailure("F_0 disagrees with the printed coefficients")
    data = Sqrt5DescentData(j, g1, g2, F, HyperellipticModel(tuple(F.coeffs)))
    _check_sqrt5_identities(data)
    return data


@dataclass(frozen=True)
class Sqrt5Conclusion:
    values: frozenset    # attainable v^6 + 5 u^6
    solutions: frozenset  # coprime (u, v)


_GCD_SCALINGS = (Fraction(1, 2), Fraction(-1, 2), Fraction(1), Fraction(-1),
                 Fraction(3, 2), Fraction(-3, 2), Fraction(3), Fraction(-3))


def _fraction_square_root(x):
    x = Fraction(x)
    if x < 0:
        return None
    rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if rn * rn != x.numerator or rd * rd != x.denominator:
        return None
    return Fraction(rn, rd)


def sqrt5_conclude(points_by_j, d1_empty=False, d2_empty=False):
    """Turn the rational points of D_0, D_-1, D_-2 into coprime (u, v).

    The two remaining twists have no rational points at all; that fact is an
    imported input and must be acknowledged explicitly by the caller.
    """
    if not (d1_empty and d2_empty):
        raise ValueError("emptiness of the two positive twists must be "
                         "acknowledged explicitly (d1_empty=d2_empty=True)")
    values = set()
    for j, points in points_by_j.items():
        F = sqrt5_family(j).F
        for point in points:
            if isinstance(point, InfinitePoint):
                cands = [(lam, Fraction(0)) for lam in _GCD_SCALINGS]
            else:
                x = Fraction(point.x)
                cands = [(lam * x.numerator, lam * x.denominator)
                         for lam in _GCD_SCALINGS]
            for a, b in cands:
                s = _fraction_square_root(F.evaluate(a, b))
                if s is None:
                    continue
                val = s / 9
                if val.denominator == 1 and val > 0:
                    values.add(int(val))
    solutions = {(u, v)
                 for u in range(-4, 5) for v in range(-4, 5)
                 if math.gcd(u, v) == 1 and v**6 + 5 * u**6 in values}
    return Sqrt5Conclusion(frozenset(values), frozenset(solutions))


# ---------------------------------------------------------------------------
# Sextic splitting and the unit sieve
# ---------------------------------------------------------------------------

@dataclass
class SexticSplit:
    i: int
    field: object               # the coefficient NumberField
    q: BinaryForm               # monic quadratic u^2 + s uv + t v^2 over K
    H: BinaryForm               # primitive degree-10 form over O_K
    scalar: object              # K-element with h_i = scalar * q * H exactly
    res_norm: int               # |Norm(Res(q, H))|
    res_support: tuple          # rational primes in the norm
    primes_above_5: int         # how many primes above 5 divide the resultant
    flagged_primes: tuple       # factor-base primes skipped for index risk
    unit_class: tuple = None    # surviving unit class, filled by the sieve


@contextlib.contextmanager
def _suppress_order_warnings():
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonMaximalOrderWarning)
        yield


def _content_ideal_basis(coeffs, rep):
    """(basis matrix, ideal norm) of the O_K-content of a coefficient list.

    Columns of the returned 6x6 integer matrix are a Z-basis of the ideal
    generated by the coefficients, in integral-basis coordinates.
    """
    from sympy.matrices.normalforms import hermite_normal_form

    K = coefficient_field(rep)
    B, Binv = _maximal_order_basis(rep)
    order_basis = [K.element([Fraction(int(B[i, j].p), int(B[i, j].q))
                              for i in range(6)]) for j in range(6)]
    cols = []
    for c in coeffs:
        for beta in order_basis:
            w = c * beta
            v = Binv * sp.Matrix([sp.Rational(x.numerator, x.denominator)
                                  for x in w.coords])
            if any(q.q != 1 for q in v):
                raise ContentNotClearable(
                    "coefficient is not integral over the maximal order")
            cols.append([int(q) for q in v])
    M = hermite_normal_form(sp.Matrix(cols).T)
    if M.shape != (6, 6):
        raise ContentNotClearable("content module has deficient rank")
    return M, abs(int(M.det()))


def _ideal_generator(basis, norm, rep, bound=6):
    """Small element of the given ideal whose norm matches the ideal norm.

    In a field with trivial class group such an element generates the ideal,
    which certifies the division performed by the caller.
    """
    import numpy as np

    from sympy.polys.matrices import DomainMatrix

    K = coefficient_field(rep)
    B, _ = _maximal_order_basis(rep)
    # power-basis coords of the 6 ideal basis vectors
    P = B * sp.Matrix(basis)
    pb = [[Fraction(int(P[i, j].p), int(P[i, j].q)) for i in range(6)]
          for j in range(6)]
    roots = np.roots(np.array(list(reversed(K.min_poly)), dtype=float))
    pows = np.array([roots**k for k in range(6)])
    emb = np.array([[sum(complex(pb[j][i]) * pows[i, r] for i in range(6))
                     for r in range(6)] for j in range(6)])
    # LLL-reduce the lattice (scaled embedding, with an identity block to
    # recover the unimodular transform) so small coordinates suffice below
    real = np.hstack([emb.real, emb.imag])
    scale = float(2**24) / max(1.0, np.abs(real).max())
    A = sp.Matrix(np.rint(real * scale).astype(object))
    M = A.row_join(sp.eye(6))
    red = DomainMatrix.from_Matrix(M).convert_to(sp.ZZ).lll().to_Matrix()
    U = red[:, 12:]
    pb = [[sum(Fraction(int(U[j, k])) * pb[k][i] for k in range(6))
           for i in range(6)] for j in range(6)]
    emb = np.array([[sum(complex(pb[j][i]) * pows[i, r] for i in range(6))
                     for r in range(6)] for j in range(6)])
    rng = np.arange(-bound, bound + 1)
    grids = np.meshgrid(*[rng] * 6, indexing="ij")
    coords = np.stack([g.ravel() for g in grids], axis=1)
    absn = np.abs(np.prod(coords.astype(complex) @ emb, axis=1))
    close = np.where(np.abs(np.log(np.maximum(absn, 1e-300)) - math.log(norm))
                     < 1e-6)[0]
    best = None
    for idx in close:
        c = coords[idx]
        pc = [sum(Fraction(int(c[j])) * pb[j][k] for j in range(6))
              for k in range(6)]
        g = K.element(pc)
        n = g.norm()
        if n.denominator == 1 and abs(int(n)) == norm:
            size = max(abs(int(x)) for x in c)
            if best is None or size < best[0]:
                best = (size, g)
    if best is None:
        raise ContentNotClearable(
            f"no generator of norm {norm} found within bound {bound}")
    return best[1]


def _primitive_part(coeffs, rep):
    """Scale O_K coefficients to a primitive list; returns (coeffs, divisor).

    First clears rational denominators and content, then removes the residual
    content ideal by dividing through a norm-certified generator.
    """
    den, num = 1, 0
    for c in coeffs:
        for x in c.coords:
            den = den * x.denominator // math.gcd(den, x.denominator)
    for c in coeffs:
        for x in c.coords:
            num = math.gcd(num, int(x * den))
    from sympy.matrices.normalforms import hermite_normal_form

    out = [c * Fraction(den, num) for c in coeffs]
    divisor = Fraction(num, den)
    for _ in range(24):
        basis, n_ideal = _content_ideal_basis(out, rep)
        if n_ideal == 1:
            return out, divisor
        fac = sp.factorint(n_ideal)
        if len(fac) > 1:
            # peel one rational prime at a time: I + pO has norm a power of p
            p = min(fac)
            basis = hermite_normal_form(
                sp.Matrix.hstack(sp.Matrix(basis), p * sp.eye(6)))
            n_ideal = abs(int(basis.det()))
        g = _ideal_generator(basis, n_ideal, rep)
        ginv = g.inverse()
        out = [c * ginv for c in out]
        if not all(_is_order_integral(c, rep) for c in out):
            raise ContentNotClearable("content generator does not divide")
        divisor = g * divisor
    raise ContentNotClearable("content removal did not terminate")


@lru_cache(maxsize=None)
def sextic_split(i):
    from .algebra import factor_nf

    if i not in SEXTIC_INDICES:
        raise ValueError(f"i={i} is not one of the sextic-split indices")
    K = coefficient_field(FIELD_REP[i])
    h = edwards_triple(i).h
    if h.coeff(12) == 0:
        raise ReconstructionFailed("h has a root at infinity")
    content, factors = factor_nf(h.dehomogenize(), K)
    by_deg = {len(f) - 1: f for f, m in factors}
    if sorted(len(f) - 1 for f, _ in factors) != [2, 10] or \
            any(m != 1 for _, m in factors):
        raise ReconstructionFailed(
            f"unexpected factorization degrees for h_{i} over {K.label}")
    qm, Hm = by_deg[2], by_deg[10]
    with _suppress_order_warnings():
        Hc, _removed = _primitive_part(Hm, FIELD_REP[i])
    q_form = BinaryForm(2, (qm[0], qm[1], K.one))
    H_form = BinaryForm(10, tuple(Hc))
    scalar = Fraction(h.coeff(12)) * H_form.coeff(10).inverse()
    rebuilt = (q_form * H_form).map_coeffs(lambda c: c * scalar)
    for x, y in zip(rebuilt.coeffs, h.coeffs):
        if x != y:
            raise SplitInconsistent(f"q * H does not rebuild h_{i}")
    # factor-base primitivity certificate
    flagged = []
    with _suppress_order_warnings():
        for p in sp.primerange(2, 101):
            rs = residue_split(K, p)
            if rs.index_risk:
                flagged.append(p)
                continue
            for j in range(len(rs.residue_fields)):
                if all(rs.residue_fields[j].is_zero(rs.reduce(c, j))
                       for c in H_form.coeffs):
                    raise ContentNotClearable(
                        f"H_{i} has residual content at a prime above {p}")
        q_int = q_form.map_coeffs(lambda c: c * scalar)
        res = binary_resultant(q_int, H_form)
        res_norm = res.norm()
        if res_norm.denominator != 1:
            raise SplitInconsistent("non-integral resultant norm")
        res_norm = abs(int(res_norm))
        support = tuple(sorted(sp.factorint(res_norm)))
        if set(support) - {2, 3, 5}:
            raise IdentityFailure(
                f"Res(q_{i}, H_{i}) supported outside 2, 3, 5: {support}")
        rs5 = residue_split(K, 5)
        above5 = sum(1 for j in range(len(rs5.residue_fields))
                     if rs5.residue_fields[j].is_zero(rs5.reduce(res, j)))
    return SexticSplit(i, K, q_form, H_form, scalar, res_norm, support,
                       above5, tuple(flagged))


@lru_cache(maxsize=None)
def _maximal_order_basis(rep):
    """(B, B^-1) where B's columns are an integral basis in power coords."""
    from sympy.abc import x
    from sympy.polys.numberfields.basis import round_two

    K = coefficient_field(rep)
    T = sp.Poly(list(reversed(K.min_poly)), x)
    ZK, _ = round_two(T)
    B = ZK.QQ_matrix.to_Matrix()
    return B, B.inv()


def _maximal_order_basis_inverse(rep):
    return _maximal_order_basis(rep)[1]


def _is_order_integral(elem, rep):
    if elem.is_integral:
        return True
    v = _maximal_order_basis_inverse(rep) * sp.Matrix(
        [sp.Rational(c.numerator, c.denominator) for c in elem.coords])
    return all(q.q == 1 for q in v)


def load_unit_data(rep):
    text = None
    base = os.environ.get("GFE_DATA_DIR")
    if base:
        for rel in (f"units/K{rep}.json", f"K{rep}.json"):
            path = pathlib.Path(base) / rel
            if path.is_file():
                text = path.read_text()
                break
    if text is None:
        text = resources.files("gfe25").joinpath(
            f"data/units/K{rep}.json").read_text()
    raw = json.loads(text)
    K = coefficient_field(rep)
    gens = [K.element([Fraction(c) for c in row]) for row in raw["generators"]]
    return gens, list(raw["certPrimes"])


def _rank_mod5(rows):
    rows = [list(r) for r in rows]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] % 5), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, 5)
        rows[rank] = [c * inv % 5 for c in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] % 5:
                f = rows[r][col]
                rows[r] = [(c - f * d) % 5 for c, d in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def _class_vector(elem, splits):
    """Fifth-power classes of a nowhere-vanishing element at all slots with
    residue field of order = 1 mod 5."""
    vec = []
    for rs in splits:
        for j, fq in enumerate(rs.residue_fields):
            if fq.q % 5 != 1:
                continue
            img = rs.reduce(elem, j)
            if fq.is_zero(img):
                return None
            vec.append(fq.fifth_power_class(img))
    return vec


def verify_unit_data(rep, gens=None, cert_primes=None):
    """Exact norm/integrality checks plus an independence certificate."""
    if gens is None:
        gens, cert_primes = load_unit_data(rep)
    if len(gens) != 3:
        raise BadUnitData("need exactly three generators")
    for g in gens:
        if g.norm() not in (1, -1):
            raise BadUnitData(f"generator {g!r} is not a unit")
        if not _is_order_integral(g, rep):
            raise BadUnitData(f"generator {g!r} is not an algebraic integer")
    with _suppress_order_warnings():
        K = coefficient_field(rep)
        splits = [residue_split(K, q) for q in cert_primes]
    rows = [_class_vector(g, splits) for g in gens]
    if any(r is None for r in rows) or _rank_mod5(rows) != 3:
        raise BadUnitData("independence certificate failed at the "
                          f"certification primes {cert_primes}")
    return gens


def _pol_mul(a, b, m):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % m
    return out


def _pol_divmod(a, b, m):
    """(quotient, remainder) of a by monic b, coefficients mod m."""
    a = [x % m for x in a]
    db = len(b) - 1
    q = [0] * max(1, len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % m
    return q, a[:db]


def _pol_bezout(f, g, p):
    """(a, b) with a*f + b*g = 1 over F_p for coprime f, g (ascending)."""
    x = sp.Symbol("x")
    F = sp.Poly(list(reversed(f)), x, modulus=p)
    G = sp.Poly(list(reversed(g)), x, modulus=p)
    a, b, h = F.gcdex(G)
    if h.degree() != 0:
        raise IndexRisk("local factors are not coprime")
    inv = pow(int(h.all_coeffs()[0]), -1, p)
    pa = [int(c) * inv % p for c in reversed(a.all_coeffs())] or [0]
    pb = [int(c) * inv % p for c in reversed(b.all_coeffs())] or [0]
    return pa, pb


def _hensel_lift(T, g, p, k):
    """Monic factor of T mod p**k reducing to the monic factor g of T mod p."""
    q, r = _pol_divmod(T, g, p)
    if any(r):
        raise IndexRisk("factor does not divide mod p")
    c = q
    a, b = _pol_bezout(g, c, p)
    G, C = [x % p for x in g], [x % p for x in c]
    for m in range(1, k):
        pm, pm1 = p**m, p**(m + 1)
        prod = _pol_mul(G, C, pm1)
        E = [0] * len(T)
        for idx in range(len(T)):
            diff = (T[idx] - (prod[idx] if idx < len(prod) else 0)) % pm1
            E[idx] = diff // pm
        qq, dG = _pol_divmod(_pol_mul(b, E, p), g, p)
        dC = [x % p for x in _pol_mul(a, E, p)]
        qc = _pol_mul(qq, c, p)
        size = max(len(dC), len(qc))
        dC = [( (dC[idx] if idx < len(dC) else 0)
               + (qc[idx] if idx < len(qc) else 0)) % p for idx in range(size)]
        G = [(G[idx] if idx < len(G) else 0)
             + pm * (dG[idx] if idx < len(dG) else 0) for idx in range(len(g))]
        C = [(C[idx] if idx < len(C) else 0)
             + pm * (dC[idx] if idx < len(dC) else 0)
             for idx in range(max(len(C), len(dC)))]
    return [x % p**k for x in G]


def _local_targets(split, rs, p, depth):
    """Fifth-power-class vectors of H at the points of P^1(Z_p), refined.

    Returns a list of per-slot tuples with entries in 0..4 (class of the unit
    part of H at that slot), or None when the valuation stayed undetermined at
    the cutoff depth.  Points where some local valuation of H is visibly not
    divisible by 5 are dropped entirely.
    """
    K = split.field
    T = [int(c) for c in K.min_poly]
    pk = p**depth
    slots = list(range(len(rs.residue_fields)))
    lifted = [_hensel_lift(T, list(rs.factors[j][0]), p, depth) for j in slots]

    def red_coeff(c, j):
        out = [0] * 6
        for m, x in enumerate(c.coords):
            out[m] = x.numerator * pow(x.denominator, -1, pk) % pk
        _, r = _pol_divmod(out, lifted[j], pk)
        return r

    hred = [[red_coeff(c, j) for j in slots] for c in split.H.coeffs]

    def profile(u, v, level):
        """Per-slot (valuation, class-or-None) at precision p**level."""
        pl = p**level
        out = []
        for j in slots:
            f = len(lifted[j]) - 1
            acc = [0] * f
            for m in range(11):
                s = pow(u, m, pl) * pow(v, 10 - m, pl) % pl
                if s:
                    cj = hred[m][j]
                    for t in range(f):
                        acc[t] = (acc[t] + s * cj[t]) % pl
            val = level
            for x in acc:
                if x:
                    val = min(val, max(w for w in range(level + 1)
                                       if x % p**w == 0))
            if val >= level:
                out.append((level, None))
            elif val % 5:
                return None
            else:
                fq = rs.residue_fields[j]
                cls = fq.fifth_power_class(
                    fq.element([(x // p**val) % p for x in acc]))
                out.append((val, cls))
        return out

    targets = set()

    def visit(u, v, kind, level):
        prof = profile(u, v, level)
        if prof is None:
            return
        if all(c is not None for _, c in prof) or level == depth:
            targets.add(tuple(c for _, c in prof))
            return
        pl = p**level
        for s in range(p):
            if kind == "affine":
                visit(u + pl * s, v, kind, level + 1)
            else:
                visit(u, v + pl * s, kind, level + 1)

    for t in range(p):
        visit(t, 1, "affine", 1)
    visit(1, 0, "inf", 1)
    return targets


#: default sieve primes: the primes p = 1 mod 5 below 700, where every
#: residue field above p carries nontrivial fifth-power classes
DEFAULT_SIEVE_PRIMES = tuple(p for p in sp.primerange(7, 700) if p % 5 == 1)


def unit_sieve(i, unit_gens=None, primes=DEFAULT_SIEVE_PRIMES, use_mod25=True,
               depth=3):
    """Surviving subset of the 125 unit classes twisting H_i(u, v) = w^5."""
    split = sextic_split(i)
    rep = FIELD_REP[i]
    K = split.field
    if unit_gens is None:
        gens = verify_unit_data(rep)
    else:
        gens = verify_unit_data(rep, list(unit_gens), list(primes))
    disc = K.discriminant()
    survivors = set(itertools.product(range(5), repeat=3))
    for p in primes:
        if p <= 5 or disc % p == 0:
            raise IndexRisk(f"sieve prime {p} divides the field data")
        with _suppress_order_warnings():
            rs = residue_split(K, p)
        nslots = len(rs.residue_fields)
        active = [j for j in range(nslots)
                  if rs.residue_fields[j].q % 5 == 1]
        gen_classes = []
        for g in gens:
            gen_classes.append([rs.residue_fields[j].fifth_power_class(
                rs.reduce(g, j)) if j in active else 0 for j in range(nslots)])
        targets = _local_targets(split, rs, p, depth)
        alive = set()
        for e in survivors:
            evec = [sum(e[k] * gen_classes[k][j] for k in range(3)) % 5
                    for j in range(nslots)]
            for t in targets:
                if all(t[j] is None or j not in active or t[j] == evec[j]
                       for j in range(nslots)):
                    alive.add(e)
                    break
        survivors &= alive
    if use_mod25:
        T = [int(c) for c in K.min_poly]
        B, _ = _maximal_order_basis(rep)
        if any(int(B[a, b].q) % 5 == 0 for a in range(6) for b in range(6)):
            raise IndexRisk("5 divides the order index; "
                            "mod-25 pass unavailable")

        def red25(e):
            return [x.numerator * pow(x.denominator, -1, 25) % 25
                    for x in e.coords]

        def mul25(a, b):
            _, r = _pol_divmod(_pol_mul(a, b, 25), T, 25)
            return r + [0] * (6 - len(r))

        fifths = _fifth_powers_mod25(rep)
        pairs = [(u, 1) for u in range(25)] + [(1, 5 * t) for t in range(5)]
        hvals = [red25(split.H.evaluate(K.from_int(u), K.from_int(v)))
                 for u, v in pairs]
        kept = set()
        for e in survivors:
            eta = gens[0] ** e[0] * gens[1] ** e[1] * gens[2] ** e[2]
            inv25 = red25(eta.inverse())
            if any(tuple(mul25(hv, inv25)) in fifths for hv in hvals):
                kept.add(e)
        survivors = kept
    return sorted(survivors)


@lru_cache(maxsize=None)
def _fifth_powers_mod25(rep):
    """All fifth powers in O/25O; (a + 5b)^5 = a^5 mod 25, so the bases only
    need to run over O/5O."""
    K = coefficient_field(rep)
    T = [int(c) for c in K.min_poly]

    def mul(a, b):
        _, r = _pol_divmod(_pol_mul(a, b, 25), T, 25)
        return r + [0] * (6 - len(r))

    out = set()
    for base in itertools.product(range(5), repeat=6):
        w = list(base)
        w2 = mul(w, w)
        out.add(tuple(mul(mul(w2, w2), w)))
    return out


def class_unit(rep, exponents):
    """The unit representing a sieve class."""
    gens, _ = load_unit_data(rep)
    out = coefficient_field(rep).one
    for g, e in zip(gens, exponents):
        out = out * g**e
    return out
