"""Number fields, exact element arithmetic, and polynomial factorization.

Factorization over F_p, Q, and number fields is delegated to sympy; elements
of the fields themselves use a small exact power-basis representation (tuples
of Fractions over Z[theta]) that is cheap enough for the inner descent loops.

Polynomials at this module's boundaries are ascending coefficient lists.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

import mpmath
import sympy as sp

_X = sp.symbols("x")


class ZeroInput(Exception):
    pass


class ShiftExhausted(Exception):
    pass


class PrecisionExhausted(Exception):
    pass


class NonMaximalOrderWarning(UserWarning):
    pass


# ---------------------------------------------------------------------------
# exact univariate polynomial helpers over Fraction (ascending lists)

def _ptrim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _padd(a, b):
    n = max(len(a), len(b))
    return _ptrim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                   for i in range(n)])


def _pmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ptrim(out)


def _pdivmod(a, b):
    a = [Fraction(x) for x in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    inv = Fraction(1) / b[-1]
    while len(a) >= len(b) and _ptrim(list(a)):
        a = _ptrim(a)
        if len(a) < len(b):
            break
        c = a[-1] * inv
        d = len(a) - len(b)
        q[d] = c
        for i, y in enumerate(b):
            a[i + d] -= c * y
        a = _ptrim(a)
    return _ptrim(q), a


def _pgcdext(a, b):
    """Extended gcd over Q[x]: returns (g, s, t) with s*a + t*b = g."""
    r0, r1 = [Fraction(x) for x in a], [Fraction(x) for x in b]
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while _ptrim(list(r1)):
        q, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _padd(s0, [-c for c in _pmul(q, s1)])
        t0, t1 = t1, _padd(t0, [-c for c in _pmul(q, t1)])
    return r0, s0, t0


# ---------------------------------------------------------------------------

class NumberField:
    """Q[x]/(min_poly) with the power basis of theta = x."""

    def __init__(self, min_poly, label=""):
        self.min_poly = tuple(int(c) for c in min_poly)
        if self.min_poly[-1] != 1:
            raise ValueError("minimal polynomial must be monic")
        self.label = label or f"deg{len(self.min_poly) - 1}"
        self.degree = len(self.min_poly) - 1
        # x^n reduced: x^n = -(lower part)
        self._xn = tuple(-Fraction(c) for c in self.min_poly[:-1])
        self._roots_cache = {}

    def __repr__(self):
        return f"NumberField({self.label})"

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.min_poly == other.min_poly

    def __hash__(self):
        return hash(self.min_poly)

    # -- elements ----------------------------------------------------------
    def element(self, coords):
        coords = list(coords) + [0] * (self.degree - len(list(coords)))
        return NFElement(self, tuple(Fraction(c) for c in coords[:self.degree]))

    @property
    def zero(self):
        return self.element([])

    @property
    def one(self):
        return self.element([1])

    @property
    def gen(self):
        return self.element([0, 1])

    def from_int(self, n):
        return self.element([n])

    # -- invariants --------------------------------------------------------
    @property
    def sympy_poly(self):
        return sp.Poly(list(reversed(self.min_poly)), _X)

    def is_irreducible(self):
        _, facs = factor_q(self.min_poly)
        return len(facs) == 1 and facs[0][1] == 1

    @lru_cache(maxsize=None)
    def discriminant(self):
        return int(sp.discriminant(self.sympy_poly.as_expr(), _X))

    def sympy_gen(self):
        # any fixed root works; factorization data is root-independent
        return sp.CRootOf(self.sympy_poly.as_expr(), 0)

    # -- numerics ----------------------------------------------------------
    def embeddings(self, prec_bits=256):
        """Complex roots of min_poly at the given precision, in a fixed order."""
        if prec_bits in self._roots_cache:
            return self._roots_cache[prec_bits]
        with mpmath.workprec(prec_bits):
            roots = mpmath.polyroots([mpmath.mpf(c) for c in reversed(self.min_poly)],
                                     maxsteps=200, extraprec=prec_bits)
            roots = sorted(roots, key=lambda z: (mpmath.nstr(z.real, 20),
                                                 mpmath.nstr(z.imag, 20)))
        self._roots_cache[prec_bits] = roots
        return roots


@dataclass(frozen=True)
class NFElement:
    field: NumberField
    coords: tuple  # Fractions, length = field degree, ascending powers of theta

    # -- ring ops ----------------------------------------------------------
    def _wrap(self, coords):
        return NFElement(self.field, tuple(coords))

    def __add__(self, other):
        other = self._coerce(other)
        return self._wrap(a + b for a, b in zip(self.coords, other.coords))

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-a for a in self.coords)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def _coerce(self, other):
        if isinstance(other, NFElement):
            if other.field != self.field:
                raise ValueError("mixed fields")
            return other
        return self.field.element([other])

    def __mul__(self, other):
        other = self._coerce(other)
        n = self.field.degree
        prod = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    prod[i + j] += a * b
        # reduce powers >= n using x^n = field._xn
        xn = self.field._xn
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if c:
                prod[k] = Fraction(0)
                for j, r in enumerate(xn):
                    prod[k - n + j] += c * r
        return self._wrap(prod[:n])

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("zero element")
        m = [Fraction(c) for c in self.field.min_poly]
        a = _ptrim([Fraction(c) for c in self.coords])
        g, _s, t = _pgcdext(m, a)
        if len(g) != 1:
            raise ZeroDivisionError("element not invertible (reducible modulus?)")
        inv = [c / g[0] for c in t]
        _, rem = _pdivmod(inv, m)
        return self.field.element(rem)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.field.one
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- predicates --------------------------------------------------------
    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.element([other])
        return isinstance(other, NFElement) and self.field == other.field \
            and self.coords == other.coords

    def __hash__(self):
        return hash((self.field, self.coords))

    @property
    def is_integral(self):
        """Lies in Z[theta] (all power-basis coordinates integers)."""
        return all(c.denominator == 1 for c in self.coords)

    def is_rational(self):
        return not any(self.coords[1:])

    def as_rational(self):
        if not self.is_rational():
            raise ValueError("not rational")
        return self.coords[0]

    # -- invariants --------------------------------------------------------
    def norm(self):
        """Field norm down to Q (resultant of min_poly and the element)."""
        m = sp.Poly(list(reversed(self.field.min_poly)), _X)
        e = sp.Poly([sp.Rational(c.numerator, c.denominator)
                     for c in reversed(self.coords)], _X)
        if e.is_zero:
            return Fraction(0)
        r = sp.resultant(m, e)
        q = sp.Rational(r)
        return Fraction(int(q.p), int(q.q))

    def embed(self, root):
        acc = mpmath.mpf(0)
        powv = mpmath.mpf(1) if not isinstance(root, mpmath.mpc) else mpmath.mpc(1)
        for c in self.coords:
            if c:
                acc = acc + powv * mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator)
            powv = powv * root
        return acc

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coords):
            if c:
                terms.append(f"{c}" if i == 0 else (f"{c}*t^{i}" if i > 1 else f"{c}*t"))
        return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# named fields

@lru_cache(maxsize=None)
def _fields_data():
    text = resources.files("gfe25").joinpath("data/fields.json").read_text()
    return json.loads(text)


@lru_cache(maxsize=None)
def coefficient_field(i):
    """The sextic coefficient field attached to the degree-10 residual form i.

    The twelve irreducible-over-Q(sqrt5) rows share five fields; this maps a
    representative index i in {5, 6, 16, 22, 24} to its field.
    """
    data = _fields_data()["sextics"]
    return NumberField(data[str(i)], label=f"K{i}")


@lru_cache(maxsize=None)
def auxiliary_field(name):
    """'gauss' = Q(i), 'golden' = Q(sqrt5) with integral golden-ratio basis,
    'sqrt5' = Q(sqrt5) pure-radical basis, 'sqrt-5' = Q(sqrt(-5))."""
    return NumberField(_fields_data()["auxiliary"][name], label=name)


# ---------------------------------------------------------------------------
# factorization (sympy-backed)

def _to_sympy_q(coeffs):
    return sp.Poly([sp.Rational(Fraction(c).numerator, Fraction(c).denominator)
                    for c in reversed(list(coeffs))], _X)


def _from_sympy_z(poly):
    return [int(c) for c in reversed(poly.all_coeffs())]


def factor_fp(coeffs, p):
    """Factor over F_p.  Returns (leading unit mod p, [(ascending coeffs, mult)])."""
    P = sp.Poly([int(c) % p for c in reversed(list(coeffs))], _X, modulus=p)
    lead, facs = P.factor_list()
    out = [([int(c) % p for c in reversed(f.all_coeffs())], m) for f, m in facs]
    return int(lead) % p, out


def factor_q(coeffs):
    """Factor over Q.  Returns (rational content, [(primitive integer factor, mult)])."""
    P = _to_sympy_q(coeffs)
    content, facs = P.factor_list()
    q = sp.Rational(content)
    return Fraction(int(q.p), int(q.q)), [(_from_sympy_z(f), m) for f, m in facs]


def _anp_to_nf(anp, K):
    desc = anp.to_list()
    coords = [Fraction(int(c.numerator), int(c.denominator)) for c in reversed(desc)]
    return K.element(coords)


def _nf_coeff_to_sympy(c, gen):
    if isinstance(c, NFElement):
        expr = sp.Integer(0)
        for k, a in enumerate(c.coords):
            if a:
                expr += sp.Rational(a.numerator, a.denominator) * gen**k
        return expr
    c = Fraction(c)
    return sp.Rational(c.numerator, c.denominator)


def factor_nf(coeffs, K):
    """Factor over the number field K.  Coefficients may be rational numbers or
    NFElements of K.  Returns (leading NFElement, [(list of NFElement coeffs
    ascending, mult)]); factors are monic."""
    gen = K.sympy_gen()
    expr = sp.Integer(0)
    for k, c in enumerate(coeffs):
        expr += _nf_coeff_to_sympy(c, gen) * _X**k
    P = sp.Poly(expr, _X, extension=sp.AlgebraicNumber(gen))
    content, facs = P.factor_list()
    lead = _expr_to_nf(content, K, gen)
    out = []
    for f, m in facs:
        lst = f.rep.to_list()  # descending ANP coefficients
        nf_coeffs = [_anp_to_nf(a, K) for a in reversed(lst)]
        out.append((nf_coeffs, m))
    return lead, out


def _expr_to_nf(expr, K, gen):
    poly = sp.Poly(sp.expand(expr), gen) if expr.has(gen) else None
    if poly is None:
        q = sp.Rational(expr)
        return K.element([Fraction(int(q.p), int(q.q))])
    coords = [sp.Rational(c) for c in reversed(poly.all_coeffs())]
    return K.element([Fraction(int(c.p), int(c.q)) for c in coords])


def factorization_type(i, field="Q"):
    """Degree multiset of h_i over Q or Q(sqrt5), homogeneous convention
    (the 12 - deg(h_i(x,1)) roots at infinity count as linear factors)."""
    from .bforms import edwards_triple

    h = edwards_triple(i).h
    coeffs = list(h.coeffs)         # ascending in u; h(x, 1) has these coeffs
    degrees = []
    d = len(_ptrim([Fraction(c) for c in coeffs])) - 1
    degrees.extend([1] * (12 - d))  # linear factors at infinity
    if field == "Q":
        _, facs = factor_q(coeffs[:d + 1])
        for f, m in facs:
            degrees.extend([len(f) - 1] * m)
    elif field in ("Q(sqrt5)", "sqrt5", "golden"):
        K = auxiliary_field("golden")
        _, facs = factor_nf(coeffs[:d + 1], K)
        for f, m in facs:
            degrees.extend([len(f) - 1] * m)
    else:
        raise ValueError(f"unsupported field {field!r}")
    return sorted(degrees)


# ---------------------------------------------------------------------------
# residue fields

class Fq:
    """F_{p^f} = F_p[y]/(g) with elements as tuples of ints (ascending)."""

    def __init__(self, p, modpoly):
        self.p = p
        self.modpoly = tuple(int(c) % p for c in modpoly)
        self.f = len(self.modpoly) - 1
        self.q = p**self.f

    def element(self, coeffs):
        c = [int(x) % self.p for x in coeffs][:self.f]
        return tuple(c + [0] * (self.f - len(c)))

    @property
    def zero(self):
        return self.element([])

    @property
    def one(self):
        return self.element([1])

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def mul(self, a, b):
        p = self.p
        prod = [0] * (2 * self.f - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # reduce
        for k in range(2 * self.f - 2, self.f - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for j in range(self.f):
                    prod[k - self.f + j] = (prod[k - self.f + j]
                                            - c * self.modpoly[j]) % p
        return tuple(prod[:self.f])

    def pow(self, a, e):
        out = self.one
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def is_zero(self, a):
        return not any(a)

    def fifth_power_class(self, a):
        """0..4; 0 iff a is a fifth power in F_q^x.  Trivial when q != 1 mod 5."""
        if self.is_zero(a):
            raise ZeroInput("fifth_power_class of zero")
        if (self.q - 1) % 5 != 0:
            return 0
        chi = self.pow(a, (self.q - 1) // 5)
        gen = self._mu5_generator()
        acc = self.one
        for k in range(5):
            if chi == acc:
                return k
            acc = self.mul(acc, gen)
        raise ArithmeticError("exponent test failed to land in mu_5")

    @lru_cache(maxsize=None)
    def _mu5_generator(self):
        # deterministic scan for an element of exact order 5
        count = 0
        for trial in _element_scan(self):
            count += 1
            if count > 10000:
                break
            if self.is_zero(trial):
                continue
            g = self.pow(trial, (self.q - 1) // 5)
            if g != self.one:
                return g
        raise ArithmeticError("no fifth-power-class generator found")

    def __hash__(self):
        return hash((self.p, self.modpoly))

    def __eq__(self, other):
        return isinstance(other, Fq) and (self.p, self.modpoly) == (other.p, other.modpoly)


def _element_scan(fq):
    # (1,0,..), (2,0,..), ..., then add the generator y, y+1, ...
    for a in range(1, fq.p):
        yield fq.element([a])
    if fq.f > 1:
        for a in range(0, fq.p):
            for b in range(1, fq.p):
                yield fq.element([a, b])
        for a in range(0, fq.p):
            for b in range(0, fq.p):
                for c in range(1, fq.p):
                    if fq.f > 2:
                        yield fq.element([a, b, c])


def fifth_power_class(x, fq):
    return fq.fifth_power_class(x)


@dataclass
class ResidueSplit:
    field: NumberField
    p: int
    factors: list       # [(ascending F_p coeffs of the local factor, e)]
    residue_fields: list  # Fq per factor
    ramified: bool
    index_risk: bool    # p^2 | disc(min_poly): possible index divisor

    def reduce(self, elem, j):
        """Image of an integral NFElement in residue field j."""
        fq = self.residue_fields[j]
        g = self.factors[j][0]
        p = self.p
        coeffs = []
        for c in elem.coords:
            if c.denominator % p == 0:
                raise ValueError("denominator not invertible mod p")
            coeffs.append(c.numerator * pow(c.denominator, -1, p) % p)
        # reduce the power-basis polynomial mod (p, g)
        acc = list(coeffs)
        f = len(g) - 1
        for k in range(len(acc) - 1, f - 1, -1):
            c = acc[k]
            if c:
                acc[k] = 0
                for j2 in range(f):
                    acc[k - f + j2] = (acc[k - f + j2] - c * g[j2]) % p
        return fq.element(acc[:f])


def residue_split(K, p):
    import warnings

    disc = K.discriminant()
    index_risk = disc % (p * p) == 0
    if index_risk:
        warnings.warn(f"p={p} may divide the index [O_K : Z[theta]] "
                      f"(p^2 | disc)", NonMaximalOrderWarning)
    lead, facs = factor_fp(K.min_poly, p)
    factors = []
    fields = []
    ramified = False
    for f, e in facs:
        monic = _monic_mod(f, p)
        factors.append((monic, e))
        fields.append(Fq(p, monic))
        if e > 1:
            ramified = True
    assert sum((len(f) - 1) * e for f, e in factors) == K.degree
    return ResidueSplit(K, p, factors, fields, ramified, index_risk)


def _monic_mod(f, p):
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


# ---------------------------------------------------------------------------
# fifth roots in number fields

_PREC_LADDER = (64, 256, 1024)


def _conjugation_structure(roots):
    """Partition embedding indices into reals and conjugate pairs (rep, partner)."""
    eps = mpmath.mpf(2) ** (-mpmath.mp.prec // 2)
    reals, pairs, used = [], [], set()
    for i, r in enumerate(roots):
        if i in used:
            continue
        if abs(mpmath.im(r)) < eps * (1 + abs(r)):
            reals.append(i)
            used.add(i)
            continue
        for j in range(i + 1, len(roots)):
            if j not in used and abs(roots[j] - mpmath.conj(r)) < eps * (1 + abs(r)):
                pairs.append((i, j))
                used.add(i)
                used.add(j)
                break
        else:
            raise PrecisionExhausted("could not pair complex embeddings")
    return reals, pairs


def _real_fifth_root(x):
    if x >= 0:
        return mpmath.root(x, 5)
    return -mpmath.root(-x, 5)


def nf_fifth_root(x, denominator_bound=10**6):
    """Exact fifth root of an NFElement, or None if no fifth root exists in K.

    Fifth roots are computed in every complex embedding (five branch choices
    per conjugate-pair representative), the candidate's power-basis coordinates
    are reconstructed by solving against the embedding matrix, and the result
    is verified exactly; None is certified by exhausting branch combinations
    at the top precision."""
    if not x:
        return x.field.zero
    K = x.field
    n = K.degree
    for prec in _PREC_LADDER:
        with mpmath.workprec(prec):
            roots = K.embeddings(prec)
            reals, pairs = _conjugation_structure(roots)
            xs = [x.embed(r) for r in roots]
            zeta = mpmath.exp(2j * mpmath.pi / 5)
            # one fixed choice per real embedding, five per pair
            base = [None] * n
            for i in reals:
                base[i] = _real_fifth_root(mpmath.re(xs[i]))
            combos = [[]]
            for _ in pairs:
                combos = [c + [k] for c in combos for k in range(5)]
            V = mpmath.matrix(n, n)
            for i in range(n):
                for j in range(n):
                    V[i, j] = roots[i] ** j
            for combo in combos:
                w = list(base)
                for (idx, (i, j)) in enumerate(pairs):
                    wi = mpmath.root(xs[i], 5) * zeta ** combo[idx]
                    w[i] = wi
                    w[j] = mpmath.conj(wi)
                try:
                    sol = mpmath.lu_solve(V, mpmath.matrix(w))
                except ZeroDivisionError:
                    raise PrecisionExhausted("singular embedding matrix")
                cand = _reconstruct(K, sol, denominator_bound)
                if cand is not None and cand**5 == x:
                    return cand
    return None


def _reconstruct(K, sol, denominator_bound):
    coords = []
    for v in sol:
        if abs(mpmath.im(v)) > mpmath.mpf(2) ** (-8):
            return None
        re = mpmath.re(v)
        nearest = mpmath.nint(re)
        if abs(re - nearest) < mpmath.mpf(2) ** (-16):
            coords.append(Fraction(int(nearest)))
        else:
            fr = Fraction(str(mpmath.nstr(re, 40))).limit_denominator(denominator_bound)
            coords.append(fr)
    return K.element(coords)
