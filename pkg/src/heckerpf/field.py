"""Exact arithmetic over the trace field of the Hecke group G_p.

The ring Z[2cos(pi/p)] is represented by dense integer coefficient vectors
modulo the minimal polynomial of 2cos(pi/p) (computed from a cyclotomic
polynomial through the palindromic substitution y = x + 1/x). On top of the
ring sit field elements (ring numerator over a positive integer denominator,
kept in lowest terms), formal elements u + v*sqrt(D) of a quadratic
extension, and certified sign determination through interval refinement.

Everything user-visible is exact. Floating point appears in exactly one
place - as a hint for bracketing the real roots of the minimal polynomial -
and every bracket is validated by exact sign evaluation before use.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from itertools import product as _iproduct
from math import cos, gcd, isqrt, lcm, pi

from .backend import kernel

__all__ = [
    "DomainError",
    "ZeroDivisor",
    "PrecisionError",
    "MinPoly",
    "minimal_polynomial",
    "RingElem",
    "FieldElem",
    "ExtElem",
    "QuadExt",
    "fold_ext",
    "RealInterval",
    "lambda_elem",
    "lambda_interval",
    "conjugate_intervals",
    "sign",
    "ring_sqrt",
    "field_sqrt",
    "ring_div_exact",
    "decimal_of",
    "poly_str",
]

_SIGN_BITS = (128, 256, 512, 1024, 2048, 4096, 8192)


class DomainError(ValueError):
    """An argument lies outside the domain of the requested operation."""


class ZeroDivisor(ArithmeticError):
    """Inversion of a formally nonzero element u + v*sqrt(D) with u^2 = v^2 D.

    This can only happen when D is a perfect square in Q(lambda) that has not
    been folded down. `witness` is the square root of D (normalized to be
    nonnegative) under which the offending element collapses to zero; callers
    can substitute sqrt(D) := witness everywhere and retry.
    """

    def __init__(self, witness):
        self.witness = witness
        super().__init__(
            "zero divisor in quadratic extension; fold down with sqrt(D) = %r" % (witness,)
        )


class PrecisionError(AssertionError):
    """Interval refinement hit the hard precision cap (an internal bug:
    every quantity we refine has been proven nonzero beforehand)."""


# ---------------------------------------------------------------------------
# minimal polynomial of 2cos(pi/p)
# ---------------------------------------------------------------------------


def _poly_div_exact(num, den):
    # exact division of integer polynomials (den monic, constant-first)
    num = list(num)
    dd = len(den) - 1
    q = [0] * (len(num) - dd)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + dd]
        q[i] = c
        if c:
            for j in range(dd + 1):
                num[i + j] -= c * den[j]
    assert all(x == 0 for x in num), "non-exact polynomial division"
    return q


@lru_cache(maxsize=None)
def _cyclotomic(n):
    # x^n - 1 = product of the d-th cyclotomic polynomials over d | n
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_div_exact(num, _cyclotomic(d))
    return tuple(num)


class MinPoly:
    """Monic minimal polynomial of 2cos(pi/p): integer coefficients, constant first."""

    __slots__ = ("p", "coeffs", "degree")

    def __init__(self, p, coeffs):
        self.p = p
        self.coeffs = tuple(coeffs)
        self.degree = len(self.coeffs) - 1

    def __repr__(self):
        return f"MinPoly(p={self.p}, {poly_str(self.coeffs)})"

    def __eq__(self, other):
        if isinstance(other, MinPoly):
            return self.p == other.p and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.coeffs))


@lru_cache(maxsize=None)
def minimal_polynomial(p: int) -> MinPoly:
    """Minimal polynomial of 2cos(pi/p) over Q; degree phi(2p)/2."""
    if not isinstance(p, int) or isinstance(p, bool) or p < 3:
        raise DomainError("p must be an integer >= 3")
    phi = _cyclotomic(2 * p)
    m = (len(phi) - 1) // 2
    # phi_{2p} is palindromic of even degree 2m; phi(x)/x^m rewrites as a
    # monic polynomial psi(y) in y = x + 1/x via the basis b_j = x^j + x^-j
    # with b_0 = 2, b_1 = y, b_{j+1} = y*b_j - b_{j-1}. 2cos(pi/p) is the
    # largest real root of psi.
    psi = [0] * (m + 1)
    psi[0] = phi[m]
    b_prev = [2] + [0] * m
    b_cur = [0, 1] + [0] * (m - 1)
    for j in range(1, m + 1):
        cj = phi[m + j]
        if cj:
            for i in range(m + 1):
                psi[i] += cj * b_cur[i]
        if j < m:
            b_next = [0] * (m + 1)
            for i in range(m):
                if b_cur[i]:
                    b_next[i + 1] += b_cur[i]
            for i in range(m + 1):
                b_next[i] -= b_prev[i]
            b_prev, b_cur = b_cur, b_next
    return MinPoly(p, psi)


@lru_cache(maxsize=None)
def _reduction_rows(p):
    # row e = fully reduced coefficient vector of x^(degree+e)
    mp = minimal_polynomial(p)
    d = mp.degree
    if d == 1:
        return ()
    base = tuple(-c for c in mp.coeffs[:d])
    rows = [base]
    for _ in range(d - 2):
        prev = rows[-1]
        shifted = [0] + list(prev[: d - 1])
        top = prev[d - 1]
        if top:
            for i in range(d):
                shifted[i] += top * base[i]
        rows.append(tuple(shifted))
    return tuple(rows)


def _reduce_vec(p, vec):
    d = minimal_polynomial(p).degree
    out = list(vec)
    if len(out) < d:
        out += [0] * (d - len(out))
    elif len(out) > d:
        base = tuple(-c for c in minimal_polynomial(p).coeffs[:d])
        for e in range(len(out) - 1, d - 1, -1):
            c = out[e]
            if c:
                for i in range(d):
                    out[e - d + i] += c * base[i]
        out = out[:d]
    return tuple(out)


# ---------------------------------------------------------------------------
# ring and field elements
# ---------------------------------------------------------------------------


class RingElem:
    """Element of Z[2cos(pi/p)] as an integer vector modulo the minimal polynomial."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p, coeffs):
        coeffs = _reduce_vec(p, coeffs)
        if not all(isinstance(c, int) for c in coeffs):
            raise DomainError("ring coefficients must be integers")
        self.p = p
        self.coeffs = coeffs

    @classmethod
    def from_int(cls, p, n):
        el = cls.__new__(cls)
        el.p = p
        el.coeffs = (int(n),) + (0,) * (minimal_polynomial(p).degree - 1)
        return el

    @classmethod
    def _raw(cls, p, coeffs):
        el = cls.__new__(cls)
        el.p = p
        el.coeffs = coeffs
        return el

    def _coerce(self, other):
        if isinstance(other, RingElem):
            if other.p != self.p:
                raise DomainError("mixed p in ring arithmetic")
            return other
        if isinstance(other, int):
            return RingElem.from_int(self.p, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RingElem._raw(self.p, kernel.addv(self.coeffs, o.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RingElem._raw(self.p, kernel.subv(self.coeffs, o.coeffs))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RingElem._raw(self.p, kernel.subv(o.coeffs, self.coeffs))

    def __neg__(self):
        return RingElem._raw(self.p, kernel.negv(self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RingElem._raw(
            self.p, kernel.mulmod(self.coeffs, o.coeffs, _reduction_rows(self.p))
        )

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise DomainError("ring exponent must be a nonnegative integer")
        result = RingElem.from_int(self.p, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        return FieldElem(self) / other

    def __rtruediv__(self, other):
        return other * _ring_inverse(self)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (FieldElem, ExtElem, Fraction)):
                return NotImplemented
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def is_zero(self):
        return not any(self.coeffs)

    def content(self):
        """gcd of the coefficients (0 for the zero element)."""
        return kernel.content(self.coeffs)

    def interval(self, bits):
        return _eval_iv(self.coeffs, lambda_interval(self.p, bits))

    def __repr__(self):
        return f"RingElem(p={self.p}, {poly_str(self.coeffs, 'λ')})"


def lambda_elem(p) -> RingElem:
    """The ring element 2cos(pi/p) itself."""
    return RingElem(p, (0, 1))


# -- fraction-coefficient polynomial helpers (for the extended euclid) ------


def _fpoly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _fpoly_divmod(a, b):
    a = list(a)
    db = len(b) - 1
    inv_lead = 1 / b[-1]
    q = [Fraction(0)] * max(0, len(a) - db)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + db] * inv_lead
        q[i] = c
        if c:
            for j in range(db + 1):
                a[i + j] -= c * b[j]
    return q, _fpoly_trim(a[:db])


def _fpoly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _fpoly_trim(out)


def _fpoly_sub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return _fpoly_trim(out)


def _ring_inverse(a: RingElem) -> "FieldElem":
    """Inverse of a nonzero ring element, as a field element."""
    if a.is_zero():
        raise ZeroDivisionError("division by zero in Q(lambda)")
    mp = minimal_polynomial(a.p)
    if mp.degree == 1:
        return FieldElem(RingElem.from_int(a.p, 1), a.coeffs[0])
    # extended euclid in Q[x]: r = s*a + t*minpoly, ending at a constant gcd
    r0 = [Fraction(c) for c in mp.coeffs]
    r1 = _fpoly_trim([Fraction(c) for c in a.coeffs])
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while r1:
        q, r = _fpoly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _fpoly_sub(s0, _fpoly_mul(q, s1))
    c = r0[0]
    u = [x / c for x in s0]
    den = lcm(*[f.denominator for f in u]) if u else 1
    num = RingElem(a.p, [int(f * den) for f in u])
    return FieldElem(num, den)


class FieldElem:
    """Element of Q(2cos(pi/p)): ring numerator over a positive integer
    denominator, with gcd(content(num), den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        if isinstance(num, int):
            raise DomainError("FieldElem needs a RingElem numerator (use from_int)")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        g = gcd(num.content(), den)
        if g > 1:
            num = RingElem._raw(num.p, tuple(c // g for c in num.coeffs))
            den //= g
        self.num = num
        self.den = den

    @property
    def p(self):
        return self.num.p

    @classmethod
    def from_int(cls, p, n):
        return cls(RingElem.from_int(p, n))

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.p != self.p:
                raise DomainError("mixed p in field arithmetic")
            return other
        if isinstance(other, RingElem):
            if other.p != self.p:
                raise DomainError("mixed p in field arithmetic")
            return FieldElem(other)
        if isinstance(other, int):
            return FieldElem.from_int(self.p, other)
        if isinstance(other, Fraction):
            return FieldElem(RingElem.from_int(self.p, other.numerator), other.denominator)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        el = FieldElem.__new__(FieldElem)
        el.num = -self.num
        el.den = self.den
        return el

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        inv = _ring_inverse(o.num) * o.den
        return self * inv

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n):
        if not isinstance(n, int):
            raise DomainError("field exponent must be an integer")
        if n < 0:
            return 1 / (self ** (-n))
        result = FieldElem.from_int(self.p, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.den == o.den and self.num == o.num

    def __hash__(self):
        return hash((self.num, self.den))

    def is_zero(self):
        return self.num.is_zero()

    def as_fraction(self):
        """The exact rational value, or None when the element is irrational
        (any nonzero coefficient beyond the constant one)."""
        if any(self.num.coeffs[1:]):
            return None
        return Fraction(self.num.coeffs[0], self.den)

    def interval(self, bits):
        iv = self.num.interval(bits)
        return _iv_scale(iv, Fraction(1, self.den))

    def __repr__(self):
        if self.den == 1:
            return f"FieldElem(p={self.p}, {poly_str(self.num.coeffs, 'λ')})"
        return f"FieldElem(p={self.p}, ({poly_str(self.num.coeffs, 'λ')})/{self.den})"


class ExtElem:
    """Formal element u + v*sqrt(D) with u, v in Q(lambda) and D in the ring.

    Arithmetic is on the formal pair (u, v); when D happens to be a perfect
    square the representation is not faithful and inversion of a formally
    nonzero element can hit a zero divisor - that raises ZeroDivisor with a
    fold-down witness instead of returning garbage. Pipelines that know D in
    advance should construct elements through QuadExt, which folds square
    discriminants up front so the situation never arises.
    """

    __slots__ = ("p", "D", "u", "v")

    def __init__(self, u, v, D):
        if not isinstance(D, RingElem):
            raise DomainError("D must be a RingElem")
        self.p = D.p
        self.D = D
        self.u = u if isinstance(u, FieldElem) else self._lift(u, D.p)
        self.v = v if isinstance(v, FieldElem) else self._lift(v, D.p)
        if self.u.p != D.p or self.v.p != D.p:
            raise DomainError("mixed p in extension arithmetic")

    @staticmethod
    def _lift(x, p):
        if isinstance(x, RingElem):
            if x.p != p:
                raise DomainError("mixed p in extension arithmetic")
            return FieldElem(x)
        if isinstance(x, int):
            return FieldElem.from_int(p, x)
        if isinstance(x, Fraction):
            return FieldElem(RingElem.from_int(p, x.numerator), x.denominator)
        raise DomainError(f"cannot lift {type(x).__name__} into the extension")

    def _coerce(self, other):
        if isinstance(other, ExtElem):
            if other.p != self.p:
                raise DomainError("mixed p in extension arithmetic")
            if other.D == self.D:
                return self, other
            if other.v.is_zero():
                return self, ExtElem(other.u, other.v, self.D)
            if self.v.is_zero():
                return ExtElem(self.u, self.v, other.D), other
            raise DomainError("mixed discriminants in extension arithmetic")
        if isinstance(other, (int, Fraction, RingElem, FieldElem)):
            return self, ExtElem(self._lift_like(other), 0, self.D)
        return None

    def _lift_like(self, x):
        if isinstance(x, FieldElem):
            if x.p != self.p:
                raise DomainError("mixed p in extension arithmetic")
            return x
        return self._lift(x, self.p)

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return ExtElem(a.u + b.u, a.v + b.v, a.D)

    __radd__ = __add__

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return ExtElem(a.u - b.u, a.v - b.v, a.D)

    def __rsub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b - a

    def __neg__(self):
        return ExtElem(-self.u, -self.v, self.D)

    def __mul__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        Df = FieldElem(a.D)
        return ExtElem(a.u * b.u + a.v * b.v * Df, a.u * b.v + a.v * b.u, a.D)

    __rmul__ = __mul__

    def conj(self):
        """The formal conjugate u - v*sqrt(D)."""
        return ExtElem(self.u, -self.v, self.D)

    def norm(self) -> FieldElem:
        return self.u * self.u - self.v * self.v * FieldElem(self.D)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("division by zero in the quadratic extension")
        n = self.norm()
        if n.is_zero():
            # u^2 = v^2 D with (u, v) != 0: D is a square and sqrt(D) = -u/v
            w = -self.u / self.v
            if sign(w) < 0:
                w = -w
            raise ZeroDivisor(w)
        ninv = 1 / n
        return ExtElem(self.u * ninv, -self.v * ninv, self.D)

    def __truediv__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b * a.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            raise DomainError("extension exponent must be an integer")
        if n < 0:
            return (self ** (-n)).inverse()
        result = ExtElem(1, 0, self.D)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.u == b.u and a.v == b.v

    def __hash__(self):
        if self.v.is_zero():
            return hash((self.p, self.u))
        return hash((self.p, self.u, self.v, self.D))

    def is_zero(self):
        return self.u.is_zero() and self.v.is_zero()

    def interval(self, bits):
        iv = self.u.interval(bits)
        if self.v.is_zero():
            return iv
        dv = _eval_iv(self.D.coeffs, lambda_interval(self.p, bits))
        if dv.hi < 0:
            raise DomainError("negative discriminant has no real square root")
        root = _iv_sqrt(dv, bits)
        return _iv_add(iv, _iv_mul(self.v.interval(bits), root))

    def __repr__(self):
        return f"ExtElem(p={self.p}, u={self.u!r}, v={self.v!r}, D={poly_str(self.D.coeffs, 'λ')})"


class QuadExt:
    """Construction context for Q(lambda_p)(sqrt(D)).

    Detects square discriminants once and folds every element it builds, so
    code running inside the context never meets a zero divisor.
    """

    __slots__ = ("p", "D", "sqrtD")

    def __init__(self, D: RingElem):
        self.p = D.p
        self.D = D
        w = ring_sqrt(D)
        self.sqrtD = None if w is None else FieldElem(w)

    def make(self, u, v=0) -> ExtElem:
        x = ExtElem(u, v, self.D)
        if self.sqrtD is not None and not x.v.is_zero():
            return ExtElem(x.u + x.v * self.sqrtD, 0, self.D)
        return x

    def sqrt_disc(self) -> ExtElem:
        """The element sqrt(D) of the context."""
        return self.make(0, 1)


def fold_ext(x: ExtElem, w: FieldElem) -> ExtElem:
    """Substitute sqrt(D) := w, collapsing x into the base field."""
    return ExtElem(x.u + x.v * w, 0, x.D)


# ---------------------------------------------------------------------------
# intervals and certified signs
# ---------------------------------------------------------------------------


class RealInterval:
    """Closed interval [lo, hi] with exact rational endpoints."""

    __slots__ = ("lo", "hi", "precision_bits")

    def __init__(self, lo, hi, precision_bits=0):
        self.lo = lo
        self.hi = hi
        self.precision_bits = precision_bits

    def contains_zero(self):
        return self.lo <= 0 <= self.hi

    def width(self):
        return self.hi - self.lo

    def __repr__(self):
        return f"RealInterval({float(self.lo)}, {float(self.hi)}, bits={self.precision_bits})"


def _iv_add(a, b):
    return RealInterval(a.lo + b.lo, a.hi + b.hi, min(a.precision_bits, b.precision_bits))


def _iv_mul(a, b):
    cands = (a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi)
    return RealInterval(min(cands), max(cands), min(a.precision_bits, b.precision_bits))


def _iv_scale(a, s: Fraction):
    if s >= 0:
        return RealInterval(a.lo * s, a.hi * s, a.precision_bits)
    return RealInterval(a.hi * s, a.lo * s, a.precision_bits)


def _iv_shift(a, s: Fraction):
    return RealInterval(a.lo + s, a.hi + s, a.precision_bits)


def _sqrt_down(f: Fraction, bits):
    if f <= 0:
        return Fraction(0)
    n = (f.numerator << (2 * bits)) // f.denominator
    return Fraction(isqrt(n), 1 << bits)


def _sqrt_up(f: Fraction, bits):
    if f <= 0:
        return Fraction(0)
    n = -((-f.numerator << (2 * bits)) // f.denominator)  # ceil(f * 4^bits)
    s = isqrt(n)
    if s * s < n:
        s += 1
    return Fraction(s, 1 << bits)


def _iv_sqrt(a, bits):
    if a.hi < 0:
        raise DomainError("square root of a certified-negative interval")
    return RealInterval(_sqrt_down(a.lo, bits), _sqrt_up(a.hi, bits), bits)


def _iv_recip(a):
    # caller guarantees 0 is outside [lo, hi]
    return RealInterval(1 / a.hi, 1 / a.lo, a.precision_bits)


def _iv_div(a, b):
    return _iv_mul(a, _iv_recip(b))


def _eval_iv(coeffs, x: RealInterval) -> RealInterval:
    acc = RealInterval(Fraction(coeffs[-1]), Fraction(coeffs[-1]), x.precision_bits)
    for c in reversed(coeffs[:-1]):
        acc = _iv_shift(_iv_mul(acc, x), Fraction(c))
    return acc


def _eval_frac(coeffs, x: Fraction) -> Fraction:
    acc = Fraction(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


# -- enclosures of 2cos(k*pi/p) for all conjugates ---------------------------

_roots_lock = threading.Lock()
_roots_cache: dict = {}


def _init_roots(p):
    mp = minimal_polynomial(p)
    d = mp.degree
    if d == 1:
        root = Fraction(-mp.coeffs[0])
        return {"brackets": [[root, root]], "width_bits": None}
    ks = [k for k in range(1, p) if gcd(k, 2 * p) == 1]
    hints = sorted((2.0 * cos(pi * k / p) for k in ks), reverse=True)
    assert len(hints) == d
    gap = min(hints[i] - hints[i + 1] for i in range(d - 1)) if d > 1 else 1.0
    h = Fraction(min(gap / 4.0, 1e-6))
    brackets = []
    for i, val in enumerate(hints):
        lo, hi = Fraction(val) - h, Fraction(val) + h
        # the i-th root from the top of a separable polynomial with positive
        # leading coefficient has sign (-1)^i just above it, (-1)^(i+1) below
        want_hi = 1 if i % 2 == 0 else -1
        slo = _eval_frac(mp.coeffs, lo)
        shi = _eval_frac(mp.coeffs, hi)
        if not ((shi > 0) == (want_hi > 0) and shi != 0 and (slo > 0) == (want_hi < 0) and slo != 0):
            raise PrecisionError(f"root bracket validation failed for p={p}")
        brackets.append([lo, hi])
    return {"brackets": brackets, "width_bits": 0}


def _refined_roots(p, bits):
    with _roots_lock:
        state = _roots_cache.get(p)
        if state is None:
            state = _init_roots(p)
            _roots_cache[p] = state
        if state["width_bits"] is None:  # exact rational roots (degree 1)
            return [tuple(b) for b in state["brackets"]]
        if state["width_bits"] < bits:
            mp = minimal_polynomial(p)
            target = Fraction(1, 1 << bits)
            for i, br in enumerate(state["brackets"]):
                lo, hi = br
                want_hi = 1 if i % 2 == 0 else -1
                while hi - lo > target:
                    mid = (lo + hi) / 2
                    s = _eval_frac(mp.coeffs, mid)
                    if s == 0:
                        lo = hi = mid
                        break
                    if (s > 0) == (want_hi > 0):
                        hi = mid
                    else:
                        lo = mid
                br[0], br[1] = lo, hi
            state["width_bits"] = bits
        return [tuple(b) for b in state["brackets"]]


def lambda_interval(p, bits) -> RealInterval:
    """Certified enclosure of 2cos(pi/p), width at most 2^-bits."""
    lo, hi = _refined_roots(p, bits)[0]
    return RealInterval(lo, hi, bits)


def conjugate_intervals(p, bits):
    """Certified enclosures of all real conjugates of 2cos(pi/p), largest first."""
    return [RealInterval(lo, hi, bits) for lo, hi in _refined_roots(p, bits)]


@lru_cache(maxsize=65536)
def _ring_sign_refined(p, coeffs):
    for bits in _SIGN_BITS:
        iv = _eval_iv(coeffs, lambda_interval(p, bits))
        if iv.lo > 0:
            return 1
        if iv.hi < 0:
            return -1
    raise PrecisionError("sign refinement exhausted for a nonzero ring element")


def sign(x) -> int:
    """Certified sign (-1, 0, +1). Exact zero tests run first, so interval
    refinement is only ever asked to separate a provably nonzero quantity
    from zero and terminates."""
    if isinstance(x, int):
        return 0 if x == 0 else (1 if x > 0 else -1)
    if isinstance(x, Fraction):
        return 0 if x == 0 else (1 if x > 0 else -1)
    if isinstance(x, RingElem):
        if x.is_zero():
            return 0
        if minimal_polynomial(x.p).degree == 1:
            c = x.coeffs[0]
            return 1 if c > 0 else -1
        return _ring_sign_refined(x.p, x.coeffs)
    if isinstance(x, FieldElem):
        return sign(x.num)
    if isinstance(x, ExtElem):
        return _ext_sign(x)
    raise DomainError(f"sign is not defined for {type(x).__name__}")


def _ext_sign(x: ExtElem) -> int:
    if x.v.is_zero():
        return sign(x.u)
    sD = sign(x.D)
    if sD < 0:
        raise DomainError("sign of an element with negative discriminant")
    if sD == 0:
        return sign(x.u)
    if x.u.is_zero():
        return sign(x.v)
    # dangerous diagonal u^2 = v^2 D, where intervals would never separate
    if x.u * x.u == x.v * x.v * FieldElem(x.D):
        su, sv = sign(x.u), sign(x.v)
        return 0 if su != sv else su
    for bits in _SIGN_BITS:
        iv = x.interval(bits)
        if iv.lo > 0:
            return 1
        if iv.hi < 0:
            return -1
    raise PrecisionError("sign refinement exhausted for a nonzero extension element")


# ---------------------------------------------------------------------------
# square detection
# ---------------------------------------------------------------------------


def _lagrange_coeffs(xs, ys):
    # coefficients (constant first) of the polynomial through (xs, ys)
    n = len(xs)
    acc = [Fraction(0)] * n
    for i in range(n):
        num = [Fraction(1)]
        den = Fraction(1)
        for j in range(n):
            if j != i:
                new = [Fraction(0)] * (len(num) + 1)
                for k, c in enumerate(num):
                    new[k] += c * (-xs[j])
                    new[k + 1] += c
                num = new
                den *= xs[i] - xs[j]
        w = ys[i] / den
        for k, c in enumerate(num):
            acc[k] += w * c
    return acc


def _round_frac(f: Fraction) -> int:
    return (2 * f.numerator + f.denominator) // (2 * f.denominator)


_sqrt_cache: dict = {}
_sqrt_cache_lock = threading.Lock()


def ring_sqrt(D: RingElem):
    """Exact square root of D in Z[lambda] if D is a perfect square, else None.

    The ring is the full ring of integers of its field, so a square root in
    the field already has integer coefficients; candidates are recovered from
    certified enclosures of all real embeddings and then verified exactly.
    """
    key = (D.p, D.coeffs)
    with _sqrt_cache_lock:
        if key in _sqrt_cache:
            return _sqrt_cache[key]
    res = _ring_sqrt_impl(D)
    with _sqrt_cache_lock:
        _sqrt_cache[key] = res
    return res


def _ring_sqrt_impl(D: RingElem):
    p = D.p
    d = minimal_polynomial(p).degree
    if D.is_zero():
        return RingElem.from_int(p, 0)
    if d == 1:
        c = D.coeffs[0]
        if c < 0:
            return None
        s = isqrt(c)
        return RingElem.from_int(p, s) if s * s == c else None
    if sign(D) < 0:
        return None
    for bits in (320, 1280):
        roots = conjugate_intervals(p, bits)
        vals = [_eval_iv(D.coeffs, r) for r in roots]
        if any(v.hi < 0 for v in vals):
            return None  # some real embedding of D is certified negative
        sqrts = [_iv_sqrt(v, bits) for v in vals]
        root_mids = [(r.lo + r.hi) / 2 for r in roots]
        sqrt_mids = [(s.lo + s.hi) / 2 for s in sqrts]
        for pat in _iproduct((1, -1), repeat=d - 1):
            signs = (1,) + pat
            ys = [s * m for s, m in zip(signs, sqrt_mids)]
            coeffs = _lagrange_coeffs(root_mids, ys)
            cand = RingElem(p, [_round_frac(c) for c in coeffs])
            if cand * cand == D:
                return cand if sign(cand) >= 0 else -cand
    return None


def field_sqrt(x: FieldElem):
    """Exact square root of x in Q(lambda) if x is a perfect square, else None."""
    if x.is_zero():
        return FieldElem.from_int(x.p, 0)
    w = ring_sqrt(x.num * x.den)
    if w is None:
        return None
    return FieldElem(w, x.den)


def ring_div_exact(a: RingElem, b: RingElem):
    """a / b when the quotient lies in the ring, else None."""
    q = FieldElem(a) / b
    return q.num if q.den == 1 else None


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _decimal_body(n: int, scale: int, digits: int) -> str:
    neg = n < 0
    mag = -n if neg else n
    int_part, frac_part = divmod(mag, scale)
    body = f"{int_part}.{str(frac_part).zfill(digits)}"
    return f"-{body}" if neg else body


def decimal_of(make_interval, digits: int, exact=None) -> str:
    """Deterministic decimal rendering: the value is floored to `digits`
    places once an enclosure pins that floor down. make_interval(bits) must
    return tighter and tighter RealIntervals.  An exactly rational value
    must come in as `exact`: it can sit on a flooring boundary, which no
    enclosure ever decides."""
    if digits < 1:
        raise DomainError("digits must be >= 1")
    scale = 10**digits
    if exact is not None:
        return _decimal_body((exact * scale).__floor__(), scale, digits)
    for bits in (64,) + _SIGN_BITS:
        iv = make_interval(bits)
        nlo = (iv.lo * scale).__floor__()
        nhi = (iv.hi * scale).__floor__()
        if nlo == nhi:
            return _decimal_body(nlo, scale, digits)
    raise PrecisionError("decimal rendering did not converge")


def poly_str(coeffs, var="x") -> str:
    """Human form of an integer coefficient vector (constant first)."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if i == 0:
            body = str(abs(c))
        else:
            head = "" if abs(c) == 1 else str(abs(c))
            body = f"{head}{var}" if i == 1 else f"{head}{var}^{i}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(f"+ {body}" if c > 0 else f"- {body}")
    if not terms:
        return "0"
    return " ".join(terms)
