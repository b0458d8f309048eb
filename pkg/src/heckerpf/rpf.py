"""Exact construction and verification of pole-system rational functions.

The objects built here are rational functions q(z) whose finite poles sit
at the numbers of an irreducible pole system (together with algebraic
conjugates and possibly zero), subject to two functional equations of
weight 2k, written with M the product of the lambda-translation and the
inversion z -> -1/z:

    inversion:  q(z) + z^(-2k) q(-1/z) = 0
    rotation :  sum over j < p of (c_j z + d_j)^(-2k) q(M^j z) = 0

where (a_j, b_j; c_j, d_j) are the entries of M^j.  Everything is exact:
coefficients live in Q(lambda) adjoined with sqrt(D), square discriminants
are folded down to Q(lambda), and the verifier samples more points than
the degree of any residual that could occur, so a "valid" answer is a
proof of the identity and not a numerical impression.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import comb

from .field import (
    DomainError,
    ExtElem,
    FieldElem,
    RingElem,
    field_sqrt,
    fold_ext,
    sign,
)
from .cf import Surd
from .group import generator
from .quadforms import QForm, is_simple, matrix_of_surd, negate, form_of_matrix
from .isp import isp_of_word


class PoleHit(DomainError):
    """Raised when an evaluation point lands on a pole.

    The offending pole is kept on the `pole` attribute: a Surd for a
    finite irrational pole, an exact number for a rational one, or 0 for
    the pole at the origin contributed by the zero/tail part.
    """

    def __init__(self, message, pole=None):
        super().__init__(message)
        self.pole = pole


class NoSolution:
    """Marker result: the linear conditions admit no exact solution."""

    __slots__ = ()

    def __repr__(self):
        return "NoSolution()"

    def __eq__(self, other):
        return isinstance(other, NoSolution)

    def __hash__(self):
        return hash("NoSolution")


class SolutionFamily:
    """An affine family of solutions: basepoint + span of directions.

    `basepoint` is the solution with every free tail coordinate set to
    zero; `directions` are tail-only functions spanning the homogeneous
    solutions, so every member is basepoint + sum of scalar multiples of
    the directions.  No member is singled out as canonical.
    """

    __slots__ = ("basepoint", "directions")

    def __init__(self, basepoint, directions):
        self.basepoint = basepoint
        self.directions = tuple(directions)

    def __eq__(self, other):
        if not isinstance(other, SolutionFamily):
            return NotImplemented
        return (
            self.basepoint == other.basepoint
            and self.directions == other.directions
        )

    def __repr__(self):
        return (
            f"SolutionFamily(basepoint={self.basepoint!r}, "
            f"{len(self.directions)} free direction(s))"
        )


class VerifyResult:
    """Outcome of `verify`: valid, or invalid with a witness.

    The witness is a pair (point, relation) with relation either
    "inversion" or "rotation"; the named residual is exactly nonzero at
    the witness point.
    """

    __slots__ = ("valid", "witness")

    def __init__(self, valid, witness=None):
        self.valid = valid
        self.witness = witness

    def __bool__(self):
        return self.valid

    def __repr__(self):
        if self.valid:
            return "VerifyResult(valid)"
        point, relation = self.witness
        return f"VerifyResult(invalid at z={point} in the {relation} relation)"


# ---------------------------------------------------------------------------
# small exact-arithmetic helpers
# ---------------------------------------------------------------------------


def _one_ring(p) -> RingElem:
    return RingElem.from_int(p, 1)


def _ext_of(p, x) -> ExtElem:
    """Lift x into the extension with a harmless square tag when needed."""
    if isinstance(x, ExtElem):
        return x
    if isinstance(x, (int, Fraction, RingElem, FieldElem)):
        return ExtElem(x, 0, _one_ring(p))
    raise DomainError(f"cannot use {type(x).__name__} as an extension element")


@lru_cache(maxsize=4096)
def _disc_root_cached(p, coeffs):
    return field_sqrt(FieldElem(RingElem(p, list(coeffs))))


def _disc_root(D: RingElem):
    """sqrt(D) in the base field when D is a perfect square, else None."""
    return _disc_root_cached(D.p, tuple(D.coeffs))


def _fold_square(x: ExtElem) -> ExtElem:
    """Collapse sqrt(D) when D is a perfect square, else return x as is."""
    if x.v.is_zero():
        return x
    root = _disc_root(x.D)
    if root is None:
        return x
    return fold_ext(x, root)


def _as_field(p, z) -> FieldElem:
    """Coerce an evaluation point into the base field."""
    if isinstance(z, FieldElem):
        if z.p != p:
            raise DomainError("evaluation point has the wrong lambda index")
        return z
    if isinstance(z, RingElem):
        if z.p != p:
            raise DomainError("evaluation point has the wrong lambda index")
        return FieldElem(z)
    if isinstance(z, int):
        return FieldElem.from_int(p, z)
    if isinstance(z, Fraction):
        return FieldElem(RingElem.from_int(p, z.numerator), z.denominator)
    if isinstance(z, ExtElem) and z.v.is_zero():
        return _as_field(p, z.u)
    raise DomainError("evaluation points must lie in the base field")


def _is_square_disc(D: RingElem) -> bool:
    return _disc_root(D) is not None


# ---------------------------------------------------------------------------
# the function type
# ---------------------------------------------------------------------------


class PoleTerm:
    """One summand coeff / (z - alpha)^order of the pole part."""

    __slots__ = ("alpha", "order", "coeff")

    def __init__(self, alpha: Surd, order: int, coeff):
        if not isinstance(alpha, Surd):
            raise DomainError("the pole location must be a Surd")
        if not isinstance(order, int) or isinstance(order, bool) or order < 1:
            raise DomainError("the pole order must be a positive integer")
        coeff = _fold_square(_ext_of(alpha.p, coeff))
        if coeff.is_zero():
            raise DomainError("a pole term needs a nonzero coefficient")
        if coeff.p != alpha.p:
            raise DomainError("mixed lambda indices in a pole term")
        self.alpha = alpha
        self.order = order
        self.coeff = coeff

    @property
    def p(self):
        return self.alpha.p

    def __eq__(self, other):
        if not isinstance(other, PoleTerm):
            return NotImplemented
        return (
            self.alpha == other.alpha
            and self.order == other.order
            and self.coeff == other.coeff
        )

    def __hash__(self):
        return hash((self.alpha.key(), self.order, self.coeff))

    def __repr__(self):
        return f"PoleTerm({self.alpha!r}, order={self.order}, coeff={self.coeff!r})"

    def to_json_dict(self):
        return {
            "alpha": self.alpha.to_json_dict(),
            "order": self.order,
            "coeff": _ext_json(self.coeff),
        }


class RPF:
    """A rational function built from pole terms, a zero-pole part and a tail.

    The value is

        sum of coeff/(z - alpha)^order over the pole terms
        + a0 (1 - z^(-2k)) + b1 z^(-1)
        + sum of tail[n-1] z^(-n) for n = 1 .. 2k-1,

    where k >= 1 is the half-weight.  b1 may be nonzero only when the
    weight 2k equals 2.  All irrational pole locations and coefficients
    must share a single non-square discriminant; square discriminants are
    folded into the base field on construction.
    """

    __slots__ = ("p", "k", "pole_terms", "zero_part", "tail", "_forms", "_plan")

    def __init__(self, p, k, pole_terms=(), zero_part=None, tail=None, forms=None):
        if not isinstance(p, int) or isinstance(p, bool) or p < 3:
            raise DomainError("the group index must be an integer >= 3")
        if not isinstance(k, int) or isinstance(k, bool) or k < 1:
            raise DomainError("the half-weight must be a positive integer")
        self.p = p
        self.k = k
        terms = tuple(pole_terms)
        for t in terms:
            if not isinstance(t, PoleTerm):
                raise DomainError("pole_terms must contain PoleTerm objects")
            if t.p != p:
                raise DomainError("a pole term has the wrong lambda index")
            if t.order > k:
                raise DomainError("a pole order exceeds the half-weight")
        self.pole_terms = tuple(
            sorted(terms, key=lambda t: (t.alpha.key(), t.order))
        )
        if zero_part is None:
            a0 = b1 = _ext_of(p, 0)
        else:
            a0, b1 = zero_part
            a0 = _fold_square(_ext_of(p, a0))
            b1 = _fold_square(_ext_of(p, b1))
        if not b1.is_zero() and 2 * k != 2:
            raise DomainError("the z^(-1) part is only allowed at weight 2")
        self.zero_part = (a0, b1)
        if tail is None:
            tail = ()
        tail = tuple(_fold_square(_ext_of(p, c)) for c in tail)
        if len(tail) > 2 * k - 1:
            raise DomainError("the tail may only run up to z^(-(2k-1))")
        if len(tail) < 2 * k - 1:
            tail = tail + tuple(_ext_of(p, 0) for _ in range(2 * k - 1 - len(tail)))
        self.tail = tail
        self._forms = None if forms is None else tuple(forms)
        self._plan = None
        self._check_discriminants()

    def _check_discriminants(self):
        live = set()
        for t in self.pole_terms:
            if not _is_square_disc(t.alpha.D):
                live.add(tuple(t.alpha.D.coeffs))
            if not t.coeff.v.is_zero():
                live.add(tuple(t.coeff.D.coeffs))
        for c in self.zero_part + self.tail:
            if not c.v.is_zero():
                live.add(tuple(c.D.coeffs))
        if len(live) > 1:
            raise DomainError("all irrational poles and coefficients must "
                              "share one discriminant")

    @property
    def weight(self):
        return 2 * self.k

    def has_zero_pole(self):
        a0, b1 = self.zero_part
        return (not a0.is_zero()) or (not b1.is_zero()) or any(
            not c.is_zero() for c in self.tail
        )

    def __eq__(self, other):
        if not isinstance(other, RPF):
            return NotImplemented
        return (
            self.p == other.p
            and self.k == other.k
            and self.pole_terms == other.pole_terms
            and self.zero_part == other.zero_part
            and self.tail == other.tail
        )

    def __hash__(self):
        return hash((self.p, self.k, self.pole_terms, self.zero_part, self.tail))

    def __repr__(self):
        bits = [f"p={self.p}", f"weight={2 * self.k}",
                f"{len(self.pole_terms)} pole term(s)"]
        if self.has_zero_pole():
            bits.append("zero-pole part")
        return "RPF(" + ", ".join(bits) + ")"

    def to_json_dict(self):
        a0, b1 = self.zero_part
        return {
            "p": self.p,
            "k": self.k,
            "pole_terms": [t.to_json_dict() for t in self.pole_terms],
            "zero_part": {"a0": _ext_json(a0), "b1": _ext_json(b1)},
            "tail": [_ext_json(c) for c in self.tail],
        }


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _field_json(x: FieldElem):
    return {"num": list(x.num.coeffs), "den": x.den}


def _ext_json(x: ExtElem):
    return {"u": _field_json(x.u), "v": _field_json(x.v), "D": list(x.D.coeffs)}


def _field_from_json(p, d) -> FieldElem:
    return FieldElem(RingElem(p, list(d["num"])), int(d["den"]))


def _ext_from_json(p, d) -> ExtElem:
    return ExtElem(
        _field_from_json(p, d["u"]),
        _field_from_json(p, d["v"]),
        RingElem(p, list(d["D"])),
    )


def to_json(q: RPF) -> str:
    """Deterministic JSON text for q (same q -> same bytes)."""
    return json.dumps(q.to_json_dict(), sort_keys=True, separators=(",", ":"))


def from_json(text: str) -> RPF:
    """Rebuild a function from the output of `to_json`."""
    d = json.loads(text)
    p = int(d["p"])
    terms = []
    for td in d["pole_terms"]:
        ad = td["alpha"]
        alpha = Surd(
            RingElem(p, list(ad["P"])),
            RingElem(p, list(ad["Q"])),
            RingElem(p, list(ad["D"])),
        )
        terms.append(PoleTerm(alpha, int(td["order"]),
                              _ext_from_json(p, td["coeff"])))
    zero = (
        _ext_from_json(p, d["zero_part"]["a0"]),
        _ext_from_json(p, d["zero_part"]["b1"]),
    )
    tail = tuple(_ext_from_json(p, cd) for cd in d["tail"])
    return RPF(p, int(d["k"]), terms, zero, tail)


# ---------------------------------------------------------------------------
# basic constructors
# ---------------------------------------------------------------------------


def q_zero(p, k, a0, b1=0) -> RPF:
    """The function with its only pole at the origin:

        a0 (1 - z^(-2k))        for weight 2k != 2,
        a0 (1 - z^(-2)) + b1/z  for weight 2.

    It satisfies the inversion relation identically for every k.
    """
    return RPF(p, k, (), (a0, b1))


def principal_part(k, alpha: Surd):
    """Pole terms of the principal part at alpha of

        (alpha - alpha')^k / ((z - alpha)^k (z - alpha')^k),

    where alpha' is the algebraic conjugate.  The coefficient of
    (z - alpha)^(-(k-j)) is binom(k-1+j, j) (-1)^j (alpha - alpha')^(-j).
    Requires alpha != alpha'.
    """
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise DomainError("the half-weight must be a positive integer")
    if not isinstance(alpha, Surd):
        raise DomainError("the pole location must be a Surd")
    if alpha.D.is_zero():
        raise DomainError("the pole has no distinct conjugate (D = 0)")
    p = alpha.p
    # alpha - alpha' = 2 sqrt(D) / Q
    two_over_q = FieldElem.from_int(p, 2) / FieldElem(alpha.Q)
    delta = ExtElem(0, two_over_q, alpha.D)
    step = -delta.inverse()
    terms = []
    cur = _ext_of(p, 1)
    for j in range(k):
        coeff = cur * comb(k - 1 + j, j)
        terms.append(PoleTerm(alpha, k - j, coeff))
        cur = cur * step
    return tuple(terms)


def _simple_form(alpha: Surd) -> QForm:
    """The quadratic form with positive leading coefficient whose first
    root is alpha (alpha must exceed 0 with a negative conjugate)."""
    f = form_of_matrix(matrix_of_surd(alpha))
    if sign(f.A) < 0:
        f = negate(f)
    assert is_simple(f), "the pole is not simple"
    assert f.first_root() == alpha, "form reconstruction missed the pole"
    return f


def from_form_powers(k, terms) -> RPF:
    """The function  sum of s * Q(z,1)^(-k)  over pairs (s, Q).

    Each form power is expanded into exact pole terms through the
    principal parts at the form's two roots; the pairs are remembered so
    `to_latex` can print the compact form-power shape.  The expansion is
    re-checked against a direct evaluation at a sample point.
    """
    pairs = [( _ext_of(f.p, s), f) for s, f in terms]
    if not pairs:
        raise DomainError("at least one form power is required")
    p = pairs[0][1].p
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise DomainError("the half-weight must be a positive integer")
    acc = {}
    for s, f in pairs:
        if f.p != p:
            raise DomainError("mixed lambda indices among the forms")
        if s.is_zero():
            continue
        alpha = f.first_root()
        # A (alpha - alpha') = sign(A) sqrt(disc)
        root_disc = ExtElem(0, 1, f.disc())
        scale = s * (root_disc * sign(f.A)) ** (-k)
        _accumulate(acc, principal_part(k, alpha), scale)
        sign_k = -1 if k % 2 else 1
        _accumulate(acc, principal_part(k, alpha.conjugate()), scale * sign_k)
    q = RPF(p, k, _terms_of(acc), forms=pairs)
    _check_form_expansion(q, k, pairs)
    return q


def _accumulate(acc, terms, scale):
    """Fold scaled pole terms into the (alpha, order) -> coeff table."""
    scale = _fold_square(scale) if isinstance(scale, ExtElem) else scale
    for t in terms:
        key = (t.alpha.key(), t.order)
        prev = acc.get(key)
        add = t.coeff * scale
        if prev is None:
            acc[key] = (t.alpha, t.order, add)
        else:
            acc[key] = (prev[0], prev[1], prev[2] + add)


def _terms_of(acc):
    out = []
    for alpha, order, coeff in acc.values():
        folded = _fold_square(coeff)
        if not folded.is_zero():
            out.append(PoleTerm(alpha, order, folded))
    return out


def _check_form_expansion(q, k, pairs):
    """Assert the pole-term expansion reproduces the form powers exactly."""
    z = 2
    while True:
        zf = _as_field(q.p, z)
        try:
            direct = _ext_of(q.p, 0)
            for s, f in pairs:
                value = (f.A * zf + f.B) * zf + f.C
                if value.is_zero():
                    raise PoleHit("sample point is a root of a form")
                root = field_sqrt(FieldElem(f.disc()))
                power = _ext_of(q.p, value) ** (-k)
                if root is not None:
                    direct = direct + _fold_square(s) * power
                else:
                    direct = direct + s * power
            got = evaluate(q, zf)
        except PoleHit:
            z += 1
            continue
        assert got == direct, "pole-term expansion disagrees with the forms"
        return


# ---------------------------------------------------------------------------
# builders for the two pole-system shapes
# ---------------------------------------------------------------------------


def build_symmetric_odd(k, system) -> RPF:
    """For a self-conjugate pole system and odd half-weight k, the sum of
    Q_alpha(z,1)^(-k) over the system's numbers, as exact pole terms."""
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise DomainError("the half-weight must be a positive integer")
    if k % 2 == 0:
        raise DomainError("this construction needs an odd half-weight")
    if not system.symmetric:
        raise DomainError("this construction needs a self-conjugate system")
    return from_form_powers(k, [(1, _simple_form(a)) for a in system.positives])


def build_union(k, system) -> RPF:
    """For a non-self-conjugate system, the signed sum over the system and
    its conjugate partner:

        sum over the system of Q(z,1)^(-k)
        - (-1)^k  sum over the partner system of Q(z,1)^(-k).
    """
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise DomainError("the half-weight must be a positive integer")
    if system.symmetric:
        raise DomainError("this construction needs a non-self-conjugate system")
    partner = isp_of_word(system.conjugate_word)
    sign_k = -1 if k % 2 else 1
    terms = [(1, _simple_form(a)) for a in system.positives]
    terms += [(-sign_k, _simple_form(g)) for g in partner.positives]
    return from_form_powers(k, terms)


# ---------------------------------------------------------------------------
# evaluation and the two relations
# ---------------------------------------------------------------------------


def _eval_plan(q: RPF):
    """Group the pole terms by location and precompute what evaluation
    needs per pole: the folded value for square discriminants, otherwise
    P/Q, 1/Q and the constant part D/Q^2 of the norm of z - alpha.  Built
    once per function and reused for every point."""
    if q._plan is not None:
        return q._plan
    groups = {}
    for t in q.pole_terms:
        key = t.alpha.key()
        if key not in groups:
            groups[key] = (t.alpha, [])
        groups[key][1].append((t.order, t.coeff))
    entries = []
    for alpha, pairs in groups.values():
        pairs.sort()
        root = _disc_root(alpha.D)
        if root is not None:
            value = (FieldElem(alpha.P) + root) / FieldElem(alpha.Q)
            entries.append((alpha, value, None, tuple(pairs)))
        else:
            q_inv = 1 / FieldElem(alpha.Q)
            d_over_q2 = q_inv * q_inv * FieldElem(alpha.D)
            prep = (FieldElem(alpha.P) * q_inv, q_inv, d_over_q2)
            entries.append((alpha, None, prep, tuple(pairs)))
    q._plan = tuple(entries)
    return q._plan


def evaluate(q: RPF, z) -> ExtElem:
    """The exact value q(z) for z in the base field.

    Raises PoleHit at any pole, including the origin when the zero/tail
    part is present (detected through the exact zero test that guards
    inversion in the field)."""
    z = _as_field(q.p, z)
    total = _ext_of(q.p, 0)
    for alpha, folded, prep, pairs in _eval_plan(q):
        if folded is not None:
            den = z - folded
            if den.is_zero():
                raise PoleHit(f"the point is the pole {alpha!r}", pole=alpha)
            inv = 1 / den
        else:
            # (z - alpha)^-1 done by hand: the norm of z - P/Q + sqrt(D)/Q
            # is (z - P/Q)^2 - D/Q^2, never zero since D is not a square.
            p_over_q, q_inv, d_over_q2 = prep
            u = z - p_over_q
            ninv = 1 / (u * u - d_over_q2)
            inv = ExtElem(u * ninv, q_inv * ninv, alpha.D)
        power = inv
        at = 1
        for order, coeff in pairs:
            while at < order:
                power = power * inv
                at += 1
            total = total + coeff * power
    if q.has_zero_pole():
        if z.is_zero():
            raise PoleHit("the point 0 is a pole of the zero/tail part", pole=0)
        z_inv = 1 / z
        a0, b1 = q.zero_part
        if not a0.is_zero():
            total = total + a0 - a0 * (z_inv ** (2 * q.k))
        if not b1.is_zero():
            total = total + b1 * z_inv
        for n, c in enumerate(q.tail, start=1):
            if not c.is_zero():
                total = total + c * (z_inv ** n)
    return total


def _inversion_from(q: RPF, z: FieldElem, value: ExtElem) -> ExtElem:
    """Inversion residual given the already-computed value q(z)."""
    if z.is_zero():
        raise PoleHit("the inversion relation is singular at 0", pole=0)
    z_inv = 1 / z
    return value + evaluate(q, -z_inv) * (z_inv ** (2 * q.k))


def inversion_residual(q: RPF, z) -> ExtElem:
    """q(z) + z^(-2k) q(-1/z), exactly."""
    z = _as_field(q.p, z)
    if z.is_zero():
        raise PoleHit("the inversion relation is singular at 0", pole=0)
    return _inversion_from(q, z, evaluate(q, z))


@lru_cache(maxsize=None)
def _rotation_matrices(p):
    """Entries of the nontrivial rotation powers, lifted to the field once."""
    u = generator(p, "U")
    out = []
    for j in range(1, p):
        m = u ** j
        out.append(tuple(FieldElem(x) for x in (m.a, m.b, m.c, m.d)))
    return tuple(out)


def _rotation_from(q: RPF, z: FieldElem, value: ExtElem) -> ExtElem:
    """Rotation residual given the already-computed identity term q(z)."""
    total = value
    for a, b, c, d in _rotation_matrices(q.p):
        den = z * c + d
        if den.is_zero():
            raise PoleHit("a rotated copy sends the point to infinity")
        den_inv = 1 / den
        w = (z * a + b) * den_inv
        total = total + evaluate(q, w) * (den_inv ** (2 * q.k))
    return total


def rotation_residual(q: RPF, z) -> ExtElem:
    """sum over j < p of (c_j z + d_j)^(-2k) q(M^j z), exactly."""
    z = _as_field(q.p, z)
    return _rotation_from(q, z, evaluate(q, z))


def _order_mass(q: RPF) -> int:
    """Pole-order mass entering the sample-point budget: the sum of the
    pole-term orders plus 2k for the zero/tail slot."""
    return sum(t.order for t in q.pole_terms) + 2 * q.k


def _point_budget(q: RPF) -> int:
    """Enough sample points to separate the residuals from zero: both
    relations are rational functions whose numerator degree is at most
    (p+1) times (2k + pole mass), plus margin."""
    return 2 * q.k * (q.p + 1) + _order_mass(q) * (q.p + 1) + 8


def verify(q: RPF) -> VerifyResult:
    """Exact check of the inversion and rotation relations.

    Samples even integer points 2, 4, 6, ... (skipping any that land on a
    pole of a rotated copy) until the budget is met; every residual must
    vanish exactly.  A failure reports the first witness point."""
    needed = _point_budget(q)
    used = 0
    point = 0
    while used < needed:
        point += 2
        z = _as_field(q.p, point)
        try:
            value = evaluate(q, z)
            r_inv = _inversion_from(q, z, value)
        except PoleHit:
            continue
        if not r_inv.is_zero():
            return VerifyResult(False, (point, "inversion"))
        try:
            r_rot = _rotation_from(q, z, value)
        except PoleHit:
            continue
        if not r_rot.is_zero():
            return VerifyResult(False, (point, "rotation"))
        used += 1
    return VerifyResult(True, None)


# ---------------------------------------------------------------------------
# the linear solver behind the general construction
# ---------------------------------------------------------------------------


def _odd_primes():
    yield 3
    n = 5
    while True:
        d = 3
        prime = True
        while d * d <= n:
            if n % d == 0:
                prime = False
                break
            d += 2
        if prime:
            yield n
        n += 2


def _gauss_jordan(p, rows, m):
    """Exact reduction of rows (coeffs, rhs) over the extension field.

    Returns None when inconsistent, else (solution with free coordinates
    zero, one direction per free coordinate)."""
    mat = [list(coeffs) + [rhs] for coeffs, rhs in rows]
    pivot_cols = []
    r = 0
    for col in range(m):
        sel = next(
            (i for i in range(r, len(mat)) if not mat[i][col].is_zero()), None
        )
        if sel is None:
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        inv = mat[r][col].inverse()
        mat[r] = [a * inv for a in mat[r]]
        for i in range(len(mat)):
            if i != r and not mat[i][col].is_zero():
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivot_cols.append(col)
        r += 1
    for i in range(r, len(mat)):
        if not mat[i][m].is_zero():
            return None
    zero = _ext_of(p, 0)
    solution = [zero] * m
    for row_idx, col in enumerate(pivot_cols):
        solution[col] = mat[row_idx][m]
    free_cols = [c for c in range(m) if c not in pivot_cols]
    directions = []
    for f in free_cols:
        direction = [zero] * m
        direction[f] = _ext_of(p, 1)
        for row_idx, col in enumerate(pivot_cols):
            direction[col] = -mat[row_idx][f]
        directions.append(direction)
    return solution, directions


def build_ansatz(k, system, template):
    """Solve for the tail of the template attached to a pole system.

    template "symmetric" (for a self-conjugate system):

        sum over the system of [pp(alpha) - pp(alpha')] + tail

    template "nonsymmetric" (for a system with a distinct partner):

        sum over the system of pp(alpha)
        - sum over the partner system of pp(gamma') + tail

    where pp is `principal_part` of half-weight k and ' is the algebraic
    conjugate.  The tail coefficients c_1 .. c_(2k-1) are found by exact
    evaluation of both relation residuals at odd prime points (enough of
    them to pin the residuals down as rational functions) and an exact
    linear solve.  Returns the unique RPF, a SolutionFamily when tail
    coordinates remain free (expected at weight 2), or NoSolution when
    the conditions are inconsistent.
    """
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise DomainError("the half-weight must be a positive integer")
    if template not in ("symmetric", "nonsymmetric"):
        raise DomainError('template must be "symmetric" or "nonsymmetric"')
    want_symmetric = template == "symmetric"
    if want_symmetric != system.symmetric:
        raise DomainError("the template does not match the system's symmetry")
    p = system.p
    acc = {}
    if want_symmetric:
        for alpha in system.positives:
            _accumulate(acc, principal_part(k, alpha), _ext_of(p, 1))
            _accumulate(acc, principal_part(k, alpha.conjugate()), _ext_of(p, -1))
    else:
        for alpha in system.positives:
            _accumulate(acc, principal_part(k, alpha), _ext_of(p, 1))
        partner = isp_of_word(system.conjugate_word)
        for gamma in partner.positives:
            _accumulate(acc, principal_part(k, gamma.conjugate()), _ext_of(p, -1))
    fixed = RPF(p, k, _terms_of(acc))
    m = 2 * k - 1
    basis = []
    for n in range(1, m + 1):
        unit = [0] * m
        unit[n - 1] = 1
        basis.append(RPF(p, k, (), None, unit))
    needed = _point_budget(fixed)
    rows = []
    used = 0
    for point in _odd_primes():
        try:
            base_inv = inversion_residual(fixed, point)
            base_rot = rotation_residual(fixed, point)
            cols_inv = [inversion_residual(b, point) for b in basis]
            cols_rot = [rotation_residual(b, point) for b in basis]
        except PoleHit:
            continue
        rows.append((cols_inv, -base_inv))
        rows.append((cols_rot, -base_rot))
        used += 1
        if used == needed:
            break
    solved = _gauss_jordan(p, rows, m)
    if solved is None:
        return NoSolution()
    solution, directions = solved
    base = RPF(p, k, fixed.pole_terms, None, solution)
    if not directions:
        return base
    family = tuple(RPF(p, k, (), None, d) for d in directions)
    return SolutionFamily(base, family)


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _poly_latex(coeffs, var: str = r"\lambda") -> str:
    """LaTeX for an integer coefficient vector in powers of a variable."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if i == 0:
            body = str(abs(c))
        else:
            head = "" if abs(c) == 1 else str(abs(c)) + " "
            power = var if i == 1 else var + "^{%d}" % i
            body = head + power
        if not terms:
            terms.append(body if c > 0 else "-" + body)
        else:
            terms.append(("+ " if c > 0 else "- ") + body)
    return " ".join(terms) if terms else "0"


def _ring_is_plain(x: RingElem) -> bool:
    return all(c == 0 for c in x.coeffs[1:])


def _field_latex(x: FieldElem) -> str:
    if x.den == 1:
        return _poly_latex(x.num.coeffs)
    body = _poly_latex(x.num.coeffs)
    if body.startswith("-"):
        return r"-\frac{%s}{%d}" % (_poly_latex((-x.num).coeffs), x.den)
    return r"\frac{%s}{%d}" % (body, x.den)


def _ext_latex(x: ExtElem) -> str:
    if x.v.is_zero():
        return _field_latex(x.u)
    radical = r"\sqrt{%s}" % _poly_latex(x.D.coeffs)
    v = x.v
    if v == FieldElem.from_int(x.p, 1):
        v_part = radical
    elif v == FieldElem.from_int(x.p, -1):
        v_part = "-" + radical
    else:
        v_part = r"%s \cdot %s" % (_field_latex(v), radical)
    if x.u.is_zero():
        return v_part
    joiner = " + " if not v_part.startswith("-") else " "
    return _field_latex(x.u) + joiner + v_part


def _wrap_if_composite(body: str) -> str:
    """Parenthesize renderings that would not bind as a single operand."""
    if body.startswith("-") or " + " in body or " - " in body:
        return r"\left(%s\right)" % body
    return body


def _pole_denom_latex(alpha: Surd) -> str:
    """The z - alpha denominator, with square discriminants folded to
    their field value so poles like -1 print as z + 1, not z - -1."""
    folded = alpha.folded_value()
    if folded is None:
        body = _surd_latex(alpha)
        if body.startswith("-"):
            return r"z + %s" % body[1:]
        return r"z - %s" % body
    body = _field_latex(folded)
    if body.startswith("-"):
        return r"z + %s" % _wrap_if_composite(_field_latex(-folded))
    return r"z - %s" % _wrap_if_composite(body)


def _surd_latex(alpha: Surd) -> str:
    flip = sign(alpha.Q) < 0
    numer, denom = (-alpha.P, -alpha.Q) if flip else (alpha.P, alpha.Q)
    radical = r"\sqrt{%s}" % _poly_latex(alpha.D.coeffs)
    plain_denom = denom == RingElem.from_int(alpha.p, 1)
    if numer.is_zero():
        # pure radical: hoist the sign so callers can absorb it
        body = radical if plain_denom else r"\frac{%s}{%s}" % (
            radical,
            _poly_latex(denom.coeffs),
        )
        return ("-" + body) if flip else body
    top = _poly_latex(numer.coeffs) + (" - " if flip else " + ") + radical
    if plain_denom:
        return r"\left(%s\right)" % top
    return r"\frac{%s}{%s}" % (top, _poly_latex(denom.coeffs))


def _form_latex(f: QForm) -> str:
    parts = []
    for ring, power in ((f.A, "z^{2}"), (f.B, "z"), (f.C, "")):
        if ring.is_zero():
            continue
        body = _poly_latex(ring.coeffs)
        single = " + " not in body and " - " not in body
        if single:
            sign_neg = body.startswith("-")
            mag = body[1:] if sign_neg else body
            if power:
                term = power if mag == "1" else f"{mag} {power}"
            else:
                term = mag
        elif power:
            sign_neg = False
            term = r"\left(%s\right) %s" % (body, power)
        else:
            # multi-term constant: its terms carry their own signs, so it
            # splices into the running sum directly
            if not parts:
                parts.append(body)
            elif body.startswith("-"):
                parts.append("- " + body[1:])
            else:
                parts.append("+ " + body)
            continue
        if not parts:
            parts.append(("-" if sign_neg else "") + term)
        else:
            parts.append(("- " if sign_neg else "+ ") + term)
    return " ".join(parts) if parts else "0"


def _zero_tail_latex(q: RPF) -> list:
    chunks = []
    a0, b1 = q.zero_part
    one = ExtElem(1, 0, _one_ring(q.p))
    if not a0.is_zero():
        body = r"\left(1 - z^{-%d}\right)" % (2 * q.k)
        chunks.append(body if a0 == one else r"%s %s" % (_ext_latex(a0), body))
    if not b1.is_zero():
        if b1 == one:
            chunks.append(r"z^{-1}")
        else:
            chunks.append(r"%s \, z^{-1}" % _ext_latex(b1))
    for n, c in enumerate(q.tail, start=1):
        if not c.is_zero():
            z_pow = "z" if n == 1 else r"z^{%d}" % n
            chunks.append(r"\frac{%s}{%s}" % (_ext_latex(c), z_pow))
    return chunks


def to_latex(q: RPF) -> str:
    """Deterministic LaTeX for q.

    Functions produced by the form-power builders print in the compact
    shape  s / (A z^2 + B z + C)^k;  everything else prints as explicit
    pole terms plus the zero/tail part.
    """
    chunks = []
    if q._forms is not None:
        for s, f in q._forms:
            body = _form_latex(f)
            denom = (
                r"\left(%s\right)^{%d}" % (body, q.k)
                if q.k > 1
                else r"%s" % body
            )
            s_folded = _fold_square(s)
            if s_folded == ExtElem(1, 0, _one_ring(q.p)):
                num = "1"
            elif s_folded == ExtElem(-1, 0, _one_ring(q.p)):
                chunks.append(r"-\frac{1}{%s}" % denom)
                continue
            else:
                num = _ext_latex(s_folded)
            chunks.append(r"\frac{%s}{%s}" % (num, denom))
    else:
        for t in q.pole_terms:
            denom = _pole_denom_latex(t.alpha)
            if t.order > 1:
                denom = r"\left(%s\right)^{%d}" % (denom, t.order)
            cl = _ext_latex(t.coeff)
            if cl == "1":
                chunks.append(r"\frac{1}{%s}" % denom)
            elif cl.startswith("-"):
                neg = _ext_latex(-t.coeff)
                if neg.startswith("-"):
                    chunks.append(r"\frac{%s}{%s}" % (cl, denom))
                else:
                    num = "1" if neg == "1" else neg
                    chunks.append(r"-\frac{%s}{%s}" % (num, denom))
            else:
                chunks.append(
                    r"\frac{%s}{%s}" % (cl, denom)
                )
    chunks.extend(_zero_tail_latex(q))
    if not chunks:
        return "0"
    out = chunks[0]
    for c in chunks[1:]:
        out += " " + c if c.startswith("-") else " + " + c
    return out
