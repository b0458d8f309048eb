"""Irreducible systems of poles for rational period functions.

Each primitive hyperbolic conjugacy class, named by its canonical generator
word, owns one irreducible system of poles: rotate the word so every run of
1-letters is closed by a bigger letter, expand the matching purely periodic
continued fraction once per block, and translate each block's reduced fixed
point left by lambda until the root goes negative. The positive poles
collected this way all share the discriminant trace^2 - 4 of the word's
matrix; the full pole set is the positives together with their images under
the inversion generator. Counting systems with n positive poles is counting
primitive necklaces over the alphabet of letters, Moebius-style.
"""

from __future__ import annotations

from .cf import CF, Parabolic, Surd, cf_expand, floor_over_lambda, surd_of_cf
from .field import DomainError, lambda_elem
from .group import GenWord, NonPrimitive, canonical_rotation, enumerate_words, transpose_word, word_to_matrix

__all__ = [
    "ISP",
    "isp_of_word",
    "count_isps",
    "enumerate_isps",
    "is_hecke_symmetric",
    "conjugate_isp",
    "symmetry_via_numbers",
]


class ISP:
    """An irreducible system of poles: the positive poles of one class.

    positives is ordered block-major (block 1's translates first, each run
    ordered by translation distance), so serialized output is deterministic.
    """

    __slots__ = ("word", "D", "beta1", "positives", "symmetric", "conjugate_word")

    def __init__(self, word, D, beta1, positives, symmetric, conjugate_word):
        self.word = word
        self.D = D
        self.beta1 = beta1
        self.positives = tuple(positives)
        self.symmetric = symmetric
        self.conjugate_word = conjugate_word

    @property
    def p(self):
        return self.word.p

    def __eq__(self, other):
        if not isinstance(other, ISP):
            return NotImplemented
        return (
            self.word == other.word
            and self.D == other.D
            and self.positives == other.positives
            and self.symmetric == other.symmetric
            and self.conjugate_word == other.conjugate_word
        )

    def __repr__(self):
        return (
            f"ISP(p={self.p}, word={list(self.word.letters)}, "
            f"{len(self.positives)} positive poles, symmetric={self.symmetric})"
        )

    def to_json_dict(self):
        return {
            "p": self.p,
            "word": list(self.word.letters),
            "D": list(self.D.coeffs),
            "positives": [a.to_json_dict() for a in self.positives],
            "symmetric": self.symmetric,
            "conjugate_word": list(self.conjugate_word.letters),
        }


def _blocks(letters):
    """Split a rotation whose last letter is not 1 into (ones, closer) runs."""
    out = []
    ones = 0
    for j in letters:
        if j == 1:
            ones += 1
        else:
            out.append((ones, j))
            ones = 0
    assert ones == 0, "rotation does not end every block with a letter > 1"
    return out


def _positives_of_rotation(p, letters):
    """Positive poles read off one block-aligned rotation of a word.

    The continued-fraction period is assembled block by block — a run of m
    1s closed by letter j becomes the entry m+2 followed by j-2 ones — so
    the rotation is honored as given, without re-canonicalizing."""
    blocks = _blocks(letters)
    period = []
    for ones, closer in blocks:
        period.append(ones + 2)
        period.extend([1] * (closer - 2))
    period = tuple(period)
    lam = lambda_elem(p)
    offset = 0
    beta1 = None
    positives = []
    for ones, closer in blocks:
        rotated = period[offset:] + period[:offset]
        beta = surd_of_cf(CF(p, [], rotated))
        if beta1 is None:
            beta1 = beta
        count = ones + 1
        assert floor_over_lambda(beta) == count
        P, Q, D = beta.P, beta.Q, beta.D
        for i in range(1, count + 1):
            alpha = Surd(P - (i * Q) * lam, Q, D)
            assert alpha.conjugate() < 0 < alpha, "translate is not simple"
            positives.append(alpha)
        offset += closer - 1  # entries this block contributed to the period
    return beta1, positives


def _primitive_core(letters):
    n = len(letters)
    for d in range(1, n):
        if n % d == 0 and letters == letters[:d] * (n // d):
            return letters[:d], n // d
    return letters, 1


def isp_of_word(w: GenWord) -> ISP:
    """The irreducible system of poles of a primitive hyperbolic word.

    The word is used in its canonical rotation (lexicographically least,
    which always closes each run of 1s with a bigger letter); per block the
    purely periodic continued fraction starting there gives a reduced point
    beta_t, contributing the simple poles beta_t - i*lambda for
    i = 1 .. floor(beta_t / lambda)."""
    p = w.p
    letters = w.letters
    if all(j == 1 for j in letters) or all(j == p - 1 for j in letters):
        raise Parabolic("pure powers of the parabolic letters have no pole system")
    if not w.is_primitive:
        core, k = _primitive_core(letters)
        raise NonPrimitive(GenWord(p, core), k)
    assert letters[-1] != 1, "canonical rotation should close its final block"
    beta1, positives = _positives_of_rotation(p, letters)
    assert len(positives) == len(letters)
    m = word_to_matrix(w)
    t = m.trace()
    D = beta1.D
    assert D == t * t - 4, "pole discriminant must match the word matrix"
    return ISP(
        word=w,
        D=D,
        beta1=beta1,
        positives=positives,
        symmetric=is_hecke_symmetric(w),
        conjugate_word=conjugate_isp(w),
    )


def _mobius(n: int) -> int:
    if n == 1:
        return 1
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def _primitive_necklaces(q: int, n: int) -> int:
    total = 0
    for d in range(1, n + 1):
        if n % d == 0:
            total += _mobius(d) * q ** (n // d)
    assert total % n == 0
    return total // n


def count_isps(p: int, n: int) -> int:
    """How many irreducible pole systems have exactly n positive poles.

    Primitive-necklace count over the p-1 letters, except that single
    letters lose the two parabolic generators."""
    if not isinstance(p, int) or isinstance(p, bool) or p < 3:
        raise DomainError("p must be an integer >= 3")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DomainError("n must be an integer >= 1")
    if n == 1:
        return p - 3
    return _primitive_necklaces(p - 1, n)


def enumerate_isps(p: int, n: int):
    """All irreducible pole systems with n positive poles, in word order."""
    return [isp_of_word(w) for w in enumerate_words(p, n)]


def is_hecke_symmetric(w: GenWord) -> bool:
    """Whether the pole system is its own conjugate: the transposed word
    lands back on the same canonical word."""
    return transpose_word(w) == w


def conjugate_isp(w: GenWord) -> GenWord:
    """Canonical word of the conjugate pole system (the transposed class)."""
    return transpose_word(w)


def symmetry_via_numbers(isp: ISP) -> bool:
    """Symmetry checked on the numbers instead of the words: every positive
    pole's algebraic conjugate must expand to the same continued-fraction
    period up to rotation. Independent of the word transpose route, so the
    two are test oracles for each other."""
    for alpha in isp.positives:
        a = cf_expand(alpha)
        b = cf_expand(alpha.conjugate())
        if canonical_rotation(tuple(a.period)) != canonical_rotation(tuple(b.period)):
            return False
    return True
