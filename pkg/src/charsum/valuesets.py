"""Closed forms for S(f), the field sum of the distinct values of f over
F_q, for the polynomial families with known answers: X^4 + aX^2 + b,
degree <= 3, a*X^n + b, odd-type polynomials X^r B(X^s), and the
characteristic-3 special curve X^3 + X^2.  Also the image-size formulas
and the classification of { S(X^4 + aX^2) : a in F_q }.
"""

import enum
import math
from dataclasses import dataclass
from typing import Callable

from .field import FieldElement, PreconditionError, trace_to_prime
from .charsums import chi_of_minus_one
from . import oracles


def _require_odd(f):
    if f.q % 2 == 0:
        raise PreconditionError("requires a field of odd order")


class TClass(enum.Enum):
    ALL = "all"
    SQUARES = "squares"
    FOURTH_POWERS = "fourth_powers"
    SQUARES_NOT_FOURTH_POWERS = "squares_not_fourth_powers"


@dataclass(frozen=True)
class LowDegreePoly:
    """Polynomial of degree 1..3, coefficients ascending (constant first)."""
    coeffs: tuple

    def __post_init__(self):
        cs = tuple(self.coeffs)
        object.__setattr__(self, "coeffs", cs)
        if not 2 <= len(cs) <= 4 or cs[-1].is_zero():
            raise PreconditionError(
                "requires degree in {1,2,3} with nonzero leading coefficient")

    @property
    def degree(self):
        return len(self.coeffs) - 1


def quartic_image_size(f, a):
    """|image of X^4 + aX^2| by both displayed closed forms (checked equal)."""
    _require_odd(f)
    if a.is_zero():
        raise PreconditionError("requires a != 0")
    q = f.q
    chi_m1 = chi_of_minus_one(q)
    chi_neg_a = f.chi_raw(f.raw_neg(a.raw))
    chi_neg_2a = f.chi_raw(f.raw_neg(f.raw_mul(f.from_int(2).raw, a.raw)))
    num = 3 * q + 4 + chi_m1 - 2 * chi_neg_a + 2 * chi_neg_2a
    assert num % 8 == 0
    n1 = num // 8
    n2 = (3 * q + 7 - 2 * chi_neg_a) // 8
    assert n1 == n2, "the two image-size expressions disagree"
    return n1


def quartic_sum_closed(f, a, b):
    """S(X^4 + aX^2 + b) for q > 5 odd; a = 0 falls back to the a*X^n + b
    formula (the quartic becomes X^4 + b)."""
    _require_odd(f)
    if a.is_zero():
        return power_poly_sum_closed(f, f.one(), b, 4)
    if f.q <= 5:
        raise PreconditionError("requires q > 5")
    p = f.p
    chi_m1 = chi_of_minus_one(f.q)
    chi_neg_a = f.chi_raw(f.raw_neg(a.raw))
    chi_neg_2a = f.chi_raw(f.raw_neg(f.raw_mul(f.from_int(2).raw, a.raw)))
    c_a2 = -(4 + chi_m1 + 4 * chi_neg_2a) * pow(64, -1, p) % p
    c_b = (4 + chi_m1 - 2 * chi_neg_a + 2 * chi_neg_2a) * pow(8, -1, p) % p
    return f.from_int(c_a2) * a * a + f.from_int(c_b) * b


def classify_T(q):
    """Which set { S(X^4 + aX^2) : a } is, from q's residues alone."""
    if q % 2 == 0 or q <= 5:
        raise PreconditionError("requires odd q > 5")
    hits = []
    if q % 4 == 3 and q % 7 in (3, 5, 6):
        hits.append(TClass.ALL)
    if q % 12 == 1 or (q % 4 == 3 and q % 7 in (0, 1, 2, 4)):
        hits.append(TClass.SQUARES)
    if q % 24 in (5, 21):
        hits.append(TClass.FOURTH_POWERS)
    if q % 24 in (9, 17):
        hits.append(TClass.SQUARES_NOT_FOURTH_POWERS)
    assert len(hits) == 1, f"classification branches not exclusive for q={q}"
    return hits[0]


def make_T_set(f, cls):
    """Materialize a TClass as a concrete set of field elements.

    squares and fourth_powers include 0; squares_not_fourth_powers is
    {0} union (nonzero squares that are not fourth powers of units),
    so 0 belongs to it as well.
    """
    _require_odd(f)
    if cls is TClass.ALL:
        return set(f.elements())
    squares = {FieldElement(f, f.raw_mul(r, r))
               for r in (f.raw_at(i) for i in range(f.q))}
    if cls is TClass.SQUARES:
        return squares
    fourths = {FieldElement(f, f.raw_pow(r, 4))
               for r in (f.raw_at(i) for i in range(f.q))}
    if cls is TClass.FOURTH_POWERS:
        return fourths
    return (squares - fourths) | {f.zero()}


def low_degree_branch(f, poly):
    """(branch label, S(f)) for a polynomial of degree 1..3; the label is
    used by the sweep harness for branch-coverage accounting."""
    q = f.q
    if q <= 4:
        raise PreconditionError("requires q > 4")
    cs = poly.coeffs
    if poly.degree == 1:
        return "deg1", f.zero()
    if poly.degree == 2:
        c, b, a = cs
        if q % 2 == 0:
            return "deg2_even", f.zero()
        return "deg2_odd", (f.from_int(4) * a * c - b * b) / (f.from_int(8) * a)
    d, c, b, a = cs
    if q % 3 != 0:
        crit = b * b == f.from_int(3) * a * c
        if not crit:
            lead = (f.from_int(27) * a * a * d
                    - f.from_int(9) * a * b * c
                    + f.from_int(2) * b * b * b)
            val = f.from_int((2 * q + 1) // 3) * lead / (f.from_int(27) * a * a)
            return "deg3_generic", val
        if q % 3 == 2:
            return "deg3_crit_q2mod3", f.zero()
        num = f.from_int(2) * (f.from_int(27) * a * a * d - b * b * b)
        return "deg3_crit_q1mod3", num / (f.from_int(81) * a * a)
    if q % 27 == 0:
        return "deg3_27divq", f.zero()
    assert q == 9  # q > 4 and 3 | q and 27 does not divide q
    return "deg3_q9", -(b * b * b) / (a * a)


LOW_DEGREE_BRANCHES = ("deg1", "deg2_odd", "deg2_even", "deg3_generic",
                       "deg3_crit_q2mod3", "deg3_crit_q1mod3",
                       "deg3_27divq", "deg3_q9")


def low_degree_sum_closed(f, poly):
    """S(f) for deg(f) <= 3 and q > 4, any characteristic."""
    return low_degree_branch(f, poly)[1]


def cubic_image_size(f, a):
    """|image of X^3 + aX| = floor((2q+1)/3) for q > 3 with 3 not dividing q.

    In characteristic 3 the map is additive and the image size is q or q/3
    depending on chi(-a), so the floor formula does not apply there.
    """
    if f.q <= 3:
        raise PreconditionError("requires q > 3")
    if f.p == 3:
        raise PreconditionError("requires characteristic != 3")
    if a.is_zero():
        raise PreconditionError("requires a != 0")
    return (2 * f.q + 1) // 3


def power_poly_sum_closed(f, a, b, n):
    """S(a X^n + b): a + 2b when (q-1) | n, else b * (1 - 1/gcd(n, q-1))."""
    if a.is_zero():
        raise PreconditionError("requires a != 0")
    if n < 1:
        raise PreconditionError("requires n >= 1")
    m = math.gcd(n, f.q - 1)
    if m == f.q - 1:
        return a + f.from_int(2) * b
    return b * (f.one() - f.from_int(m).inverse())


def _check_twisted_hypotheses(f, r, s):
    if r < 1 or s < 1:
        raise PreconditionError("requires positive r and s")
    if (f.q - 1) % s != 0:
        raise PreconditionError("requires s | q-1")
    if r % s == 0:
        raise PreconditionError("requires s not dividing r")


def twisted_poly(f, r, s, B):
    """Coefficients of X^r * B(X^s), ascending, from B's coefficients."""
    braw = [c if isinstance(c, FieldElement) else f.from_int(c) for c in B]
    coeffs = [f.zero()] * (r + s * max(len(braw) - 1, 0) + 1)
    for j, c in enumerate(braw):
        coeffs[r + s * j] = coeffs[r + s * j] + c
    return coeffs


def twisted_sum_zero(f, r, s, B):
    """S(X^r B(X^s)) = 0 whenever s | q-1 and s does not divide r.

    The value is forced by the hypotheses; the operation validates them
    so the harness can compare against the brute-force scan.
    """
    _check_twisted_hypotheses(f, r, s)
    return f.zero()


def shifted_sum(f, r, s, B, shift):
    """S(X^r B(X^s) + shift) = shift * |image|, the image size taken from
    the brute-force scan (no general closed form exists for it)."""
    _check_twisted_hypotheses(f, r, s)
    size = oracles.value_set(f, twisted_poly(f, r, s, B)).size
    return shift * f.from_int(size)


@dataclass(frozen=True)
class Char3Analysis:
    """Predicted behaviour of X^3 + X^2 over GF(3^k).

    multiplicity(x) returns the predicted number of preimages of x:
    3 when x is the square of a nonzero trace-zero element, 2 when x = 0,
    and 1 meaning "at most one" otherwise (the formulas pin down only the
    values with multiple preimages; the remaining values split between
    one preimage and none, with the split fixed by image_size).
    """
    image_size: int
    total: FieldElement
    multiplicity: Callable[[FieldElement], int]


def char3_h_analysis(f):
    """Image size, value sum and preimage classifier for X^3 + X^2, p = 3."""
    if f.p != 3:
        raise PreconditionError("requires characteristic 3")
    k = f.n
    image_size = 2 * f.q // 3
    total = f.from_int(0 if k > 2 else -1)
    triple = set()
    for i in range(1, f.q):
        d = f.raw_at(i)
        if d != f.zero_raw and trace_to_prime(f, FieldElement(f, d)) == 0:
            triple.add(f.raw_mul(d, d))

    def multiplicity(x):
        if x.raw in triple:
            return 3
        if x.is_zero():
            return 2
        return 1

    return Char3Analysis(image_size, total, multiplicity)


def artin_schreier_remark_sum(f, Q):
    """S(X^(Q-1) * (X+1)) over GF(q) with q = Q^k, Q a power of char(F_q):
    0 when k > 2 or q = 2, and -1 otherwise."""
    if Q < 2:
        raise PreconditionError("requires Q >= 2")
    m = Q
    while m % f.p == 0:
        m //= f.p
    if m != 1:
        raise PreconditionError("requires Q to be a power of the characteristic")
    k = 0
    m = f.q
    while m % Q == 0 and m > 1:
        m //= Q
        k += 1
    if m != 1:
        raise PreconditionError("requires q to be a power of Q")
    return f.from_int(0) if k > 2 or f.q == 2 else f.from_int(-1)
