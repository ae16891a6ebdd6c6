"""Closed forms for sums of k-th powers over the set

    D = { x in F_q : chi(x) = chi_a and chi(x+1) = chi_b },

together with the exact counting formula for |D|.  D depends only on the
two chi classes, so the API takes classes in {-1, +1} rather than field
elements.

Every quantity here lives in the prime subfield (all ingredients are
rational constants and chi values), so the arithmetic is done with ints
mod p and embedded at the end.
"""

from dataclasses import dataclass

from .field import PreconditionError, binom_mod_p


@dataclass(frozen=True)
class ExponentReduction:
    """Unique (ell, eps) with k = eps*ell mod (q-1) and 0 < ell < (q-1)/2,
    or the degenerate flag when (q-1)/2 divides k."""
    ell: int | None
    eps: int | None
    degenerate: bool


@dataclass(frozen=True)
class DSpec:
    """Prescribed chi classes of x and x+1; both must be +1 or -1."""
    chi_a: int
    chi_b: int

    def __post_init__(self):
        if self.chi_a not in (-1, 1) or self.chi_b not in (-1, 1):
            raise PreconditionError("chi classes must be +1 or -1")


def _require_odd(f):
    if f.q % 2 == 0:
        raise PreconditionError("requires a field of odd order")


def chi_of_minus_one(q):
    """chi(-1): +1 iff q = 1 mod 4."""
    return 1 if q % 4 == 1 else -1


def reduce_exponent(q, k):
    """Reduce k to the unique in-range (ell, eps), or flag degeneracy."""
    if q % 2 == 0:
        raise PreconditionError("requires odd q")
    e = (q - 1) // 2
    if k % e == 0:
        return ExponentReduction(None, None, True)
    if q == 3:
        # e = 1 divides every k, so this point is unreachable for q = 3
        raise PreconditionError("requires q > 3 for a non-degenerate exponent")
    r = k % (q - 1)
    if 0 < r < e:
        return ExponentReduction(r, 1, False)
    r = (q - 1) - r
    assert 0 < r < e
    return ExponentReduction(r, -1, False)


def coefficient_sum(f, ell):
    """The chi-free factor 2^(-ell) * sum_i 4^(-i) C(ell,2i) C(2i,i) in F_q."""
    _require_odd(f)
    if not 0 < ell < (f.q - 1) // 2:
        raise PreconditionError(
            f"requires 0 < ell < (q-1)/2, got ell={ell} for q={f.q}")
    p = f.p
    inv2 = pow(2, -1, p)
    inv4 = inv2 * inv2 % p
    total = 0
    pow4 = 1  # 4^(-i)
    for i in range(ell // 2 + 1):
        total = (total
                 + pow4 * binom_mod_p(ell, 2 * i, p) * binom_mod_p(2 * i, i, p)) % p
        pow4 = pow4 * inv4 % p
    return f.from_int(total * pow(inv2, ell, p))


def count_D_closed(f, spec):
    """|D| = (q - 2 - chi(-a) - chi(b) - chi(ab)) / 4, as an exact integer."""
    _require_odd(f)
    chi_neg_a = chi_of_minus_one(f.q) * spec.chi_a
    chi_ab = spec.chi_a * spec.chi_b
    num = f.q - 2 - chi_neg_a - spec.chi_b - chi_ab
    assert num % 4 == 0 and num >= 0
    return num // 4


def power_sum_closed(f, spec, k):
    """Sum of x^k over D, evaluated in closed form.

    For k a multiple of (q-1)/2 the power is constant on a chi class and
    the sum collapses to chi(a)^m * |D| with m = k / ((q-1)/2); otherwise
    the reduced exponent (ell, eps) drives the binomial expression.
    """
    _require_odd(f)
    q, p = f.q, f.p
    red = reduce_exponent(q, k)
    if red.degenerate:
        m = k // ((q - 1) // 2)
        sign = 1 if spec.chi_a == 1 else (-1) ** (m % 2)
        return f.from_int(sign * count_D_closed(f, spec))
    chi_c = spec.chi_a * spec.chi_b if red.eps == 1 else spec.chi_b
    chi_neg_a = chi_of_minus_one(q) * spec.chi_a
    num = ((1 + chi_neg_a) % p
           + chi_c * coefficient_sum(f, red.ell).coeffs[0]) % p
    den = 4 * (-1) ** (red.ell + 1) % p
    return f.from_int(num * pow(den, -1, p))
