"""Brute-force ground truth: set enumeration, value-set scans and the
theta/phi parametrization check.

Nothing here calls the closed-form modules; the only shared code is the
basic field arithmetic.  Scans are exact.  For prime fields the polynomial
scan is vectorized with int64 numpy arithmetic, which is exact for the
field orders in scope (coefficients and points are < 2^20, so every
intermediate Horner product fits comfortably in 64 bits).
"""

from collections import Counter

import numpy as np

from .field import FieldElement, PreconditionError

# a polynomial much sparser than its degree is evaluated term-by-term
# with modular exponentiation instead of Horner's rule
_SPARSE_FACTOR = 3


def _require_odd(f):
    if f.q % 2 == 0:
        raise PreconditionError("requires a field of odd order")


def _raw_coeffs(f, poly):
    """Accept FieldElement or int coefficients, ascending degree."""
    out = []
    for c in poly:
        if isinstance(c, FieldElement):
            if c.field is not f:
                raise PreconditionError("coefficient from a different field")
            out.append(c.raw)
        else:
            out.append(f.from_int(c).raw)
    while len(out) > 1 and out[-1] == f.zero_raw:
        out.pop()
    return out


def _eval_all_prime(f, coeffs):
    """Values of the polynomial at every x in a prime field (numpy int64)."""
    p = f.q
    xs = np.arange(p, dtype=np.int64)
    nonzero = [(d, c) for d, c in enumerate(coeffs) if c]
    if len(coeffs) > _SPARSE_FACTOR * max(len(nonzero), 1) + 4:
        vals = np.zeros(p, dtype=np.int64)
        for d, c in nonzero:
            term = np.array([pow(int(x), d, p) for x in range(p)], dtype=np.int64)
            vals = (vals + c * term) % p
    else:
        vals = np.zeros(p, dtype=np.int64)
        for c in reversed(coeffs):
            vals = (vals * xs + c) % p
    return vals


def _eval_all_ext(f, coeffs):
    """Values of the polynomial at every x of an extension field."""
    nonzero = [(d, c) for d, c in enumerate(coeffs) if c != f.zero_raw]
    sparse = len(coeffs) > _SPARSE_FACTOR * max(len(nonzero), 1) + 4
    vals = []
    for i in range(f.q):
        x = f.raw_at(i)
        if sparse:
            acc = f.zero_raw
            for d, c in nonzero:
                acc = f.raw_add(acc, f.raw_mul(c, f.raw_pow(x, d)))
        else:
            acc = f.zero_raw
            for c in reversed(coeffs):
                acc = f.raw_add(f.raw_mul(acc, x), c)
        vals.append(acc)
    return vals


def _value_profile(f, coeffs):
    """(sum of distinct values as raw, {raw value: preimage count})."""
    if f.n == 1:
        vals = _eval_all_prime(f, [c % f.p for c in coeffs])
        uniq, counts = np.unique(vals, return_counts=True)
        total = int(uniq.sum() % f.p)
        profile = {int(v): int(c) for v, c in zip(uniq, counts)}
        return total, profile
    vals = _eval_all_ext(f, coeffs)
    profile = Counter(vals)
    total = f.zero_raw
    for v in profile:
        total = f.raw_add(total, v)
    return total, profile


class ValueSetSummary:
    """Image of a polynomial map on F_q: the distinct values, their count,
    their field sum, and the preimage multiplicity of each value."""

    __slots__ = ("field", "_profile", "_sum_raw")

    def __init__(self, field, sum_raw, profile):
        self.field = field
        self._sum_raw = sum_raw
        self._profile = profile

    @property
    def size(self):
        return len(self._profile)

    @property
    def sum(self):
        return FieldElement(self.field, self._sum_raw)

    @property
    def values(self):
        return frozenset(FieldElement(self.field, v) for v in self._profile)

    @property
    def preimage_counts(self):
        return {FieldElement(self.field, v): c for v, c in self._profile.items()}

    def raw_values(self):
        return set(self._profile)

    def count_of_raw(self, raw):
        return self._profile.get(raw, 0)


def value_set(f, poly):
    """Full scan of the polynomial over F_q."""
    return ValueSetSummary(f, *_value_profile(f, _raw_coeffs(f, poly)))


def _enumerate_D_raw(f, chi_a, chi_b):
    table = f.chi_table()
    if f.n == 1:
        p = f.q
        return [x for x in range(p) if table[x] == chi_a
                and table[(x + 1) % p] == chi_b]
    out = []
    one = f.one_raw
    for i in range(f.q):
        if table[i] != chi_a:
            continue
        x = f.raw_at(i)
        if table[f.index_of(f.raw_add(x, one))] == chi_b:
            out.append(x)
    return out


def enumerate_D(f, spec):
    """All x with chi(x) = chi_a and chi(x+1) = chi_b, by exhaustive scan."""
    _require_odd(f)
    return {FieldElement(f, r) for r in _enumerate_D_raw(f, spec.chi_a, spec.chi_b)}


def power_sum_oracle(f, spec, k):
    """Literal fold of x^k over the enumerated set; empty set gives 0."""
    _require_odd(f)
    raws = _enumerate_D_raw(f, spec.chi_a, spec.chi_b)
    if f.n == 1:
        p = f.q
        return f.from_int(sum(pow(x, k, p) for x in raws) % p)
    acc = f.zero_raw
    for x in raws:
        acc = f.raw_add(acc, f.raw_pow(x, k))
    return FieldElement(f, acc)


def T_oracle(f):
    """{ S(X^4 + a X^2) : a in F_q } by the full O(q^2) scan."""
    _require_odd(f)
    out = set()
    for i in range(f.q):
        a = f.raw_at(i)
        coeffs = [f.zero_raw, f.zero_raw, a, f.zero_raw, f.one_raw]
        total, _ = _value_profile(f, coeffs)
        out.add(FieldElement(f, total))
    return out


def theta_phi_check(f, a):
    """Verify the parametrization behind the power-sum formula for one a:

    theta(t) = ((t^2+a)/(2t), (t^2-a)/(2t)) is a bijection from
    {t in F_q^*: t^4 != a^2} onto C = {(u,v) in (F_q^*)^2 : u^2-v^2 = a},
    and phi(u,v) = v^2/a maps C onto D (with chi(b) = chi(a)) exactly
    4-to-1.  Also asserts |Lambda| = 2 + chi(a) + chi(-a) for the excluded
    set Lambda = {t : t^4 = a^2}.
    """
    _require_odd(f)
    if a.is_zero():
        raise PreconditionError("requires a != 0")
    araw = a.raw
    a2 = f.raw_mul(araw, araw)
    chi_a = f.chi_raw(araw)
    chi_neg_a = f.chi_raw(f.raw_neg(araw))

    nonzero = [f.raw_at(i) for i in range(1, f.q)] if f.n == 1 else \
              [r for r in (f.raw_at(i) for i in range(f.q)) if r != f.zero_raw]

    lam = [t for t in nonzero if f.raw_pow(t, 4) == a2]
    assert len(lam) == 2 + chi_a + chi_neg_a, "wrong |Lambda|"
    lam_set = set(lam)

    # C built independently of theta, via a square-root table
    sqrts = {}
    for t in nonzero:
        sqrts.setdefault(f.raw_mul(t, t), []).append(t)
    C = set()
    for u in nonzero:
        v2 = f.raw_sub(f.raw_mul(u, u), araw)
        for v in sqrts.get(v2, ()):
            C.add((u, v))

    # theta: injective into C and onto C
    seen = set()
    inv2 = f.raw_inv(f.from_int(2).raw)
    for t in nonzero:
        if t in lam_set:
            continue
        t2 = f.raw_mul(t, t)
        inv2t = f.raw_mul(inv2, f.raw_inv(t))
        u = f.raw_mul(f.raw_add(t2, araw), inv2t)
        v = f.raw_mul(f.raw_sub(t2, araw), inv2t)
        if (u, v) not in C or (u, v) in seen:
            return False
        seen.add((u, v))
    if seen != C:
        return False

    # phi: 4-to-1 from C onto D with both classes equal to chi(a)
    inv_a = f.raw_inv(araw)
    counts = Counter(f.raw_mul(f.raw_mul(v, v), inv_a) for _, v in C)
    d_raws = set(_enumerate_D_raw(f, chi_a, chi_a))
    if set(counts) != d_raws:
        return False
    return all(c == 4 for c in counts.values())
