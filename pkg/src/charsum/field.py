"""Exact arithmetic in GF(p^n), plus the number-theoretic helpers the
closed-form formulas need (quadratic character, trace, Lucas binomials).

Elements of GF(p^n) are coefficient vectors over GF(p) with respect to the
power basis of a deterministic modulus: the lexicographically smallest monic
irreducible of degree n (coefficients compared from degree n-1 down to the
constant term).  Internally a prime-field element is a bare int in [0, p)
and an extension element is a tuple of n such ints, constant term first.

Fields are immutable and cached, so building the same (p, n) twice returns
the same object and per-field lookup tables (e.g. the chi table) are shared.
"""

import functools
import math
import os

DEFAULT_MAX_Q = 1 << 20


class PreconditionError(ValueError):
    """A documented guard was violated (maps to CLI exit code 2)."""


def max_field_order():
    """Size bound for constructible fields; override with CHARSUM_MAX_Q."""
    raw = os.environ.get("CHARSUM_MAX_Q")
    return int(raw) if raw else DEFAULT_MAX_Q


def is_prime(m):
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


def is_prime_power(q):
    """Return the unique (p, n) with q = p^n and p prime, else None."""
    if q < 2:
        return None
    for p in range(2, math.isqrt(q) + 1):
        if q % p == 0:
            n = 0
            m = q
            while m % p == 0:
                m //= p
                n += 1
            return (p, n) if m == 1 else None
    return (q, 1)  # no divisor up to sqrt(q): q is prime


def binom_mod_p(n, k, p):
    """C(n, k) mod p via Lucas' theorem (digit-by-digit in base p)."""
    if k < 0 or k > n:
        return 0
    out = 1
    while n or k:
        nd, kd = n % p, k % p
        if kd > nd:
            return 0
        out = out * math.comb(nd, kd) % p
        n //= p
        k //= p
    return out


# ---------------------------------------------------------------------------
# polynomial helpers over GF(p); coefficient lists ascending, ints in [0, p)

def _poly_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(num, den, p):
    """Remainder of num by monic-after-scaling den, both ascending lists."""
    num = list(num)
    dd = len(den) - 1
    inv_lead = pow(den[-1], -1, p)
    while len(num) - 1 >= dd and any(num):
        _poly_trim(num)
        if len(num) - 1 < dd:
            break
        factor = num[-1] * inv_lead % p
        shift = len(num) - 1 - dd
        for i, c in enumerate(den):
            num[shift + i] = (num[shift + i] - factor * c) % p
        _poly_trim(num)
    return num


def _is_irreducible(coeffs, p):
    """Trial division by every monic polynomial of degree <= deg/2.

    Exhaustive and slow, but the degrees in scope are tiny.
    """
    n = len(coeffs) - 1
    for d in range(1, n // 2 + 1):
        for idx in range(p ** d):
            cand = []
            m = idx
            for _ in range(d):
                cand.append(m % p)
                m //= p
            cand.append(1)  # monic
            if not _poly_mod(coeffs, cand, p):
                return False
    return True


def _smallest_irreducible(p, n):
    """Lexicographically smallest monic irreducible of degree n over GF(p),
    ordering candidates by the coefficient tuple from degree n-1 downward."""
    for idx in range(p ** n):
        low = []
        m = idx
        for _ in range(n):
            low.append(m % p)
            m //= p
        low.reverse()  # idx digits give (c_{n-1}, ..., c_0) in lex order
        coeffs = low[::-1] + [1]
        if coeffs[0] == 0:
            continue  # divisible by X
        if _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible found")  # cannot happen


# ---------------------------------------------------------------------------

class FieldElement:
    """Element of a Field; immutable, hashable, exact."""

    __slots__ = ("field", "raw")

    def __init__(self, field, raw):
        self.field = field
        self.raw = raw

    @property
    def coeffs(self):
        """Coefficient vector over the prime field, constant term first."""
        if self.field.n == 1:
            return (self.raw,)
        return self.raw

    @property
    def index(self):
        """Position in the field's canonical element enumeration."""
        return self.field.index_of(self.raw)

    def is_zero(self):
        return self.raw == self.field.zero_raw

    def _same(self, other):
        if not isinstance(other, FieldElement) or other.field is not self.field:
            raise PreconditionError("operands belong to different fields")
        return other

    def __add__(self, other):
        other = self._same(other)
        return FieldElement(self.field, self.field.raw_add(self.raw, other.raw))

    def __sub__(self, other):
        other = self._same(other)
        return FieldElement(self.field, self.field.raw_sub(self.raw, other.raw))

    def __mul__(self, other):
        other = self._same(other)
        return FieldElement(self.field, self.field.raw_mul(self.raw, other.raw))

    def __truediv__(self, other):
        other = self._same(other)
        return FieldElement(self.field, self.field.raw_div(self.raw, other.raw))

    def __neg__(self):
        return FieldElement(self.field, self.field.raw_neg(self.raw))

    def __pow__(self, k):
        return FieldElement(self.field, self.field.raw_pow(self.raw, k))

    def inverse(self):
        return FieldElement(self.field, self.field.raw_inv(self.raw))

    def __eq__(self, other):
        return (isinstance(other, FieldElement)
                and other.field is self.field and other.raw == self.raw)

    def __hash__(self):
        return hash((self.field.p, self.field.n, self.raw))

    def __str__(self):
        if self.field.n == 1:
            return str(self.raw)
        return ",".join(str(c) for c in self.raw)

    def __repr__(self):
        return f"FieldElement(GF({self.field.q}), {self})"


class Field:
    """A fully materialized GF(p^n) with deterministic modulus."""

    def __init__(self, p, n, modulus):
        self.p = p
        self.n = n
        self.q = p ** n
        self.modulus = modulus  # ascending coefficients, length n+1, monic
        if n == 1:
            self.zero_raw = 0
            self.one_raw = 1
        else:
            self.zero_raw = (0,) * n
            self.one_raw = (1,) + (0,) * (n - 1)
            # X^(n+i) mod modulus for i in 0..n-2, used to fold products
            self._red = []
            cur = [(-c) % p for c in modulus[:n]]  # X^n mod modulus
            self._red.append(tuple(cur))
            for _ in range(n - 2):
                shifted = [0] + cur[:-1]
                top = cur[-1]
                cur = [(shifted[j] + top * self._red[0][j]) % p
                       for j in range(n)]
                self._red.append(tuple(cur))
        self._chi_table = None

    # -- raw arithmetic ----------------------------------------------------

    def raw_add(self, a, b):
        if self.n == 1:
            return (a + b) % self.p
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def raw_sub(self, a, b):
        if self.n == 1:
            return (a - b) % self.p
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def raw_neg(self, a):
        if self.n == 1:
            return -a % self.p
        p = self.p
        return tuple(-x % p for x in a)

    def raw_mul(self, a, b):
        if self.n == 1:
            return a * b % self.p
        p, n = self.p, self.n
        conv = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    conv[i + j] += x * y
        out = conv[:n]
        for i in range(n, 2 * n - 1):
            c = conv[i]
            if c:
                row = self._red[i - n]
                for j in range(n):
                    out[j] += c * row[j]
        return tuple(c % p for c in out)

    def raw_inv(self, a):
        if a == self.zero_raw:
            raise PreconditionError("zero element has no inverse")
        if self.n == 1:
            return pow(a, -1, self.p)
        return self.raw_pow(a, self.q - 2)

    def raw_div(self, a, b):
        return self.raw_mul(a, self.raw_inv(b))

    def raw_pow(self, a, k):
        """a^k; the exponent is reduced mod q-1 for nonzero a."""
        if a == self.zero_raw:
            if k < 0:
                raise PreconditionError("negative power of zero")
            return self.one_raw if k == 0 else self.zero_raw
        e = k % (self.q - 1)
        if self.n == 1:
            return pow(a, e, self.p)
        out = self.one_raw
        base = a
        while e:
            if e & 1:
                out = self.raw_mul(out, base)
            base = self.raw_mul(base, base)
            e >>= 1
        return out

    # -- element enumeration (odometer order, zero first) -------------------

    def raw_at(self, i):
        """Element whose coefficient vector is the base-p digits of i."""
        if self.n == 1:
            return i
        digits = []
        for _ in range(self.n):
            digits.append(i % self.p)
            i //= self.p
        return tuple(digits)

    def index_of(self, raw):
        if self.n == 1:
            return raw
        i = 0
        for c in reversed(raw):
            i = i * self.p + c
        return i

    def elements(self):
        """All q elements in canonical enumeration order."""
        return (FieldElement(self, self.raw_at(i)) for i in range(self.q))

    def element(self, coeffs):
        """Wrap a coefficient vector (constant term first) as an element."""
        coeffs = tuple(c % self.p for c in coeffs)
        if len(coeffs) != self.n:
            raise PreconditionError(
                f"expected {self.n} coefficients, got {len(coeffs)}")
        return FieldElement(self, coeffs[0] if self.n == 1 else coeffs)

    def from_int(self, m):
        """Embed the integer m as the constant m mod p."""
        m %= self.p
        return FieldElement(self, m if self.n == 1 else (m,) + (0,) * (self.n - 1))

    def zero(self):
        return FieldElement(self, self.zero_raw)

    def one(self):
        return FieldElement(self, self.one_raw)

    # -- chi ----------------------------------------------------------------

    def chi_raw(self, raw):
        """Quadratic character of a raw element: -1, 0 or +1."""
        if self.q % 2 == 0:
            raise PreconditionError("quadratic character requires odd field order")
        if raw == self.zero_raw:
            return 0
        r = self.raw_pow(raw, (self.q - 1) // 2)
        return 1 if r == self.one_raw else -1

    def chi_table(self):
        """chi indexed by element position in the canonical enumeration."""
        if self._chi_table is None:
            self._chi_table = [self.chi_raw(self.raw_at(i)) for i in range(self.q)]
        return self._chi_table

    def modulus_str(self):
        terms = []
        for d in range(self.n, -1, -1):
            c = self.modulus[d]
            if not c:
                continue
            if d == 0:
                terms.append(str(c))
            else:
                x = "X" if d == 1 else f"X^{d}"
                terms.append(x if c == 1 else f"{c}*{x}")
        return "+".join(terms) if terms else "0"

    def __repr__(self):
        return f"Field(GF({self.q}))"


@functools.lru_cache(maxsize=None)
def _build_field_cached(p, n):
    if n == 1:
        return Field(p, 1, (0, 1))  # X - 0 convention: no extension arithmetic
    return Field(p, n, _smallest_irreducible(p, n))


def build_field(p, n):
    """GF(p^n) with the lexicographically smallest monic irreducible modulus."""
    if n < 1:
        raise PreconditionError(f"extension degree must be >= 1, got {n}")
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    if p ** n > max_field_order():
        raise PreconditionError(
            f"field order {p}^{n} exceeds bound {max_field_order()}")
    return _build_field_cached(p, n)


def field_arith(x, y, op):
    """Binary/unary field arithmetic by name: add|sub|mul|div|inv|pow."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "inv":
        return x.inverse()
    if op == "pow":
        return x ** y
    raise PreconditionError(f"unknown operation {op!r}")


def from_integer(f, m):
    return f.from_int(m)


def chi(f, x):
    """Quadratic character x^((q-1)/2), mapped to {-1, 0, +1}."""
    return f.chi_raw(x.raw)


def trace_to_prime(f, x):
    """Tr(x) = x + x^p + ... + x^(p^(n-1)), returned as an int in [0, p)."""
    if f.n == 1:
        return x.raw
    acc = x.raw
    t = x.raw
    for _ in range(f.n - 1):
        t = f.raw_pow(t, f.p)
        acc = f.raw_add(acc, t)
    assert all(c == 0 for c in acc[1:]), "trace landed outside the prime field"
    return acc[0]


# ---------------------------------------------------------------------------
# field / element I/O

def parse_field_spec(spec):
    """Accept "q" (factored into p^n) or explicit "p^n"."""
    spec = spec.strip()
    if "^" in spec:
        ps, ns = spec.split("^", 1)
        try:
            p, n = int(ps), int(ns)
        except ValueError:
            raise PreconditionError(f"bad field spec {spec!r}") from None
        return build_field(p, n)
    try:
        q = int(spec)
    except ValueError:
        raise PreconditionError(f"bad field spec {spec!r}") from None
    pn = is_prime_power(q)
    if pn is None:
        raise PreconditionError(f"{q} is not a prime power")
    return build_field(*pn)


def parse_element(f, text):
    """Bare integer for prime fields; comma-separated coefficients
    (constant term first) for extensions.  An integer is always accepted
    and embedded via from_integer."""
    text = text.strip()
    if "," in text:
        coeffs = [int(t) for t in text.split(",")]
        if len(coeffs) != f.n:
            raise PreconditionError(
                f"expected {f.n} coefficients for GF({f.q}), got {len(coeffs)}")
        return f.element(coeffs)
    return f.from_int(int(text))
