import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charsum import (
    PreconditionError,
    binom_mod_p,
    build_field,
    chi,
    field_arith,
    from_integer,
    is_prime_power,
    parse_element,
    parse_field_spec,
    trace_to_prime,
)
from charsum.harness import enumerate_prime_powers


def test_build_prime_field():
    f = build_field(7, 1)
    assert (f.p, f.n, f.q) == (7, 1, 7)
    assert f.modulus == (0, 1)


def test_build_gf9_modulus_is_x2_plus_1():
    f = build_field(3, 2)
    assert f.modulus == (1, 0, 1)  # X^2 + 1: no root mod 3, lexicographically first
    assert f.modulus_str() == "X^2+1"


def test_build_field_rejects_nonprime():
    with pytest.raises(PreconditionError):
        build_field(4, 1)


def test_build_field_rejects_oversize(monkeypatch):
    monkeypatch.setenv("CHARSUM_MAX_Q", "100")
    with pytest.raises(PreconditionError):
        build_field(101, 1)


def test_modulus_irreducible_no_roots():
    # degree-2/3 moduli have no root in the prime field
    for p, n in [(3, 2), (5, 2), (7, 2), (2, 3), (3, 3)]:
        f = build_field(p, n)
        for x in range(p):
            val = sum(c * x ** d for d, c in enumerate(f.modulus)) % p
            assert val != 0


def test_element_enumeration_zero_first_distinct():
    for p, n in [(5, 1), (3, 2), (2, 4)]:
        f = build_field(p, n)
        els = list(f.elements())
        assert len(els) == f.q == len(set(els))
        assert els[0].is_zero()


def test_arith_gf7():
    f = build_field(7, 1)
    three, five = f.from_int(3), f.from_int(5)
    assert field_arith(three, five, "mul") == f.one()
    assert field_arith(three, f.one(), "mul") == three
    assert field_arith(three, five, "add") == f.from_int(1)
    assert field_arith(three, five, "sub") == f.from_int(5)
    assert field_arith(three, five, "div") == three * five.inverse()


def test_arith_gf9_t_squared():
    f = build_field(3, 2)
    t = f.element([0, 1])
    assert t * t == f.from_int(-1)


def test_mixed_field_operands_rejected():
    a = build_field(7, 1).one()
    b = build_field(5, 1).one()
    with pytest.raises(PreconditionError):
        a + b


def test_division_by_zero():
    f = build_field(7, 1)
    with pytest.raises(PreconditionError):
        f.one() / f.zero()
    with pytest.raises(PreconditionError):
        f.zero().inverse()


def test_pow_negative_exponent():
    f = build_field(7, 1)
    x = f.from_int(3)
    assert x ** -1 == x.inverse()
    assert x ** (f.q - 1) == f.one()
    with pytest.raises(PreconditionError):
        f.zero() ** -1


def test_from_integer():
    assert from_integer(build_field(7, 1), 8) == build_field(7, 1).one()
    f9 = build_field(3, 2)
    assert from_integer(f9, -1).coeffs == (2, 0)
    assert from_integer(build_field(5, 1), 10).is_zero()


def test_chi_gf7():
    f = build_field(7, 1)
    assert chi(f, f.zero()) == 0
    assert chi(f, f.from_int(2)) == 1
    assert chi(f, f.from_int(3)) == -1


def test_chi_rejects_even_field():
    f = build_field(2, 2)
    with pytest.raises(PreconditionError):
        chi(f, f.one())


def test_chi_multiplicative_and_census():
    for p, n, q in enumerate_prime_powers(3, 121, "odd"):
        f = build_field(p, n)
        table = f.chi_table()
        assert table.count(1) == (q - 1) // 2
        assert table.count(-1) == (q - 1) // 2
        assert table[0] == 0
        for i in range(1, q):
            x = f.raw_at(i)
            for j in range(i, q):
                y = f.raw_at(j)
                assert (f.chi_raw(f.raw_mul(x, y))
                        == table[i] * table[j])


def test_geometric_power_sums():
    # sum over F_q^* of t^i is -1 when (q-1) | i and 0 otherwise
    for p, n, q in enumerate_prime_powers(2, 64, "all"):
        f = build_field(p, n)
        for i in list(range(1, q)) + [q - 1, 2 * (q - 1)]:
            acc = f.zero_raw
            for j in range(1, q):
                acc = f.raw_add(acc, f.raw_pow(f.raw_at(j), i))
            expected = f.from_int(-1).raw if i % (q - 1) == 0 else f.zero_raw
            assert acc == expected


def test_trace_examples():
    f9 = build_field(3, 2)
    assert trace_to_prime(f9, f9.zero()) == 0
    assert trace_to_prime(f9, f9.element([0, 1])) == 0
    assert trace_to_prime(f9, f9.one()) == 2


def test_trace_surjective_uniform_fibers():
    for p, n, q in enumerate_prime_powers(2, 729, "all"):
        f = build_field(p, n)
        from collections import Counter
        fibers = Counter(trace_to_prime(f, x) for x in f.elements())
        assert set(fibers) == set(range(p))
        assert all(c == q // p for c in fibers.values())


def test_lucas_examples():
    assert binom_mod_p(5, 2, 7) == 3
    assert binom_mod_p(7, 1, 7) == 0
    assert binom_mod_p(4, 2, 3) == 0


@settings(max_examples=200)
@given(st.integers(0, 40), st.integers(0, 45),
       st.sampled_from([2, 3, 5, 7, 11]))
def test_lucas_matches_integer_binomial(n, k, p):
    expected = math.comb(n, k) % p if k <= n else 0
    assert binom_mod_p(n, k, p) == expected


def test_is_prime_power():
    assert is_prime_power(9) == (3, 2)
    assert is_prime_power(12) is None
    assert is_prime_power(343) == (7, 3)
    assert is_prime_power(2) == (2, 1)
    assert is_prime_power(1) is None


def test_parse_field_spec():
    assert parse_field_spec("9").q == 9
    assert parse_field_spec("3^2") is parse_field_spec("9")
    with pytest.raises(PreconditionError):
        parse_field_spec("12")


def test_element_io_roundtrip():
    f7 = build_field(7, 1)
    assert str(parse_element(f7, "5")) == "5"
    f9 = build_field(3, 2)
    assert str(parse_element(f9, "1,2")) == "1,2"
    assert parse_element(f9, "4") == f9.from_int(1)


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_field_axioms_gf49(a, b, c):
    f = build_field(7, 2)
    t = f.element([0, 1])
    x = f.from_int(a) + f.from_int(b) * t
    y = f.from_int(b) + f.from_int(c) * t
    z = f.from_int(c) + f.from_int(a) * t
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    if not x.is_zero():
        assert x * x.inverse() == f.one()
