import pytest

from charsum import (
    DSpec,
    PreconditionError,
    build_field,
    coefficient_sum,
    count_D_closed,
    enumerate_D,
    power_sum_closed,
    power_sum_oracle,
    reduce_exponent,
)
from charsum.harness import enumerate_prime_powers


def test_reduce_exponent_examples():
    r = reduce_exponent(7, 1)
    assert (r.ell, r.eps, r.degenerate) == (1, 1, False)
    r = reduce_exponent(7, 4)
    assert (r.ell, r.eps, r.degenerate) == (2, -1, False)
    assert reduce_exponent(7, 3).degenerate


def test_reduce_exponent_scan_uniqueness():
    for q in (5, 7, 9, 11, 13):
        e = (q - 1) // 2
        for k in range(-2 * q, 2 * q):
            r = reduce_exponent(q, k)
            candidates = [(ell, eps) for eps in (1, -1)
                          for ell in range(1, e)
                          if (k - eps * ell) % (q - 1) == 0]
            if k % e == 0:
                assert r.degenerate and not candidates
            else:
                assert candidates == [(r.ell, r.eps)]


def test_reduce_exponent_rejects_even():
    with pytest.raises(PreconditionError):
        reduce_exponent(8, 1)


def test_reduce_exponent_q3_all_degenerate():
    for k in range(-5, 6):
        assert reduce_exponent(3, k).degenerate


def test_coefficient_sum_small_ell():
    f = build_field(101, 1)
    inv = lambda m: pow(m, -1, 101)
    assert coefficient_sum(f, 1) == f.from_int(inv(2))
    assert coefficient_sum(f, 2) == f.from_int(3 * inv(8))
    assert coefficient_sum(f, 3) == f.from_int(5 * inv(16))


def test_coefficient_sum_range_guard():
    f = build_field(7, 1)
    with pytest.raises(PreconditionError):
        coefficient_sum(f, 3)  # (q-1)/2 = 3 is out of range
    with pytest.raises(PreconditionError):
        coefficient_sum(f, 0)


def test_power_sum_gf7_examples():
    f = build_field(7, 1)
    spec = DSpec(1, 1)
    assert power_sum_closed(f, spec, 1) == f.from_int(1)
    assert power_sum_closed(f, spec, 2) == f.from_int(1)
    assert power_sum_closed(f, spec, 3) == f.from_int(1)  # degenerate branch


def test_power_sum_k1_special_form():
    # sum over D of x = (1 + chi(-a))/4 + chi(ab)/8 whenever q > 3
    for p, n, q in enumerate_prime_powers(5, 81, "odd"):
        f = build_field(p, n)
        chi_m1 = 1 if q % 4 == 1 else -1
        for ca in (1, -1):
            for cb in (1, -1):
                lhs = power_sum_closed(f, DSpec(ca, cb), 1)
                inv4 = pow(4, -1, p)
                inv8 = pow(8, -1, p)
                rhs = f.from_int((1 + chi_m1 * ca) * inv4 + ca * cb * inv8)
                assert lhs == rhs


def test_power_sum_degenerate_negative_m():
    f = build_field(5, 1)  # e = 2, so k = -2 is degenerate with m = -1
    for ca in (1, -1):
        for cb in (1, -1):
            spec = DSpec(ca, cb)
            assert power_sum_closed(f, spec, -2) == power_sum_oracle(f, spec, -2)


def test_power_sum_rejects_even_field():
    f = build_field(2, 2)
    with pytest.raises(PreconditionError):
        power_sum_closed(f, DSpec(1, 1), 1)


def test_count_examples():
    f7 = build_field(7, 1)
    assert count_D_closed(f7, DSpec(1, 1)) == 1
    assert count_D_closed(f7, DSpec(1, -1)) == 2
    assert count_D_closed(build_field(3, 1), DSpec(1, 1)) == 0


def test_dspec_rejects_zero_class():
    with pytest.raises(PreconditionError):
        DSpec(0, 1)


def test_inversion_symmetry_small():
    # sum over D(a,b) of x^(-ell) = sum over D(a,ab) of x^ell
    for p, n, q in enumerate_prime_powers(5, 49, "odd"):
        f = build_field(p, n)
        for ca in (1, -1):
            for cb in (1, -1):
                for ell in range(1, (q - 1) // 2):
                    assert (power_sum_closed(f, DSpec(ca, cb), -ell)
                            == power_sum_closed(f, DSpec(ca, ca * cb), ell))


def test_representative_independence():
    # D built from explicit a, b depends only on their chi classes
    for q in (7, 11, 13):
        f = build_field(q, 1)
        table = f.chi_table()
        for ca in (1, -1):
            for cb in (1, -1):
                reference = None
                for a in range(1, q):
                    if table[a] != ca:
                        continue
                    for b in range(1, q):
                        if table[b] != cb:
                            continue
                        d = {x for x in range(q)
                             if table[x] == table[a]
                             and table[(x + 1) % q] == table[b]}
                        if reference is None:
                            reference = d
                        assert d == reference
                made = {x.raw for x in enumerate_D(f, DSpec(ca, cb))}
                assert made == reference
