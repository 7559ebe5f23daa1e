"""Euclid, modular arithmetic, continued fractions, period recovery, primality."""

import pytest

from shorsim import (
    continued_fraction_convergents,
    extended_gcd,
    factor_from_period,
    gcd,
    is_probable_prime,
    mod_pow,
    multiplicative_order,
    recover_period,
)
from shorsim.numtheory import U64_LIMIT


def naive_mod_pow(a, e, m):
    acc = 1 % m
    for _ in range(e):
        acc = acc * a % m
    return acc


class TestGcd:
    def test_basic(self):
        assert gcd(12, 18) == 6

    def test_coprime(self):
        assert gcd(7, 15) == 1

    def test_divisor_of_worked_instance(self):
        assert gcd(12827, 101) == 101

    def test_zero_zero_rejected(self):
        with pytest.raises(ValueError):
            gcd(0, 0)


class TestExtendedGcd:
    def test_inverse_of_3_mod_7(self):
        g, m_inv, k = extended_gcd(3, 7)
        assert g == 1
        assert m_inv % 7 == 5
        # exhaustive cross-check
        assert [v for v in range(7) if v * 3 % 7 == 1] == [5]

    def test_no_inverse_flagged_by_gcd(self):
        g, _, _ = extended_gcd(2, 4)
        assert g == 2

    def test_bezout_identity_and_inverses(self, rng):
        checked = 0
        while checked < 1000:
            m = int(rng.integers(1, 10_000))
            n = int(rng.integers(1, 10_000))
            g, m_inv, k = extended_gcd(m, n)
            assert m_inv * m == k * n + g
            if g == 1:
                assert (m_inv * m) % n == 1 % n
                checked += 1


class TestModPow:
    def test_hand_computable_instance(self):
        assert mod_pow(8, 65, 37) == 23
        assert naive_mod_pow(8, 65, 37) == 23

    def test_zero_exponent(self):
        assert mod_pow(5, 0, 9) == 1
        assert mod_pow(123456, 0, 2) == 1

    def test_matches_naive_on_small_grid(self):
        for m in range(1, 41):
            for a in range(0, 41):
                acc = 1 % m
                for e in range(0, 41):
                    assert mod_pow(a, e, m) == acc
                    acc = acc * a % m

    def test_zero_modulus_rejected(self):
        with pytest.raises(ValueError):
            mod_pow(2, 3, 0)

    def test_large_operands(self):
        a, e, m = 2**61 - 1, 2**31, 2**61 + 15
        assert mod_pow(a, e, m) == pow(a, e, m)


class TestMultiplicativeOrder:
    def test_order_of_2_mod_15(self):
        assert multiplicative_order(2, 15) == 4

    def test_order_of_one(self):
        for n in (2, 9, 100):
            assert multiplicative_order(1, n) == 1

    def test_order_divides_group_order(self):
        r = multiplicative_order(7, 15)
        assert r == 4
        assert (3 - 1) * (5 - 1) % r == 0

    def test_non_coprime_rejected(self):
        with pytest.raises(ValueError, match="coprime"):
            multiplicative_order(6, 15)


class TestConvergents:
    def test_9_over_64(self):
        assert [(c.p, c.q) for c in continued_fraction_convergents(9, 64)] == [
            (0, 1), (1, 7), (9, 64),
        ]

    def test_55_over_64(self):
        assert [(c.p, c.q) for c in continued_fraction_convergents(55, 64)] == [
            (0, 1), (1, 1), (6, 7), (55, 64),
        ]

    def test_one_half(self):
        assert [(c.p, c.q) for c in continued_fraction_convergents(1, 2)] == [
            (0, 1), (1, 2),
        ]

    def test_zero_numerator(self):
        assert [(c.p, c.q) for c in continued_fraction_convergents(0, 9)] == [(0, 1)]

    def test_zero_denominator_rejected(self):
        with pytest.raises(ValueError):
            continued_fraction_convergents(1, 0)

    def test_lowest_terms_and_increasing_denominators(self, rng):
        for _ in range(200):
            den = int(rng.integers(2, 5000))
            num = int(rng.integers(0, den + 1))
            seq = continued_fraction_convergents(num, den)
            assert (seq[-1].p, seq[-1].q) == (num // gcd(num, den) if num else 0,
                                              den // gcd(num, den) if num else 1)
            for c in seq:
                assert gcd(c.p, c.q) == 1 if c.p else c.q == 1
            denominators = [c.q for c in seq[1:]]
            assert all(b > a for a, b in zip(denominators, denominators[1:]))

    def test_best_approximation_bound(self, rng):
        for _ in range(200):
            den = int(rng.integers(2, 5000))
            num = int(rng.integers(1, den))
            for c in continued_fraction_convergents(num, den):
                assert abs(num / den - c.p / c.q) < 1 / c.q**2


class TestRecoverPeriod:
    def test_recovers_order_4_from_192_of_256(self):
        cand = recover_period(192, 256, 15, 2)
        assert cand is not None and cand.verified
        assert cand.r == 4
        assert (cand.convergent.p, cand.convergent.q) == (3, 4)

    def test_zero_measurement_gives_none(self):
        assert recover_period(0, 256, 15, 2) is None

    def test_denominator_7_from_55_of_64(self):
        # 2 has order 7 modulo 127; convergent 6/7 of 55/64 supplies it
        cand = recover_period(55, 64, 127, 2)
        assert cand is not None and cand.r == 7
        assert (cand.convergent.p, cand.convergent.q) == (6, 7)

    def test_completeness_for_small_periods(self):
        # any y = round(k*m/r) with k coprime to r and m >= r*r recovers exactly r
        instances = {4: (15, 2), 6: (9, 2), 10: (11, 2), 12: (13, 2), 18: (19, 2)}
        for r, (n, a) in instances.items():
            assert multiplicative_order(a, n) == r
            m = 1
            while m < r * r:
                m <<= 1
            for k in range(1, r):
                if gcd(k, r) != 1:
                    continue
                y = (2 * k * m + r) // (2 * r)
                cand = recover_period(y, m, n, a)
                assert cand is not None and cand.r == r

    def test_non_coprime_base_rejected(self):
        with pytest.raises(ValueError, match="factor"):
            recover_period(5, 16, 15, 6)


class TestPrimality:
    def test_worked_instance_factors_are_prime(self):
        assert is_probable_prime(101)
        assert is_probable_prime(127)
        assert not is_probable_prime(12827)

    def test_edge_definitions(self):
        assert is_probable_prime(2)
        assert not is_probable_prime(1)
        assert not is_probable_prime(0)

    def test_matches_trial_division_up_to_2000(self):
        def trial(n):
            if n < 2:
                return False
            d = 2
            while d * d <= n:
                if n % d == 0:
                    return False
                d += 1
            return True

        for n in range(2000):
            assert is_probable_prime(n) == trial(n), n

    def test_large_64_bit_inputs(self):
        assert is_probable_prime(2**61 - 1)          # Mersenne prime
        assert not is_probable_prime(2**64 - 1)      # 3 * 5 * 17 * ...
        assert is_probable_prime(18_446_744_073_709_551_557)  # largest prime < 2**64

    def test_input_cap(self):
        with pytest.raises(ValueError, match="64-bit"):
            is_probable_prime(U64_LIMIT)


class TestFactorFromPeriod:
    def test_base_7(self):
        assert factor_from_period(7, 4, 15) == (3, 5)

    def test_base_2(self):
        assert factor_from_period(2, 4, 15) == (3, 5)

    def test_odd_period_gives_none(self):
        # 4 has order 3 modulo 9... use a real odd-order instance: 2 mod 7
        assert multiplicative_order(2, 7) == 3
        assert factor_from_period(2, 3, 7) is None

    def test_trivial_root_gives_none(self):
        # 14 = -1 mod 15 has order 2 and 14^1 = -1: trivial square root
        assert factor_from_period(14, 2, 15) is None

    def test_unverified_period_rejected(self):
        with pytest.raises(ValueError, match="unverified"):
            factor_from_period(2, 3, 15)


class TestAlgebraicProperties:
    def test_euler_identity_sample(self):
        for p, q in [(3, 5), (3, 7), (5, 7), (11, 13), (17, 19)]:
            n = p * q
            phi = (p - 1) * (q - 1)
            for a in range(1, n):
                if gcd(a, n) == 1:
                    assert mod_pow(a, phi, n) == 1

    def test_period_characterization(self):
        # f(x) = f(y) iff r | (x - y), exhaustively for x, y < 3r
        for n in range(3, 101):
            for a in range(2, n):
                if gcd(a, n) != 1:
                    continue
                r = multiplicative_order(a, n)
                values = [mod_pow(a, xv, n) for xv in range(3 * r)]
                assert len(set(values[:r])) == r       # injective within a period
                assert values == values[:r] * 3        # exactly r-periodic
