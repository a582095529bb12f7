import random
from fractions import Fraction

import mpmath
import pytest

from orthodiff import identities as ids


def test_vandermonde_examples():
    assert ids.vandermonde_2f1(0, Fraction(3, 7), Fraction(5, 2)) == 1
    assert ids.vandermonde_2f1(2, 1, 3) == Fraction(1, 2)


@pytest.mark.parametrize("d", range(5))
def test_vandermonde_sign_step(d):
    # alpha = 2, d = k - j: 2F1(-(alpha+2-d), alpha+3+d; d+1; 1) = (-1)^(alpha+2-d)
    alpha = 2
    assert ids.vandermonde_2f1(alpha + 2 - d, alpha + 3 + d, d + 1) == (-1) ** (alpha + 2 - d)


def test_vandermonde_matches_direct_sum():
    rng = random.Random(7)
    checked = 0
    while checked < 500:
        n = rng.randint(0, 12)
        b = Fraction(rng.randint(-20, 20), rng.randint(1, 6))
        c = Fraction(rng.randint(-20, 20), rng.randint(1, 6))
        if c.denominator == 1 and c <= 0 and -c <= n - 1:
            with pytest.raises(ids.HypergeometricError):
                ids.vandermonde_2f1(n, b, c)
            continue
        assert ids.vandermonde_2f1(n, b, c) == ids.hyp2f1_terminating(n, b, c)
        checked += 1


def test_gauss_examples():
    assert ids.gauss_2f1_unit(0, Fraction(1, 3), 2) == 1
    assert ids.gauss_2f1_unit(-2, 1, 3) == mpmath.mpf("0.5")


def test_gauss_against_independent_series():
    a = Fraction(1, 2)
    value = ids.gauss_2f1_unit(-a - 2, a + 3, 4)
    with mpmath.workprec(256):
        reference = mpmath.hyp2f1(mpmath.mpf(-5) / 2, mpmath.mpf(7) / 2, 4, 1)
        assert abs(value - reference) < mpmath.mpf(10) ** -30


def test_gauss_against_partial_sums():
    rng = random.Random(11)
    for _ in range(50):
        a = Fraction(rng.randint(-30, 30), rng.randint(1, 5))
        b = Fraction(rng.randint(-30, 30), rng.randint(1, 5))
        excess = Fraction(rng.randint(3, 12), rng.randint(1, 2))  # c - a - b >= 1.5
        c = a + b + excess
        if (c.denominator == 1 and c <= 0) or any(t.denominator == 1 and t <= 0 for t in (a, b)):
            continue
        exact = ids.gauss_2f1_unit(a, b, c, 128)
        terms = 10000
        partial = ids.hyp2f1_partial(a, b, c, terms, 128)
        # terms decay like k^-(1+s) with s = c-a-b, so the tail is about last_term * K / s
        with mpmath.workprec(128):
            fa, fb, fc = (mpmath.mpf(t.numerator) / t.denominator for t in (a, b, c))
            last = mpmath.rf(fa, terms) * mpmath.rf(fb, terms) / (mpmath.rf(fc, terms) * mpmath.factorial(terms))
            bound = 4 * abs(last) * terms / float(excess) + mpmath.mpf(10) ** -30
        assert abs(exact - partial) <= bound


def test_gauss_errors():
    with pytest.raises(ids.HypergeometricError):
        ids.gauss_2f1_unit(Fraction(1, 2), Fraction(1, 2), 1)
    with pytest.raises(ids.HypergeometricError):
        ids.gauss_2f1_unit(Fraction(1, 2), Fraction(1, 3), -2)


def test_suma_zero_at_origin():
    report = ids.check_suma(Fraction(1, 2), [0])
    assert report.passed
    assert ids.suma_partial(Fraction(1, 2), 0, 60) == 0


def test_suma_integer_fast_path():
    for alpha in range(5):
        report = ids.check_suma(alpha, [1])
        assert report.passed and report.entries[0].to_text() == "sum a_i(x): ZERO"


def test_suma_rearranged_series_matches_closed_form():
    for alpha in (Fraction(1, 2), Fraction(7, 3)):
        assert ids.check_suma(alpha, ids.SUMA_X, method="columns").passed


def test_suma_partial_sums_converge_slowly():
    # the index-ordered partial sums approach the closed form, but only like 1/I
    a, x = Fraction(1, 2), Fraction(1)
    rhs = ids.suma_rhs(a, x)
    errs = [abs(mpmath.mpf(ids.suma_partial(a, x, n).numerator) / ids.suma_partial(a, x, n).denominator - rhs)
            for n in (30, 60, 120)]
    assert errs[0] > errs[1] > errs[2]
    assert 1.5 < errs[0] / errs[1] < 2.5 and 1.5 < errs[1] / errs[2] < 2.5


def test_suma2_examples():
    assert ids.check_suma2(0, 1).passed
    assert ids.check_suma2(0, 4).passed
    for k in range(1, 9):
        assert ids.check_suma2(2, k).passed


def test_sum_star_examples():
    assert ids.check_sumbstar(Fraction(1, 2), 4, 0).passed
    assert ids.check_sumbstar(0, 3, 1).passed
    assert ids._bstar_rhs(3, 1) == -1
    assert ids.check_sumcstar(0, 2, 2).passed


def test_sym_reduced_examples():
    assert ids.check_sym_reduced(0, 2).passed
    assert ids.check_sym_reduced(0, 0).passed
    assert ids.check_sym_reduced(2, 6).passed


def test_tail_sum_values():
    assert ids.hyp1f1_terminating(1, 3, -2) == Fraction(5, 3)
    assert ids.hyp1f1_terminating(1, 3, 2) == Fraction(1, 3)
    assert ids.check_tail_sums(0).passed


def test_structure_suites():
    assert ids.check_symmetry(Fraction(1, 2), 2, 6).passed
    assert ids.check_symmetric_reduction(1, 6).passed
    assert ids.check_jacobi_orthogonality(0, 0, 4).passed


def test_unknown_suite():
    with pytest.raises(ValueError):
        ids.run_suite("nope")
