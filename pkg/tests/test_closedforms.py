from fractions import Fraction

import pytest

from orthodiff import closedforms as cf
from orthodiff.exact import gen_binomial
from orthodiff.poly import X, ZERO, MPoly, NPoly


def test_laguerre_a_examples():
    for alpha in (0, Fraction(1, 2), 1, 2, Fraction(7, 3)):
        assert cf.laguerre_a(alpha, 1) == -X
    assert cf.laguerre_a(0, 2) == 3 * X - X**2 / 2
    assert cf.laguerre_a(2, 4) == 35 * X - Fraction(45, 2) * X**2 + Fraction(5, 2) * X**3 - X**4 / 24


@pytest.mark.parametrize("alpha", [0, 1, 2, 3])
def test_laguerre_a_finite_order(alpha):
    top = 2 * alpha + 4
    assert not cf.laguerre_a(alpha, top).is_zero()
    for i in range(top + 1, top + 6):
        assert cf.laguerre_a(alpha, i).is_zero()


def test_laguerre_a0():
    assert cf.laguerre_a0(0) == NPoly.parse("1/2*n^2 + 1/2*n")
    for alpha in (1, 2, Fraction(1, 2)):
        a0 = cf.laguerre_a0(alpha)
        for n in range(8):
            assert a0(n) == gen_binomial(n + Fraction(alpha) + 1, n - 1)


def test_bstar_cstar():
    a = Fraction(7, 3)
    assert cf.sobolev_bstar(a, 0) == MPoly.const(1)
    assert cf.sobolev_bstar(a, 1) == (a + 1) - X
    assert cf.sobolev_cstar(a, 2) == X**2 / 2
    assert cf.sobolev_cstar(a, 3) == -X**3 / 6


def test_sym_b():
    assert cf.sym_b(1) == -X
    assert cf.sym_b(3) == -Fraction(2, 3) * X**3
    assert [cf.sym_b0(n) for n in range(4)] == [0, 1, 0, 1]


def test_conjecture_coefficients():
    for alpha in (0, Fraction(1, 2), 1, 3):
        a = Fraction(alpha)
        assert cf.conj_cstar(a, 1) == ZERO
        assert cf.conj_cstar(a, 2) == MPoly.const(2)
        assert cf.conj_cstar(a, 3) == Fraction(4, 3) * (a + 1) * X
        assert cf.conj_cstar(a, 4) == (a + 1) * ((2 * a + 1) * X**2 - 1) / 6
        assert cf.conj_cstar(a, 5) == a * (a + 1) * X * ((2 * a + 1) * X**2 - 3) / 45
        c6 = a * (a + 1) * ((2 * a - 1) * (2 * a + 1) * X**4 - 6 * (2 * a - 1) * X**2 + 3) / 1080
        assert cf.conj_cstar(a, 6) == c6
        assert cf.conj_c0(a)(2) == 4 * (2 * a + 3)
        assert cf.conj_c0(a)(3) == 4 * (2 * a + 3) * (2 * a + 5)
        assert cf.conj_c0(a)(4) == 2 * (2 * a + 3) * (2 * a + 5) * (2 * a + 6)
        assert cf.conj_c0(a)(5) == Fraction(2, 3) * (2 * a + 3) * (2 * a + 5) * (2 * a + 6) * (2 * a + 7)
        assert cf.conj_c0(a)(0) == 0 and cf.conj_c0(a)(1) == 0
    assert cf.conj_c(0, 2) == 6 * (1 - X**2)


def test_conjecture_c9_against_listed_value():
    a = Fraction(5, 2)
    inner = (2 * a - 3) * (2 * a - 1) * (2 * a + 1) * X**6 - 21 * (2 * a - 3) * (2 * a - 1) * X**4
    inner = inner + 105 * (2 * a - 3) * X**2 - 105
    assert cf.conj_cstar(a, 9) == (a - 2) * (a - 1) * a * (a + 1) * X * inner / 28576800


def test_golden_examples():
    assert cf.golden(0, "gamma").entries[10] == X**5 / 60
    assert cf.golden(1, "beta").entries[10] == X**5 / 80
    assert cf.golden(2, "gamma").entries[18] == X**9 / 77760


@pytest.mark.parametrize("alpha", [0, 1, 2])
def test_golden_a_matches_generator(alpha):
    table = cf.golden(alpha, "a")
    seq = cf.laguerre_a_seq(alpha)
    assert cf.table_diff(table, seq) == []
    assert table.const == cf.laguerre_a0(alpha)


@pytest.mark.parametrize("alpha", [0, 1, 2])
@pytest.mark.parametrize("group", ["a", "beta", "gamma"])
def test_golden_zero_sums(alpha, group):
    assert cf.golden(alpha, group).zero_sum().is_zero()


def test_golden_formal_orders():
    assert [cf.golden(a, "gamma").support() for a in (0, 1, 2)] == [10, 14, 18]


def test_table_round_trip():
    table = cf.golden(1, "beta")
    entries, const = cf.parse_table(table.to_text())
    assert entries == table.entries and const == table.const


def test_table_diff_reports_changes():
    table = cf.golden(0, "a")
    seq = cf.laguerre_a_seq(0)
    seq.entries[2] = seq.entries[2] + X
    diff = cf.table_diff(table, seq)
    assert diff == ["- 2: -1/2*x^2 + 3*x", "+ 2: -1/2*x^2 + 4*x"]


def test_golden_bad_arguments():
    with pytest.raises(ValueError):
        cf.golden(3, "a")
    with pytest.raises(ValueError):
        cf.golden(0, "delta")
    with pytest.raises(ValueError):
        cf.group_key("NN")
