from fractions import Fraction

import pytest

from orthodiff import closedforms as cf
from orthodiff.families import FamilySpec, laguerre, sobolev_laguerre
from orthodiff.operator import (
    EQUATIONS,
    UnsupportedEquation,
    assemble,
    load_equation,
    verify_family,
)
from orthodiff.poly import NPoly, ZERO


def test_apply_examples():
    op = assemble("classical-laguerre", 0)
    assert op.apply(laguerre(0, 2), 2).is_zero()
    assert op.apply(ZERO, 3).is_zero()
    display = assemble("golden-sobolev-display", 0)
    assert display.apply(sobolev_laguerre(0, 1), 1).is_zero()


def test_perturbed_eigenvalue_fails():
    op = assemble("classical-laguerre", 0)
    op.eigen = NPoly.parse("n + 1")
    report = verify_family(op, FamilySpec("classical-laguerre", 0), [1])
    assert not report.passed
    assert report.entries[0].residual == laguerre(0, 1)
    assert report.to_text().splitlines()[-2:] == ["n=1: -x + 1", "RESULT: FAIL"]


def test_report_format():
    op = assemble("golden-sobolev", 0)
    text = verify_family(op, op.default_family, range(3)).to_text()
    assert text.splitlines()[-4:] == ["n=0: ZERO", "n=1: ZERO", "n=2: ZERO", "RESULT: PASS"]


@pytest.mark.parametrize("alpha", [0, 1, 2])
def test_koornwinder_operator(alpha):
    op = assemble("koornwinder-dv", alpha)
    seq = op.groups[(1, 0)]
    assert seq.support_bound == 2 * alpha + 4
    assert verify_family(op, FamilySpec("koornwinder-laguerre", alpha), range(13)).passed


@pytest.mark.parametrize("alpha", [Fraction(1, 2), Fraction(7, 3)])
def test_koornwinder_operator_noninteger(alpha):
    op = assemble("koornwinder-dv", alpha)
    assert op.groups[(1, 0)].support_bound is None
    assert verify_family(op, FamilySpec("koornwinder-laguerre", alpha), range(11)).passed


def test_operator_orders():
    op = assemble("koornwinder-dv", 0)
    assert op.orders(12) == {"formal": 4, "M=0": 2, "N=0": 4}
    gold = assemble("golden-sobolev", 0)
    assert gold.orders(15) == {"formal": 10, "M=0": 8, "N=0": 4}
    conj = assemble("conjecture", 1)
    assert conj.orders(12)["formal"] == 6


def test_dvstar_shape():
    op = assemble("dvstar", Fraction(1, 2))
    assert op.classical == {} and op.eigen is None
    assert set(op.groups) == {(0, 0), (1, 0)}
    assert op.min_n == 1
    a = Fraction(1, 2)
    assert op.groups[(0, 0)].coefficient(2, 3) == cf.sobolev_bstar(a, 2)
    assert op.groups[(1, 0)].coefficient(2, 3) == cf.sobolev_cstar(a, 2)
    assert op.groups[(0, 0)].coefficient(0, 3) == 1



def test_dvstar_excludes_degree_zero():
    op = assemble("dvstar", 0)
    report = verify_family(op, FamilySpec("sobolev-laguerre", 0), [0])
    assert not report.passed


def test_golden_display_equals_tables():
    display = assemble("golden-sobolev-display", 0)
    tables = assemble("golden-sobolev", 0)
    for i in range(12):
        assert display.coefficient(i, 5) == tables.coefficient(i, 5)


def test_load_equation_roundtrip_errors():
    with pytest.raises(ValueError):
        load_equation("colour = red\n")
    with pytest.raises(ValueError):
        load_equation("nonsense line\n")
    op = load_equation("classical = laguerre\nfamily = classical-laguerre\nalpha = 1/2\n")
    assert verify_family(op, op.default_family, range(6)).passed
    bare = load_equation("classical = laguerre\nalpha = 1/2\n")
    assert not verify_family(bare, bare.default_family, range(6)).passed


def test_unsupported():
    with pytest.raises(UnsupportedEquation):
        assemble("golden-sobolev", 3)
    with pytest.raises(UnsupportedEquation):
        assemble("golden-sobolev-display", 1)
    with pytest.raises(UnsupportedEquation):
        assemble("hermite")
    assert "conjecture" in EQUATIONS


def test_verify_empty_range():
    with pytest.raises(ValueError):
        verify_family(assemble("classical-laguerre"), FamilySpec("classical-laguerre"), [])


def test_symmetric_theorem_operator():
    op = assemble("sym-b", Fraction(1, 2))
    assert verify_family(op, op.default_family, range(11)).passed
