"""Checks of the summation identities behind the operators, plus structural checks.

Everything is exact except :func:`gauss_2f1_unit` and :func:`check_suma`,
which need arbitrary-precision floats (mpmath) because their closed forms
involve Gamma values and sin(pi*alpha).
"""

from __future__ import annotations

import time
from fractions import Fraction

import mpmath

from . import closedforms as cf
from .exact import as_rat, factorial, gen_binomial, is_integer, is_nonneg_integer, pochhammer
from .families import (
    generalized_jacobi,
    jacobi,
    jacobi_inner,
    laguerre,
    sobolev_inner,
    sobolev_laguerre,
    symmetric_jacobi,
)
from .poly import X, ZERO, MPoly
from .report import Entry, Report, exact_entry, merge

DEFAULT_PRECISION = 256
MIN_PRECISION = 128


class HypergeometricError(ValueError):
    pass


# -- hypergeometric oracles ----------------------------------------------------

def _is_pole(c: Fraction, n: int | None = None) -> bool:
    """True when (c)_k vanishes for some k in the summation range."""
    if not (is_integer(c) and c <= 0):
        return False
    return n is None or -c <= n - 1


def hyp2f1_terminating(n: int, b, c) -> Fraction:
    """2F1(-n, b; c; 1) by direct term-by-term summation."""
    b, c = as_rat(b), as_rat(c)
    if _is_pole(c, n):
        raise HypergeometricError(f"2F1 lower parameter {c} hits a pole")
    total = Fraction(0)
    term = Fraction(1)
    for k in range(n + 1):
        total += term
        if k < n:
            term = term * (-n + k) * (b + k) / ((c + k) * (k + 1))
    return total


def vandermonde_2f1(n: int, b, c) -> Fraction:
    """2F1(-n, b; c; 1) = (c-b)_n / (c)_n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    b, c = as_rat(b), as_rat(c)
    if _is_pole(c, n):
        raise HypergeometricError(f"2F1 lower parameter {c} hits a pole")
    return pochhammer(c - b, n) / pochhammer(c, n)


def hyp1f1_terminating(m: int, b, z) -> Fraction:
    """1F1(-m; b; z) as an exact finite sum."""
    b, z = as_rat(b), as_rat(z)
    return sum(
        (pochhammer(-m, k) / (pochhammer(b, k) * factorial(k)) * z**k for k in range(m + 1)),
        Fraction(0),
    )


def _mpf(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def gauss_2f1_unit(a, b, c, precision: int = DEFAULT_PRECISION):
    """2F1(a, b; c; 1) = G(c-a-b) G(c) / (G(c-a) G(c-b)) as an mpmath float.

    Terminating series (a or b a nonpositive integer) go through the exact
    Vandermonde sum.  1/Gamma at a pole is taken as 0.
    """
    a, b, c = as_rat(a), as_rat(b), as_rat(c)
    with mpmath.workprec(max(precision, MIN_PRECISION)):
        for top, other in ((a, b), (b, a)):
            if is_integer(top) and top <= 0:
                return _mpf(vandermonde_2f1(int(-top), other, c))
        if _is_pole(c):
            raise HypergeometricError(f"2F1 lower parameter {c} is a pole")
        if c - a - b <= 0:
            raise HypergeometricError("2F1 at 1 diverges unless c - a - b > 0")
        ca, cb = _mpf(c - a), _mpf(c - b)
        return (
            mpmath.gamma(_mpf(c - a - b))
            * mpmath.gamma(_mpf(c))
            * mpmath.rgamma(ca)
            * mpmath.rgamma(cb)
        )


def hyp2f1_partial(a, b, c, terms: int, precision: int = DEFAULT_PRECISION):
    """Partial sum of the 2F1(a, b; c; 1) series (reference for the Gamma form)."""
    a, b, c = as_rat(a), as_rat(b), as_rat(c)
    with mpmath.workprec(max(precision, MIN_PRECISION)):
        total = mpmath.mpf(0)
        term = mpmath.mpf(1)
        fa, fb, fc = _mpf(a), _mpf(b), _mpf(c)
        for k in range(terms):
            total += term
            term = term * (fa + k) * (fb + k) / ((fc + k) * (k + 1))
            if term == 0:
                break
        return total


# -- sums of the Laguerre-type coefficients --------------------------------------

def suma_rhs(alpha, x, precision: int = DEFAULT_PRECISION):
    """-(sin(pi a)/pi) x / ((a+2)(a+3)) 1F1(1; a+4; -x)."""
    a, x = as_rat(alpha), as_rat(x)
    with mpmath.workprec(precision):
        fa, fx = _mpf(a), _mpf(x)
        return -mpmath.sinpi(fa) / mpmath.pi * fx / ((fa + 2) * (fa + 3)) * mpmath.hyp1f1(1, fa + 4, -fx)


def suma_partial(alpha, x, terms: int) -> Fraction:
    """Exact sum of a_1(x) + ... + a_terms(x)."""
    a, x = as_rat(alpha), as_rat(x)
    return sum((cf.laguerre_a(a, i).eval({"x": x}) for i in range(1, terms + 1)), Fraction(0))


def suma_columns(alpha, x, terms: int, precision: int = DEFAULT_PRECISION):
    """The same series summed by x-power: column j is closed via Gauss' formula.

    sum_i a_i(x) = -sum_j C(a+1, j-1) x^j G(j) / (G(j+a+3) G(j-a-2)); the
    columns decay factorially, so ``terms`` columns are plenty.
    """
    a, x = as_rat(alpha), as_rat(x)
    with mpmath.workprec(precision):
        fa = _mpf(a)
        total = mpmath.mpf(0)
        for j in range(1, terms + 1):
            weight = gen_binomial(a + 1, j - 1) * x**j
            if weight:
                col = mpmath.gamma(j) * mpmath.rgamma(j + fa + 3) * mpmath.rgamma(j - fa - 2)
                total -= _mpf(weight) * col
        return total


def check_suma(alpha, x_values, truncation: int = 60, tol=Fraction(1, 10**25),
               precision: int = DEFAULT_PRECISION, method: str = "partial") -> Report:
    """Compare the summed coefficients a_i(x) with the 1F1 closed form.

    ``method="partial"`` sums a_1 .. a_I in index order (exactly, then rounds);
    ``method="columns"`` sums the rearranged series by x-power instead.
    For integer alpha the sum is finite and checked exactly against 0.
    """
    a = as_rat(alpha)
    if a <= -1:
        raise ValueError("alpha must exceed -1")
    if method not in ("partial", "columns"):
        raise ValueError("method must be 'partial' or 'columns'")
    start = time.perf_counter()
    report = Report(f"suma alpha={a}")
    if is_nonneg_integer(a):
        total = ZERO
        for i in range(1, 2 * int(a) + 5):
            total = total + cf.laguerre_a(a, i)
        report.notes.append("integer alpha: finite sum, exact")
        report.add(exact_entry("sum a_i(x)", total))
        report.elapsed = time.perf_counter() - start
        return report
    tol_f = _mpf(as_rat(tol)) if not isinstance(tol, float) else mpmath.mpf(tol)
    report.notes.append(f"method {method}, I = {truncation}, precision {precision} bits, tol {mpmath.nstr(tol_f, 3)}")
    with mpmath.workprec(precision):
        for x in x_values:
            x = as_rat(x)
            rhs = suma_rhs(a, x, precision)
            if method == "partial":
                lhs = _mpf(suma_partial(a, x, truncation))
            else:
                lhs = suma_columns(a, x, truncation, precision)
            diff = abs(lhs - rhs)
            report.add(Entry(f"x={x}", f"|diff| = {mpmath.nstr(diff, 5)}", diff <= tol_f))
    report.elapsed = time.perf_counter() - start
    return report


def check_suma2(alpha, k: int) -> Report:
    """sum_{i>=k} C(i, k) a_i(x) = (-1)^(alpha+k) a_k(-x), integer alpha."""
    a = as_rat(alpha)
    if not is_nonneg_integer(a):
        raise ValueError("check_suma2 needs a nonnegative integer alpha")
    if k < 1:
        raise ValueError("k must be at least 1")
    top = 2 * int(a) + 4
    lhs = ZERO
    for i in range(k, top + 1):
        lhs = lhs + cf.laguerre_a(a, i) * gen_binomial(i, k)
    rhs = cf.laguerre_a(a, k).subs({"x": -X}) * (-1) ** (int(a) + k) if k <= top else ZERO
    report = Report(f"suma2 alpha={a} k={k}")
    report.add(exact_entry(f"k={k}", lhs - rhs))
    return report


def check_golden_zero_sums() -> Report:
    """Each golden table's coefficients for i >= 1 add up to zero."""
    report = Report("golden zero sums")
    for alpha in (0, 1, 2):
        for group in cf.GOLDEN_GROUPS:
            report.add(exact_entry(f"alpha={alpha} {group}", cf.golden(alpha, group).zero_sum()))
    return report


def _apply_sum(coeffs, poly: MPoly, shift: int) -> MPoly:
    """sum_i coeffs(i) D^(i+shift) poly; the sum stops once the derivative vanishes."""
    out = ZERO
    d = poly.derivative_x(shift)
    i = 0
    while not d.is_zero():
        out = out + coeffs(i) * d
        d = d.derivative_x(1)
        i += 1
    return out


def _bstar_rhs(n: int, k: int) -> Fraction:
    # (-n)_k / (n Gamma(k)); 1/Gamma(0) = 0
    if k == 0:
        return Fraction(0)
    return pochhammer(-n, k) / (n * factorial(k - 1))


def check_sumbstar(alpha, n: int, k: int) -> Report:
    a = as_rat(alpha)
    if n < 1 or k not in (0, 1, 2):
        raise ValueError("need n >= 1 and k in {0, 1, 2}")
    lhs = _apply_sum(lambda i: cf.sobolev_bstar(a, i), laguerre(a, n), k)
    report = Report(f"sumbstar alpha={a}")
    report.add(exact_entry(f"n={n} k={k}", lhs - _bstar_rhs(n, k)))
    return report


def check_sumcstar(alpha, n: int, k: int) -> Report:
    a = as_rat(alpha)
    if n < 1 or k not in (0, 1, 2):
        raise ValueError("need n >= 1 and k in {0, 1, 2}")
    lhs = _apply_sum(lambda i: cf.sobolev_cstar(a, i), laguerre(a, n), k)
    rhs = gen_binomial(n + a, n) * pochhammer(-n, k) / pochhammer(a + 1, k)
    report = Report(f"sumcstar alpha={a}")
    report.add(exact_entry(f"n={n} k={k}", lhs - rhs))
    return report


# -- symmetric Jacobi --------------------------------------------------------------

def _conj_coeff(alpha, i: int, n: int) -> MPoly:
    if i == 0:
        return MPoly.const(cf.conj_c0(alpha)(n))
    return cf.conj_c(alpha, i)


def check_sym_reduced(alpha, n: int) -> Report:
    """The two reduced equations for the conjecture coefficients c_i.

    sum c_i D^i P = 4/(2a+1) C(n+2a, n) P''  and
    sum i c_i D^i P + x sum c_i D^(i+1) P = 4 C(n+2a+1, n-1) P'',
    with P = P_n^(a,a).
    """
    a = as_rat(alpha)
    if n < 0:
        raise ValueError("n must be nonnegative")
    P = jacobi(a, a, n)
    d2 = P.derivative_x(2)
    # C(n+2a, n)/(2a+1) = (2a+2)_(n-1)/n!, finite at 2a+1 = 0
    first_scale = 4 * pochhammer(2 * a + 2, n - 1) / factorial(n) if n >= 1 else Fraction(0)
    first = _apply_sum(lambda i: _conj_coeff(a, i, n), P, 0) - d2 * first_scale
    second = (
        _apply_sum(lambda i: _conj_coeff(a, i, n) * i, P, 0)
        + X * _apply_sum(lambda i: _conj_coeff(a, i, n), P, 1)
        - d2 * (4 * gen_binomial(n + 2 * a + 1, n - 1))
    )
    report = Report(f"sym-reduced alpha={a}")
    report.add(exact_entry(f"n={n} first", first))
    report.add(exact_entry(f"n={n} second", second))
    return report


def check_tail_sums(alpha) -> Report:
    """sum_i c*_i(a, -1) = 2 1F1(-a-1; 3; 2) and sum_i c*_i(a, 1) = 2 1F1(-a-1; 3; -2)."""
    a = as_rat(alpha)
    if not is_nonneg_integer(a):
        raise ValueError("check_tail_sums needs a nonnegative integer alpha")
    top = 2 * int(a) + 4
    report = Report(f"tail sums alpha={a}")
    for x, z in ((-1, 2), (1, -2)):
        lhs = sum((cf.conj_cstar(a, i).eval({"x": x}) for i in range(1, top + 1)), Fraction(0))
        rhs = 2 * hyp1f1_terminating(int(a) + 1, 3, z)
        report.add(exact_entry(f"x={x}", lhs - rhs))
    return report


# -- structure ---------------------------------------------------------------------

def check_sobolev_orthogonality(alpha, n_max: int = 8) -> Report:
    a = as_rat(alpha)
    polys = [sobolev_laguerre(a, n) for n in range(n_max + 1)]
    report = Report(f"sobolev orthogonality alpha={a}")
    for n in range(n_max + 1):
        for m in range(n):
            report.add(exact_entry(f"<{n},{m}>", sobolev_inner(polys[n], polys[m], a)))
    return report


def check_jacobi_orthogonality(alpha, beta, n_max: int = 8) -> Report:
    a, b = as_rat(alpha), as_rat(beta)
    polys = [generalized_jacobi(a, b, n) for n in range(n_max + 1)]
    report = Report(f"jacobi orthogonality alpha={a} beta={b}")
    for n in range(n_max + 1):
        for m in range(n):
            report.add(exact_entry(f"<{n},{m}>", jacobi_inner(polys[n], polys[m], a, b)))
    return report


def check_symmetry(alpha, beta, n_max: int = 12) -> Report:
    """P_n^(a,b,M,N)(-x) = (-1)^n P_n^(b,a,N,M)(x)."""
    a, b = as_rat(alpha), as_rat(beta)
    report = Report(f"symmetry alpha={a} beta={b}")
    for n in range(n_max + 1):
        left = generalized_jacobi(a, b, n).subs({"x": -X})
        right = generalized_jacobi(b, a, n).subs({"M": MPoly.monomial(1, 0, 0, 1), "N": MPoly.monomial(1, 0, 1, 0)})
        report.add(exact_entry(f"n={n}", left - right * (-1) ** n))
    return report


def check_symmetric_reduction(alpha, n_max: int = 10) -> Report:
    """At alpha = beta and N = M the generalized Jacobi family is the symmetric one."""
    a = as_rat(alpha)
    report = Report(f"symmetric reduction alpha={a}")
    for n in range(n_max + 1):
        merged = generalized_jacobi(a, a, n).subs({"N": MPoly.monomial(1, 0, 1, 0)})
        report.add(exact_entry(f"n={n}", merged - symmetric_jacobi(a, n)))
    return report


# -- suites --------------------------------------------------------------------------

SUITES = ("suma", "suma2", "sumbstar", "sumcstar", "tails", "sym-reduced", "orthogonality", "symmetry")

_DEFAULT_ALPHAS = {
    "suma": [Fraction(1, 2), Fraction(7, 3)],
    "suma2": [0, 1, 2, 3, 4],
    "sumbstar": [0, Fraction(1, 2), 1, Fraction(7, 3)],
    "sumcstar": [0, Fraction(1, 2), 1, Fraction(7, 3)],
    "tails": [0, 1, 2, 3, 4],
    "sym-reduced": [0, 1, 2],
    "orthogonality": [0, Fraction(1, 2), 2],
    "symmetry": [0, Fraction(1, 2), 2],
}

SUMA_X = [Fraction(1, 4), Fraction(1), Fraction(3, 2)]


def run_suite(name: str, alphas=None, beta=None) -> Report:
    """Run one named suite over a list of alphas (defaults cover the reference grid)."""
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
    alphas = [as_rat(a) for a in (alphas or _DEFAULT_ALPHAS[name])]
    reports = []
    for a in alphas:
        if name == "suma":
            reports.append(check_suma(a, SUMA_X))
        elif name == "suma2":
            reports += [check_suma2(a, k) for k in range(1, 9)]
        elif name == "sumbstar":
            reports += [check_sumbstar(a, n, k) for n in range(1, 11) for k in (0, 1, 2)]
        elif name == "sumcstar":
            reports += [check_sumcstar(a, n, k) for n in range(1, 11) for k in (0, 1, 2)]
        elif name == "tails":
            reports.append(check_tail_sums(a))
        elif name == "sym-reduced":
            reports += [check_sym_reduced(a, n) for n in range(0, 9)]
        elif name == "orthogonality":
            b = a if beta is None else as_rat(beta)
            reports.append(check_sobolev_orthogonality(a))
            reports.append(check_jacobi_orthogonality(a, b))
        elif name == "symmetry":
            b = (a + 1) if beta is None else as_rat(beta)
            reports.append(check_symmetry(a, b))
    if name == "suma2":
        # the golden tables are the integer-alpha instances of the same zero sum
        reports.append(check_golden_zero_sums())
    return merge(f"suite {name}", reports)
