"""Constructors for the classical and generalized orthogonal polynomial families.

Every family is built exactly for a concrete degree ``n`` and rational
parameters; the point-mass parameters M and N stay symbolic (they are ring
variables of :class:`~orthodiff.poly.MPoly`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import as_rat, gen_binomial, pochhammer, factorial
from .poly import M, N, ONE, X, ZERO, MPoly

KINDS = (
    "classical-laguerre",
    "koornwinder-laguerre",
    "sobolev-laguerre",
    "classical-jacobi",
    "generalized-jacobi",
    "symmetric-jacobi",
)

LAGUERRE_KINDS = KINDS[:3]
JACOBI_KINDS = KINDS[3:]


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    alpha: Fraction = Fraction(0)
    beta: Fraction = Fraction(0)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}")
        object.__setattr__(self, "alpha", as_rat(self.alpha))
        beta = self.alpha if self.kind == "symmetric-jacobi" else as_rat(self.beta)
        object.__setattr__(self, "beta", beta)
        if self.alpha <= -1:
            raise ValueError("alpha must exceed -1")
        if self.kind in JACOBI_KINDS and self.beta <= -1:
            raise ValueError("beta must exceed -1")

    @property
    def is_laguerre(self) -> bool:
        return self.kind in LAGUERRE_KINDS

    def member(self, n: int) -> MPoly:
        if n < 0:
            raise ValueError("degree must be nonnegative")
        a, b = self.alpha, self.beta
        return {
            "classical-laguerre": lambda: laguerre(a, n),
            "koornwinder-laguerre": lambda: koornwinder_laguerre(a, n),
            "sobolev-laguerre": lambda: sobolev_laguerre(a, n),
            "classical-jacobi": lambda: jacobi(a, b, n),
            "generalized-jacobi": lambda: generalized_jacobi(a, b, n),
            "symmetric-jacobi": lambda: symmetric_jacobi(a, n),
        }[self.kind]()

    def classical_coeffs(self) -> dict:
        """Coefficients of y'' and y' in the classical second-order equation."""
        a, b = self.alpha, self.beta
        if self.is_laguerre:
            return {2: X, 1: (a + 1) - X}
        return {2: 1 - X * X, 1: (b - a) - (a + b + 2) * X}

    def eigen(self):
        """The n-dependent zeroth-order term of the classical equation."""
        from .poly import NPoly

        if self.is_laguerre:
            return NPoly([0, 1])
        return NPoly([0, self.alpha + self.beta + 1, 1])


# -- classical families --------------------------------------------------

@lru_cache(maxsize=None)
def laguerre(alpha, n: int) -> MPoly:
    """L_n^(alpha)(x) = sum_k (-1)^k C(n+alpha, n-k) x^k / k!."""
    alpha = Fraction(alpha)
    return MPoly.from_x_coeffs(
        (-1) ** k * gen_binomial(n + alpha, n - k) / factorial(k) for k in range(n + 1)
    )


@lru_cache(maxsize=None)
def jacobi(alpha, beta, n: int) -> MPoly:
    """P_n^(alpha,beta) as C(n+alpha, n) 2F1(-n, n+alpha+beta+1; alpha+1; (1-x)/2)."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    u = (1 - X) * Fraction(1, 2)
    out = ZERO
    upow = ONE
    for k in range(n + 1):
        c = pochhammer(-n, k) * pochhammer(n + alpha + beta + 1, k)
        c /= pochhammer(alpha + 1, k) * factorial(k)
        out = out + upow * c
        upow = upow * u
    return out * gen_binomial(n + alpha, n)


# -- generalized families ------------------------------------------------

def sobolev_coefficients(alpha, n: int):
    """(A0, A1, A2) as polynomials in M, N."""
    a = Fraction(alpha)
    B = gen_binomial
    A0 = (
        1
        + M * B(n + a, n - 1)
        + N * ((n * (a + 2) - (a + 1)) / ((a + 1) * (a + 3)) * B(n + a, n - 2))
        + M * N * (B(n + a, n - 1) * B(n + a + 1, n - 2) / ((a + 1) * (a + 2)))
    )
    A1 = (
        M * B(n + a, n)
        + N * ((n - 1) / (a + 1) * B(n + a, n - 1))
        + M * N * (2 * B(n + a, n) * B(n + a + 1, n - 2) / (a + 1) ** 2)
    )
    A2 = N * (B(n + a, n - 1) / (a + 1)) + M * N * (
        B(n + a, n) * B(n + a + 1, n - 1) / (a + 1) ** 2
    )
    return A0, A1, A2


@lru_cache(maxsize=None)
def sobolev_laguerre(alpha, n: int) -> MPoly:
    """Laguerre-Sobolev polynomial A0 L + A1 L' + A2 L''."""
    L = laguerre(alpha, n)
    A0, A1, A2 = sobolev_coefficients(alpha, n)
    return A0 * L + A1 * L.derivative_x(1) + A2 * L.derivative_x(2)


@lru_cache(maxsize=None)
def koornwinder_laguerre(alpha, n: int) -> MPoly:
    return sobolev_laguerre(alpha, n).subs({"N": 0})


def jacobi_coefficients(alpha, beta, n: int):
    """(A0, A1, A2) for the Jacobi polynomials with endpoint masses."""
    a, b = Fraction(alpha), Fraction(beta)
    B = gen_binomial
    A0 = (
        1
        + M * (B(n + b, n - 1) * B(n + a + b + 1, n) / B(n + a, n))
        + N * (B(n + a, n - 1) * B(n + a + b + 1, n) / B(n + b, n))
        + M * N * ((a + b + 2) ** 2 / ((a + 1) * (b + 1)) * B(n + a + b + 1, n - 1) ** 2)
    )
    if n == 0:
        # A1, A2 multiply P_0' = 0; the 1/(a+b+1) factor may also be singular here
        return A0, ZERO, ZERO
    # C(n+a+b, n)/(a+b+1) = (a+b+2)_{n-1}/n!, regular even when a+b+1 = 0
    ratio = pochhammer(a + b + 2, n - 1) / factorial(n)
    A1 = M * (B(n + b, n) * ratio / B(n + a, n)) + M * N * (
        B(n + a + b, n - 1) * B(n + a + b + 1, n) / (a + 1)
    )
    A2 = N * (B(n + a, n) * ratio / B(n + b, n)) + M * N * (
        B(n + a + b, n - 1) * B(n + a + b + 1, n) / (b + 1)
    )
    return A0, A1, A2


@lru_cache(maxsize=None)
def generalized_jacobi(alpha, beta, n: int) -> MPoly:
    """A0 P + [A1 (1-x) - A2 (1+x)] P'."""
    P = jacobi(alpha, beta, n)
    A0, A1, A2 = jacobi_coefficients(alpha, beta, n)
    return A0 * P + (A1 * (1 - X) - A2 * (1 + X)) * P.derivative_x(1)


def symmetric_coefficients(alpha, n: int):
    """(C0, C1) as polynomials in M for the symmetric case alpha = beta, M = N."""
    a = Fraction(alpha)
    B = gen_binomial
    C0 = 1 + M * (2 * n / (a + 1) * B(n + 2 * a + 1, n)) + M * M * (4 * B(n + 2 * a + 1, n - 1) ** 2)
    if n == 0:
        return C0, ZERO
    # C(n+2a, n)/(2a+1) = (2a+2)_{n-1}/n!
    C1 = M * (2 * pochhammer(2 * a + 2, n - 1) / factorial(n)) + M * M * (
        2 / (a + 1) * B(n + 2 * a, n - 1) * B(n + 2 * a + 1, n)
    )
    return C0, C1


@lru_cache(maxsize=None)
def symmetric_jacobi(alpha, n: int) -> MPoly:
    """C0 P - C1 x P' with P = P_n^(alpha,alpha)."""
    P = jacobi(alpha, alpha, n)
    C0, C1 = symmetric_coefficients(alpha, n)
    return C0 * P - C1 * X * P.derivative_x(1)


# -- inner products ------------------------------------------------------

def _x_linear(p: MPoly, moment) -> MPoly:
    """Apply the linear functional x^k -> moment(k) to p, keeping M, N."""
    out: dict = {}
    for (dx, dM, dN), c in p.terms.items():
        key = (0, dM, dN)
        out[key] = out.get(key, 0) + c * moment(dx)
    return MPoly(out)


def sobolev_inner(f: MPoly, g: MPoly, alpha) -> MPoly:
    """Laguerre weight x^alpha e^-x / Gamma(alpha+1) plus M f(0)g(0) + N f'(0)g'(0)."""
    a = Fraction(alpha)
    integral = _x_linear(f * g, lambda k: pochhammer(a + 1, k))
    at0 = f.subs({"x": 0}) * g.subs({"x": 0})
    d_at0 = f.derivative_x(1).subs({"x": 0}) * g.derivative_x(1).subs({"x": 0})
    return integral + M * at0 + N * d_at0


def jacobi_moment(alpha, beta, j: int, k: int) -> Fraction:
    """Normalized-weight moment of ((1-x)/2)^j ((1+x)/2)^k."""
    a, b = Fraction(alpha), Fraction(beta)
    return pochhammer(a + 1, j) * pochhammer(b + 1, k) / pochhammer(a + b + 2, j + k)


def jacobi_inner(f: MPoly, g: MPoly, alpha, beta) -> MPoly:
    """Normalized Jacobi weight plus M delta(x+1) + N delta(x-1)."""
    a, b = Fraction(alpha), Fraction(beta)
    # rewrite in u = (1-x)/2, i.e. x = 1 - 2u; then only the j-moments are needed
    h = (f * g).subs({"x": 1 - 2 * X})
    integral = _x_linear(h, lambda j: jacobi_moment(a, b, j, 0))
    left = f.subs({"x": -1}) * g.subs({"x": -1})
    right = f.subs({"x": 1}) * g.subs({"x": 1})
    return integral + M * left + N * right
