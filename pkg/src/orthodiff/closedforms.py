"""Explicit coefficient families and the shipped coefficient tables.

A differential operator is stored group by group (the M/N-monomial that
multiplies a sum of coefficient*y^(i) terms).  :class:`CoeffSeq` holds one
such group: the x-polynomial coefficients for orders i >= 1, possibly given
lazily by a rule for infinite order, plus the n-dependent constant term.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Callable

from .exact import factorial, gen_binomial, is_integer, pochhammer
from .poly import X, ZERO, MPoly, NPoly

GROUPS = {"1": (0, 0), "M": (1, 0), "N": (0, 1), "MN": (1, 1)}
GROUP_NAMES = {v: k for k, v in GROUPS.items()}


def group_key(name: str) -> tuple:
    try:
        return GROUPS[name]
    except KeyError:
        raise ValueError(f"unknown group {name!r}; expected one of {sorted(GROUPS)}") from None


# -- n-dependent scalars ---------------------------------------------------

class NFunction:
    """An n-dependent scalar with no polynomial form (printed by its label)."""

    def __init__(self, label: str, fn: Callable[[int], Fraction]):
        self.label = label
        self.fn = fn

    def __call__(self, n) -> Fraction:
        return Fraction(self.fn(n))

    def __str__(self):
        return self.label

    def __repr__(self):
        return f"NFunction({self.label!r})"


class NTable:
    """Per-n values kept verbatim (no fitted formula available)."""

    def __init__(self, values: dict):
        self.values = {int(n): Fraction(v) for n, v in sorted(values.items())}

    def __call__(self, n) -> Fraction:
        if n not in self.values:
            raise KeyError(f"no tabulated value for n={n}")
        return self.values[n]

    def __str__(self):
        return "{" + ", ".join(f"{n}: {v}" for n, v in self.values.items()) + "}"


# -- coefficient sequences -------------------------------------------------

@dataclass
class CoeffSeq:
    group: str
    entries: dict = field(default_factory=dict)
    const: object = None
    support_bound: int | None = None
    rule: Callable[[int], MPoly] | None = None
    n_entries: dict = field(default_factory=dict)

    def __post_init__(self):
        self.entries = {i: p for i, p in self.entries.items() if not p.is_zero()}
        if self.support_bound is None and self.rule is None:
            self.support_bound = max(self.entries, default=0)

    def entry(self, i: int) -> MPoly:
        """The n-independent coefficient of y^(i)."""
        if self.support_bound is not None and i > self.support_bound:
            return ZERO
        if i in self.entries:
            return self.entries[i]
        if self.rule is not None and i >= 1:
            p = self.rule(i)
            if not p.is_zero():
                self.entries[i] = p
            return p
        return ZERO

    def coefficient(self, i: int, n: int) -> MPoly:
        """Full coefficient of y^(i) at degree n, including n-dependent parts."""
        out = self.entry(i)
        if i in self.n_entries:
            out = out + self.n_entries[i](n)
        if i == 0 and self.const is not None:
            out = out + self.const(n)
        return out

    def max_order(self, cap: int) -> int:
        top = cap if self.support_bound is None else min(cap, self.support_bound)
        if self.n_entries:
            top = max(top, min(cap, max(self.n_entries)))
        return top

    def to_text(self) -> str:
        lines = []
        if self.const is not None:
            lines.append(f"const(n): {self.const}")
        for i in sorted(self.n_entries):
            lines.append(f"{i}(n): <per-n>")
        for i in sorted(self.entries):
            lines.append(f"{i}: {self.entries[i]}")
        if self.rule is not None and self.support_bound is None:
            lines.append("...: infinite order")
        return "\n".join(lines)


# -- Laguerre-type coefficients with a point mass --------------------------

@lru_cache(maxsize=None)
def laguerre_a(alpha, i: int) -> MPoly:
    """a_i(x) = 1/i! sum_j (-1)^(i+j+1) C(a+1, j-1) C(a+2, i-j) (a+3)_(i-j) x^j."""
    if i < 1:
        raise ValueError("laguerre_a is defined for i >= 1")
    a = Fraction(alpha)
    coeffs = [Fraction(0)] * (i + 1)
    for j in range(1, i + 1):
        coeffs[j] = (
            (-1) ** (i + j + 1)
            * gen_binomial(a + 1, j - 1)
            * gen_binomial(a + 2, i - j)
            * pochhammer(a + 3, i - j)
        )
    return MPoly.from_x_coeffs(coeffs) / factorial(i)


def laguerre_a0(alpha):
    """C(n+a+1, n-1): an NPoly for integer alpha, otherwise evaluated per n."""
    a = Fraction(alpha)
    if is_integer(a):
        k = int(a)
        return NPoly.from_roots(range(0, -(k + 2), -1), Fraction(1, factorial(k + 2)))
    return NFunction(f"C(n+{a + 1}, n-1)", lambda n: gen_binomial(n + a + 1, n - 1))


def laguerre_a_seq(alpha) -> CoeffSeq:
    a = Fraction(alpha)
    bound = 2 * int(a) + 4 if is_integer(a) else None
    if bound is not None:
        entries = {i: laguerre_a(a, i) for i in range(1, bound + 1)}
        return CoeffSeq("M", entries, const=laguerre_a0(a), support_bound=bound)
    return CoeffSeq("M", const=laguerre_a0(a), rule=lambda i: laguerre_a(a, i))


# -- the b*/c* pair for the Sobolev family ----------------------------------

@lru_cache(maxsize=None)
def sobolev_bstar(alpha, i: int) -> MPoly:
    """b*_i = 1/i! sum_j (-1)^j C(i, j) (a+1)_(i-j) x^j."""
    a = Fraction(alpha)
    return MPoly.from_x_coeffs(
        (-1) ** j * gen_binomial(i, j) * pochhammer(a + 1, i - j) for j in range(i + 1)
    ) / factorial(i)


def sobolev_cstar(alpha, i: int) -> MPoly:
    """c*_i = (-1)^i x^i / i!  (alpha only kept for a uniform signature)."""
    return MPoly.monomial(Fraction((-1) ** i, factorial(i)), i)


# -- symmetric Jacobi ------------------------------------------------------

def sym_b(i: int) -> MPoly:
    """2^(i-1)/i! (-x)^i."""
    if i < 1:
        raise ValueError("sym_b is defined for i >= 1")
    return MPoly.monomial(Fraction((-2) ** i, 2 * factorial(i)), i)


def sym_b0(n: int) -> Fraction:
    """(1 - (-1)^n)/2: 0 for even n, 1 for odd n."""
    return Fraction(n % 2)


def conj_c0(alpha):
    """4(2a+3) C(n+2a+2, n-2); polynomial in n whenever 2a is an integer."""
    a = Fraction(alpha)
    scale = 4 * (2 * a + 3)
    if is_integer(2 * a):
        q = int(2 * a + 2)
        # C(n+q, n-2) = (n-1) n ... (n+q) / (q+2)!
        return NPoly.from_roots(range(1, -q - 1, -1), scale / factorial(q + 2))
    return NFunction(
        f"{scale}*C(n+{2 * a + 2}, n-2)", lambda n: scale * gen_binomial(n + 2 * a + 2, n - 2)
    )


def _terminating_2f1_in_x2(top: int, b, c) -> MPoly:
    """2F1(-top, b; c; x^2) as an exact polynomial."""
    out = ZERO
    for k in range(top + 1):
        coeff = pochhammer(-top, k) * pochhammer(b, k) / (pochhammer(c, k) * factorial(k))
        out = out + MPoly.monomial(coeff, 2 * k)
    return out


@lru_cache(maxsize=None)
def conj_cstar(alpha, i: int) -> MPoly:
    if i < 1:
        raise ValueError("conj_cstar is defined for i >= 1")
    a = Fraction(alpha)
    if i == 1:
        return ZERO
    half, odd = divmod(i, 2)
    b = a + Fraction(5, 2) - half
    if not odd:
        scale = Fraction(4 * (-1) ** (half + 1), factorial(i)) * gen_binomial(a + 1, half - 1)
        return _terminating_2f1_in_x2(half - 1, b, Fraction(1, 2)) * scale
    scale = Fraction(8 * (-1) ** (half + 1), factorial(i)) * gen_binomial(a, half - 1) * (a + 1)
    return X * _terminating_2f1_in_x2(half - 1, b, Fraction(3, 2)) * scale


@lru_cache(maxsize=None)
def conj_c(alpha, i: int) -> MPoly:
    """(2a+3)(1-x^2) c*_i."""
    a = Fraction(alpha)
    return (1 - X * X) * conj_cstar(a, i) * (2 * a + 3)


def conj_c_seq(alpha) -> CoeffSeq:
    a = Fraction(alpha)
    if is_integer(a) and a >= 0:
        bound = 2 * int(a) + 4
        entries = {i: conj_c(a, i) for i in range(1, bound + 1)}
        return CoeffSeq("M", entries, const=conj_c0(a), support_bound=bound)
    return CoeffSeq("M", const=conj_c0(a), rule=lambda i: conj_c(a, i))


# -- golden tables ---------------------------------------------------------

GOLDEN_GROUPS = {"a": "M", "beta": "N", "gamma": "MN"}


@dataclass
class GoldenTable:
    alpha: int
    group: str
    entries: dict
    const: NPoly

    def zero_sum(self) -> MPoly:
        out = ZERO
        for p in self.entries.values():
            out = out + p
        return out

    def support(self) -> int:
        return max((i for i, p in self.entries.items() if not p.is_zero()), default=0)

    def as_coeffseq(self) -> CoeffSeq:
        return CoeffSeq(GOLDEN_GROUPS[self.group], dict(self.entries), const=self.const)

    def to_text(self) -> str:
        lines = [f"const(n): {self.const}"]
        lines += [f"{i}: {p}" for i, p in sorted(self.entries.items())]
        return "\n".join(lines) + "\n"


def parse_table(text: str):
    """Parse the "i: <poly>" / "const(n): <npoly>" table format."""
    entries: dict = {}
    const = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, body = line.partition(":")
        if not sep:
            raise ValueError(f"line {lineno}: missing ':'")
        key = key.strip()
        if key == "const(n)":
            const = NPoly.parse(body)
        else:
            entries[int(key)] = MPoly.parse(body)
    return entries, const


def golden(alpha: int, group: str) -> GoldenTable:
    if alpha not in (0, 1, 2):
        raise ValueError("golden tables exist for alpha in {0, 1, 2}")
    if group not in GOLDEN_GROUPS:
        raise ValueError(f"group must be one of {sorted(GOLDEN_GROUPS)}")
    text = _data_text(f"golden_alpha{alpha}_{group}.txt")
    entries, const = parse_table(text)
    return GoldenTable(alpha, group, entries, const)


def _data_text(name: str) -> str:
    return resources.files("orthodiff").joinpath("data").joinpath(name).read_text()


def table_diff(table: GoldenTable, seq: CoeffSeq) -> list:
    """Lines where a generated sequence differs from a golden table (empty when equal)."""
    out = []
    top = max([table.support()] + [i for i in seq.entries])
    gen_const = None if seq.const is None else str(seq.const)
    if gen_const != str(table.const):
        out.append(f"- const(n): {table.const}")
        out.append(f"+ const(n): {gen_const}")
    for i in range(1, top + 1):
        want = table.entries.get(i, ZERO)
        got = seq.entry(i)
        if want != got:
            out.append(f"- {i}: {want}")
            out.append(f"+ {i}: {got}")
    return out
