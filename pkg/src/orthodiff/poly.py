"""Sparse exact polynomials in x, M, N and univariate polynomials in n.

Text format (used for every polynomial the package reads or writes)::

    -1/12*x^4 + 17/6*x^3 - 25/2*x^2 + 3*x + 2
    1/60*M*N*x^5

Terms appear in descending graded-lex order with x > M > N; inside a term
the factors are written M, N, x.  A coefficient of +-1 is dropped on a
non-constant monomial.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

from .exact import format_rat

Mono = tuple  # (deg_x, deg_M, deg_N)

_VARS = ("x", "M", "N")
_PRINT_ORDER = (1, 2, 0)  # M, N, x


class PolyParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


# -- text format ---------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z]\w*)|(\S))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        num, name, sym = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            out.append(("num", int(num), start))
        elif name is not None:
            out.append(("var", name, start))
        else:
            out.append(("sym", sym, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


def _parse_terms(text: str, varnames: tuple) -> dict:
    """Parse into {exponent tuple: Fraction}; exponents follow ``varnames``."""
    toks = _tokenize(text)
    i = 0
    terms: dict = {}

    def peek():
        return toks[i]

    def expect_num():
        nonlocal i
        kind, val, pos = toks[i]
        if kind != "num":
            raise PolyParseError("expected an integer", pos)
        i += 1
        return val

    sign = 1
    kind, val, pos = peek()
    if kind == "sym" and val in "+-":
        sign = -1 if val == "-" else 1
        i += 1
    if peek()[0] == "end":
        raise PolyParseError("empty polynomial", peek()[2])
    while True:
        coeff = Fraction(sign)
        exps = [0] * len(varnames)
        while True:
            kind, val, pos = peek()
            if kind == "num":
                i += 1
                num = val
                if peek()[0] == "sym" and peek()[1] == "/":
                    i += 1
                    den = expect_num()
                    if den == 0:
                        raise PolyParseError("zero denominator", toks[i - 1][2])
                    coeff *= Fraction(num, den)
                else:
                    coeff *= num
            elif kind == "var":
                if val not in varnames:
                    raise PolyParseError(f"unknown variable {val!r}", pos)
                i += 1
                power = 1
                if peek()[0] == "sym" and peek()[1] == "^":
                    i += 1
                    power = expect_num()
                exps[varnames.index(val)] += power
            else:
                raise PolyParseError("expected a number or variable", pos)
            kind, val, pos = peek()
            if kind == "sym" and val == "*":
                i += 1
                continue
            break
        key = tuple(exps)
        total = terms.get(key, 0) + coeff
        if total:
            terms[key] = total
        else:
            terms.pop(key, None)
        kind, val, pos = peek()
        if kind == "end":
            return terms
        if kind == "sym" and val in "+-":
            sign = -1 if val == "-" else 1
            i += 1
            if peek()[0] == "end":
                raise PolyParseError("dangling operator", peek()[2])
            continue
        raise PolyParseError(f"unexpected {val!r}", pos)


def _format_terms(items: Iterable, varnames: tuple, print_order: tuple) -> str:
    parts = []
    for exps, c in items:
        factors = []
        for idx in print_order:
            k = exps[idx]
            if k == 1:
                factors.append(varnames[idx])
            elif k > 1:
                factors.append(f"{varnames[idx]}^{k}")
        mag = abs(c)
        if not factors:
            body = format_rat(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = format_rat(mag) + "*" + "*".join(factors)
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for s, body in parts[1:]:
        out += f" {s} {body}"
    return out


# -- MPoly ---------------------------------------------------------------

def mn_order(key):
    """Sort key for (deg_M, deg_N) groups: 1, M, N, M^2, MN, N^2, ..."""
    return (key[0] + key[1], -key[0])


def _grlex_key(mono):
    return (-(mono[0] + mono[1] + mono[2]), -mono[0], -mono[1], -mono[2])


class MPoly:
    """Immutable sparse polynomial over Q in x, M, N."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    clean[tuple(mono)] = Fraction(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def const(cls, c) -> MPoly:
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(cls, c=1, dx: int = 0, dM: int = 0, dN: int = 0) -> MPoly:
        return cls({(dx, dM, dN): c})

    @classmethod
    def from_x_coeffs(cls, coeffs: Iterable) -> MPoly:
        """Polynomial in x from ascending coefficients."""
        return cls({(j, 0, 0): c for j, c in enumerate(coeffs) if c})

    @classmethod
    def parse(cls, text: str) -> MPoly:
        return cls(_parse_terms(text, _VARS))

    # ring structure

    def _coerce(self, other):
        if isinstance(other, MPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return _raw(out)

    __radd__ = __add__

    def __neg__(self):
        return _raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MPoly()
            return _raw({m: c * other for m, c in self.terms.items()})
        if not isinstance(other, MPoly):
            return NotImplemented
        out: dict = {}
        for (a0, a1, a2), c in self.terms.items():
            for (b0, b1, b2), d in other.terms.items():
                key = (a0 + b0, a1 + b1, a2 + b2)
                out[key] = out.get(key, 0) + c * d
        return MPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        out = MPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # inspection

    def degree_x(self) -> int:
        """Degree in x; -1 for the zero polynomial."""
        return max((m[0] for m in self.terms), default=-1)

    def coefficient(self, dx: int = 0, dM: int = 0, dN: int = 0) -> Fraction:
        return self.terms.get((dx, dM, dN), Fraction(0))

    def variables(self) -> set:
        used = set()
        for mono in self.terms:
            for name, k in zip(_VARS, mono):
                if k:
                    used.add(name)
        return used

    def x_coeffs(self) -> list:
        """Ascending x-coefficients; only valid for an x-only polynomial."""
        if any(m[1] or m[2] for m in self.terms):
            raise ValueError("polynomial involves M or N")
        out = [Fraction(0)] * (self.degree_x() + 1)
        for (j, _, _), c in self.terms.items():
            out[j] = c
        return out

    # calculus and substitution

    def derivative_x(self, k: int = 1) -> MPoly:
        if k < 0:
            raise ValueError("negative derivative order")
        out = {}
        for (dx, dM, dN), c in self.terms.items():
            if dx < k:
                continue
            f = 1
            for t in range(dx - k + 1, dx + 1):
                f *= t
            out[(dx - k, dM, dN)] = c * f
        return _raw(out)

    def collect(self) -> dict:
        """Split into {(deg_M, deg_N): x-only part}, keys in canonical order."""
        parts: dict = {}
        for (dx, dM, dN), c in self.terms.items():
            parts.setdefault((dM, dN), {})[(dx, 0, 0)] = c
        return {k: _raw(parts[k]) for k in sorted(parts, key=mn_order)}

    def subs(self, mapping: Mapping) -> MPoly:
        """Simultaneous substitution; values may be rationals or MPoly."""
        idx = {_VARS.index(name): value for name, value in mapping.items()}
        if not idx:
            return self
        out = MPoly()
        powers: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in powers:
                v = idx[i]
                powers[key] = (v if isinstance(v, MPoly) else MPoly.const(v)) ** k
            return powers[key]

        for mono, c in self.terms.items():
            kept = list(mono)
            term = MPoly.const(c)
            for i in idx:
                if mono[i]:
                    term = term * power(i, mono[i])
                    kept[i] = 0
            out = out + term * MPoly.monomial(1, *kept)
        return out

    def eval(self, mapping: Mapping):
        """Substitute; returns a Fraction when nothing symbolic remains."""
        out = self.subs(mapping)
        if all(m == (0, 0, 0) for m in out.terms):
            return out.coefficient()
        return out

    # text

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]))

    def __str__(self):
        return _format_terms(self.sorted_terms(), _VARS, _PRINT_ORDER)

    def __repr__(self):
        return f"MPoly({str(self)!r})"


def _raw(terms: dict) -> MPoly:
    p = MPoly.__new__(MPoly)
    p.terms = terms
    p._hash = None
    return p


X = MPoly.monomial(1, 1, 0, 0)
M = MPoly.monomial(1, 0, 1, 0)
N = MPoly.monomial(1, 0, 0, 1)
ONE = MPoly.const(1)
ZERO = MPoly()


def derivative_x(p: MPoly, k: int = 1) -> MPoly:
    return p.derivative_x(k)


def collect(p: MPoly) -> dict:
    return p.collect()


def parse(text: str) -> MPoly:
    return MPoly.parse(text)


def serialize(p: MPoly) -> str:
    return str(p)


# -- NPoly ---------------------------------------------------------------

class NPoly:
    """Polynomial in the degree index n, ascending coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c) -> NPoly:
        return cls([c])

    @classmethod
    def parse(cls, text: str) -> NPoly:
        terms = _parse_terms(text, ("n",))
        deg = max((k[0] for k in terms), default=-1)
        cs = [Fraction(0)] * (deg + 1)
        for (k,), c in terms.items():
            cs[k] = c
        return cls(cs)

    @classmethod
    def from_roots(cls, roots: Iterable, scale=1) -> NPoly:
        out = cls([scale])
        for r in roots:
            out = out * cls([-Fraction(r), 1])
        return out

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, n) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NPoly.const(other)
        a, b = self.coeffs, other.coeffs
        size = max(len(a), len(b))
        return NPoly(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(size)
        )

    __radd__ = __add__

    def __neg__(self):
        return NPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other if isinstance(other, NPoly) else -Fraction(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NPoly(c * other for c in self.coeffs)
        out = [Fraction(0)] * max(len(self.coeffs) + len(other.coeffs) - 1, 0)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return NPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NPoly.const(other)
        if not isinstance(other, NPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __str__(self):
        items = [((k,), c) for k, c in reversed(list(enumerate(self.coeffs))) if c]
        return _format_terms(items, ("n",), (0,))

    def __repr__(self):
        return f"NPoly({str(self)!r})"


def interp_n(samples: Iterable) -> NPoly:
    """Unique polynomial of degree < len(samples) through (n, value) pairs."""
    pts = [(Fraction(n), Fraction(v)) for n, v in samples]
    ns = [p[0] for p in pts]
    if len(set(ns)) != len(ns):
        raise ValueError("interp_n: duplicate n values")
    if len(pts) < 2:
        raise ValueError("interp_n: need at least two samples")
    # Newton divided differences, then expand the nested form.
    table = [v for _, v in pts]
    coef = [table[0]]
    for level in range(1, len(pts)):
        table = [
            (table[i + 1] - table[i]) / (ns[i + level] - ns[i]) for i in range(len(table) - 1)
        ]
        coef.append(table[0])
    out = NPoly.const(coef[-1])
    for k in range(len(coef) - 2, -1, -1):
        out = out * NPoly([-ns[k], 1]) + coef[k]
    return out
