"""Differential operators with polynomial coefficients and their verification.

An operator is a sum over M/N-monomial groups of ``M^a N^b sum_i c_i(x) y^(i)``
plus an optional classical second-order part and an eigenvalue term.  On a
polynomial of degree d only orders i <= d contribute, so even operators of
infinite order apply exactly.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import closedforms as cf
from .exact import as_rat, is_integer
from .families import FamilySpec
from .poly import ZERO, MPoly, NPoly, mn_order
from .report import Report, exact_entry


class UnsupportedEquation(ValueError):
    pass


@dataclass
class DiffOperator:
    name: str
    groups: dict = field(default_factory=dict)  # (deg_M, deg_N) -> CoeffSeq
    classical: dict = field(default_factory=dict)  # order -> x-polynomial
    eigen: object = None  # callable n -> Fraction
    default_family: FamilySpec | None = None
    min_n: int = 0

    def group_items(self):
        return sorted(self.groups.items(), key=lambda kv: mn_order(kv[0]))

    def apply(self, y: MPoly, n: int) -> MPoly:
        d = y.degree_x()
        if d < 0:
            return ZERO
        derivs = [y]
        for _ in range(d):
            derivs.append(derivs[-1].derivative_x(1))
        out: dict = {}

        def accumulate(poly: MPoly, shift=(0, 0)):
            for (dx, dM, dN), c in poly.terms.items():
                key = (dx, dM + shift[0], dN + shift[1])
                out[key] = out.get(key, 0) + c

        for (a, b), seq in self.group_items():
            for i in range(seq.max_order(d) + 1):
                coeff = seq.coefficient(i, n)
                if not coeff.is_zero():
                    accumulate(coeff * derivs[i], (a, b))
        for i, coeff in self.classical.items():
            if i <= d:
                accumulate(coeff * derivs[i])
        if self.eigen is not None:
            lam = self.eigen(n)
            if lam:
                accumulate(y * lam)
        return MPoly(out)

    def coefficient(self, i: int, n: int = 1) -> MPoly:
        """Full coefficient of y^(i) as a polynomial in x, M, N."""
        out = self.classical.get(i, ZERO)
        for (a, b), seq in self.groups.items():
            c = seq.coefficient(i, n)
            if not c.is_zero():
                out = out + c * MPoly.monomial(1, 0, a, b)
        if i == 0 and self.eigen is not None:
            out = out + self.eigen(n)
        return out

    def orders(self, cap: int, n: int = 1) -> dict:
        """Highest order with a nonzero coefficient: formally, at M=0 and at N=0."""
        found = {"formal": -1, "M=0": -1, "N=0": -1}
        for i in range(cap + 1):
            c = self.coefficient(i, n)
            if not c.is_zero():
                found["formal"] = i
            if not c.subs({"M": 0}).is_zero():
                found["M=0"] = i
            if not c.subs({"N": 0}).is_zero():
                found["N=0"] = i
        return found

    def to_text(self) -> str:
        lines = [f"operator {self.name}"]
        for (a, b), seq in self.group_items():
            lines.append(f"[group {cf.GROUP_NAMES.get((a, b), f'M^{a}N^{b}')}]")
            lines.append(seq.to_text())
        if self.classical:
            lines.append("[classical]")
            lines += [f"{i}: {p}" for i, p in sorted(self.classical.items(), reverse=True)]
        if self.eigen is not None:
            lines.append(f"[eigen] {self.eigen}")
        return "\n".join(lines) + "\n"


def apply(op: DiffOperator, y: MPoly, n: int) -> MPoly:
    return op.apply(y, n)


def verify_family(op: DiffOperator, spec: FamilySpec, n_range) -> Report:
    n_values = list(n_range)
    if not n_values:
        raise ValueError("verify_family: empty n range")
    start = time.perf_counter()
    report = Report(f"verify {op.name} on {spec.kind} alpha={spec.alpha}"
                    + (f" beta={spec.beta}" if not spec.is_laguerre else ""))
    cap = max(n_values)
    orders = op.orders(cap, n=max(cap, 1))
    report.notes.append(
        f"orders up to {cap}: formal {orders['formal']}, at M=0 {orders['M=0']}, at N=0 {orders['N=0']}"
    )
    for n in n_values:
        report.add(exact_entry(f"n={n}", op.apply(spec.member(n), n)))
    report.elapsed = time.perf_counter() - start
    return report


# -- named equations -----------------------------------------------------

def _classical(spec: FamilySpec) -> dict:
    return spec.classical_coeffs()


def _laguerre_base(name, alpha, family_kind) -> DiffOperator:
    spec = FamilySpec(family_kind, alpha)
    return DiffOperator(name, classical=_classical(spec), eigen=spec.eigen(), default_family=spec)


def assemble(kind: str, alpha=0, beta=None) -> DiffOperator:
    """Build one of the named operators for the given parameters."""
    a = as_rat(alpha)
    if kind == "classical-laguerre":
        return _laguerre_base(kind, a, "classical-laguerre")
    if kind == "classical-jacobi":
        b = a if beta is None else as_rat(beta)
        spec = FamilySpec("classical-jacobi", a, b)
        return DiffOperator(kind, classical=_classical(spec), eigen=spec.eigen(), default_family=spec)
    if kind == "koornwinder-dv":
        op = _laguerre_base(kind, a, "koornwinder-laguerre")
        op.groups[(1, 0)] = cf.laguerre_a_seq(a)
        return op
    if kind == "dvstar":
        # both sums start at i = 0 with b*_0 = c*_0 = 1
        unit = cf.CoeffSeq("1", const=NPoly.const(1), rule=lambda i: cf.sobolev_bstar(a, i))
        mass = cf.CoeffSeq("M", const=NPoly.const(1), rule=lambda i: cf.sobolev_cstar(a, i))
        return DiffOperator(
            kind,
            groups={(0, 0): unit, (1, 0): mass},
            default_family=FamilySpec("sobolev-laguerre", a),
            min_n=1,
        )
    if kind == "golden-sobolev":
        if not (is_integer(a) and int(a) in (0, 1, 2)):
            raise UnsupportedEquation("golden tables exist only for alpha in {0, 1, 2}")
        op = _laguerre_base(kind, a, "sobolev-laguerre")
        for group in ("a", "beta", "gamma"):
            seq = cf.golden(int(a), group).as_coeffseq()
            op.groups[cf.group_key(seq.group)] = seq
        return op
    if kind == "golden-sobolev-display":
        if a != 0:
            raise UnsupportedEquation("the fully displayed equation is the alpha = 0 one")
        return load_equation(cf._data_text("sobolev_alpha0_equation.txt"), name=kind)
    if kind == "sym-b":
        unit = cf.CoeffSeq("1", const=cf.NFunction("(1-(-1)^n)/2", cf.sym_b0), rule=_sym_b_rule)
        return DiffOperator(kind, groups={(0, 0): unit},
                            default_family=FamilySpec("symmetric-jacobi", a))
    if kind == "conjecture":
        spec = FamilySpec("symmetric-jacobi", a)
        op = DiffOperator(kind, classical=_classical(spec), eigen=spec.eigen(), default_family=spec)
        op.groups[(1, 0)] = cf.conj_c_seq(a)
        return op
    raise UnsupportedEquation(f"unknown equation {kind!r}")


def _sym_b_rule(i: int) -> MPoly:
    return ZERO if i == 0 else cf.sym_b(i)


EQUATIONS = (
    "classical-laguerre",
    "classical-jacobi",
    "koornwinder-dv",
    "dvstar",
    "golden-sobolev",
    "golden-sobolev-display",
    "sym-b",
    "conjecture",
)


# -- equation files ------------------------------------------------------

def load_equation(text: str, name: str = "file") -> DiffOperator:
    """Parse an operator written order by order.

    Format (``#`` starts a comment)::

        classical = laguerre | jacobi | none
        family = sobolev-laguerre       # optional default family for verification
        alpha = 0
        beta = 0
        eigen = <npoly in n>            # optional, defaults to the classical one
        order 10: 1/60*M*N*x^5
        const MN: 1/60*n^5 + ...
    """
    settings = {"classical": "none", "alpha": "0", "beta": None, "eigen": None, "family": None}
    orders: dict = {}
    consts: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("order "):
            head, _, body = line.partition(":")
            orders[int(head.split()[1])] = MPoly.parse(body)
        elif line.startswith("const "):
            head, _, body = line.partition(":")
            consts[head.split()[1]] = NPoly.parse(body)
        elif "=" in line:
            key, _, value = (s.strip() for s in line.partition("="))
            if key not in settings:
                raise ValueError(f"line {lineno}: unknown setting {key!r}")
            settings[key] = value
        else:
            raise ValueError(f"line {lineno}: cannot parse {raw!r}")

    alpha = as_rat(settings["alpha"])
    beta = alpha if settings["beta"] is None else as_rat(settings["beta"])
    classical = {}
    eigen = None
    family = None
    if settings["classical"] == "laguerre":
        family = FamilySpec("sobolev-laguerre", alpha)
    elif settings["classical"] == "jacobi":
        family = FamilySpec("generalized-jacobi", alpha, beta)
    elif settings["classical"] != "none":
        raise ValueError(f"unknown classical part {settings['classical']!r}")
    if family is not None:
        classical = family.classical_coeffs()
        eigen = family.eigen()
    if settings["eigen"] is not None:
        eigen = NPoly.parse(settings["eigen"])
    if settings["family"] is not None:
        family = FamilySpec(settings["family"], alpha, beta)

    by_group: dict = {}
    for i, poly in orders.items():
        for key, part in poly.collect().items():
            by_group.setdefault(key, {})[i] = part
    for label in consts:
        by_group.setdefault(cf.group_key(label), {})
    groups = {}
    for key, entries in by_group.items():
        label = cf.GROUP_NAMES.get(key, f"M^{key[0]}N^{key[1]}")
        groups[key] = cf.CoeffSeq(label, entries, const=consts.get(label))
    return DiffOperator(name, groups=groups, classical=classical, eigen=eigen, default_family=family)

