"""Finding annihilating operators by solving for unknown coefficients.

The pipeline: postulate an operator shape with unknown x-polynomial
coefficients (an :class:`Ansatz`), apply it to the family at a handful of
degrees n, require every (M, N, x)-monomial of the result to vanish, solve
the resulting linear system exactly, and read the coefficients back out.

Index conventions (fixed, so elimination is deterministic):

* columns are ordered by group (``1, M, N, MN``, i.e. total M/N degree then
  M first), then order i ascending, then x-degree j ascending; an order whose
  coefficient may depend on n has one column per (j, n), n ascending within j.
* rows are ordered by n ascending, then M/N-monomial in the same group order,
  then x-power ascending.  Pin rows (``column = value``) come last.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import closedforms as cf
from .families import FamilySpec
from .operator import DiffOperator, verify_family
from .poly import ZERO, MPoly, NPoly, interp_n, mn_order
from .report import Report


class InfeasibleSystem(ValueError):
    def __init__(self, row_label):
        super().__init__(f"inconsistent equation at {format_row(row_label)}")
        self.row_label = row_label


# -- ansatz ----------------------------------------------------------------

@dataclass
class Ansatz:
    groups: list = field(default_factory=lambda: [(1, 0)])
    max_order: int = 2
    max_degree: dict = field(default_factory=dict)  # i -> cap; missing i uses i + degree_slack
    degree_slack: int = 2
    include_classical: bool = True
    eigen: NPoly | None = None  # None: the family's own eigenvalue when classical is on
    n_dependent_orders: frozenset = frozenset({0})

    def __post_init__(self):
        self.groups = sorted({tuple(g) for g in self.groups}, key=mn_order)
        self.n_dependent_orders = frozenset(self.n_dependent_orders)
        if self.max_order < 0:
            raise ValueError("max_order must be nonnegative")

    def degree_cap(self, i: int) -> int:
        return self.max_degree.get(i, i + self.degree_slack)

    def unknowns_per_n(self) -> int:
        """Unknowns per group, counting an n-dependent order once."""
        return sum(self.degree_cap(i) + 1 for i in range(self.max_order + 1))

    def columns(self, n_set) -> list:
        ns = sorted(set(n_set))
        cols = []
        for g in self.groups:
            for i in range(self.max_order + 1):
                for j in range(self.degree_cap(i) + 1):
                    if i in self.n_dependent_orders:
                        cols += [Column(g, i, j, n) for n in ns]
                    else:
                        cols.append(Column(g, i, j))
        return cols

    @classmethod
    def parse(cls, text: str) -> Ansatz:
        """Read ``key = value`` lines.

        Keys: ``groups`` (comma list of 1, M, N, MN), ``max_order``,
        ``max_degree`` (``i+k`` or an integer), ``max_degree.<i>``,
        ``include_classical`` (true/false), ``eigen`` (npoly in n or ``none``),
        ``n_dependent_orders`` (comma list).
        """
        kw: dict = {"max_degree": {}}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = (s.strip() for s in line.partition("="))
            if not sep:
                raise ValueError(f"line {lineno}: expected key = value")
            if key == "groups":
                kw["groups"] = [cf.group_key(g.strip()) for g in value.split(",") if g.strip()]
            elif key == "max_order":
                kw["max_order"] = int(value)
            elif key == "max_degree":
                m = re.fullmatch(r"i\s*(?:\+\s*(\d+))?", value)
                if m:
                    kw["degree_slack"] = int(m.group(1) or 0)
                else:
                    kw["degree_slack"] = None
                    kw["uniform_degree"] = int(value)
            elif key.startswith("max_degree."):
                kw["max_degree"][int(key.split(".", 1)[1])] = int(value)
            elif key == "include_classical":
                if value.lower() not in ("true", "false", "yes", "no", "1", "0"):
                    raise ValueError(f"line {lineno}: include_classical must be true or false")
                kw["include_classical"] = value.lower() in ("true", "yes", "1")
            elif key == "eigen":
                kw["eigen"] = None if value.lower() == "none" else NPoly.parse(value)
            elif key == "n_dependent_orders":
                kw["n_dependent_orders"] = frozenset(int(v) for v in value.split(",") if v.strip())
            else:
                raise ValueError(f"line {lineno}: unknown key {key!r}")
        uniform = kw.pop("uniform_degree", None)
        if uniform is not None:
            order = kw.get("max_order", 2)
            caps = {i: uniform for i in range(order + 1)}
            caps.update(kw["max_degree"])
            kw["max_degree"] = caps
            kw["degree_slack"] = 0
        return cls(**kw)

    def to_text(self) -> str:
        lines = [
            "groups = " + ", ".join(cf.GROUP_NAMES[g] for g in self.groups),
            f"max_order = {self.max_order}",
            f"max_degree = i+{self.degree_slack}",
        ]
        lines += [f"max_degree.{i} = {d}" for i, d in sorted(self.max_degree.items())]
        lines.append(f"include_classical = {'true' if self.include_classical else 'false'}")
        if self.eigen is not None:
            lines.append(f"eigen = {self.eigen}")
        lines.append("n_dependent_orders = " + ", ".join(map(str, sorted(self.n_dependent_orders))))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Column:
    group: tuple
    order: int
    xdeg: int
    n: int | None = None  # set for a coefficient allowed to vary with n

    def __str__(self):
        g = cf.GROUP_NAMES[self.group]
        tail = "" if self.n is None else f";n={self.n}"
        return f"({g},{self.order},{self.xdeg}{tail})"


def format_row(label) -> str:
    if label[0] == "pin":
        return f"pin {label[1]}"
    n, (a, b), xpow = label
    return f"n={n}, {cf.GROUP_NAMES.get((a, b), f'M^{a}N^{b}')}, x^{xpow}"


# -- linear system -----------------------------------------------------------

@dataclass
class LinSys:
    columns: list
    row_labels: list
    rows: list  # sparse dicts column index -> Fraction
    rhs: list

    @property
    def shape(self):
        return len(self.rows), len(self.columns)

    def index(self) -> dict:
        return {str(c): k for k, c in enumerate(self.columns)}

    def residual(self, values: dict, homogeneous: bool = False) -> list:
        """Rows violated by an assignment {column index: value}; empty means exact."""
        bad = []
        for label, row, b in zip(self.row_labels, self.rows, self.rhs):
            if homogeneous:
                b = 0
            total = sum((c * values.get(k, 0) for k, c in row.items()), Fraction(0))
            if total != b:
                bad.append(label)
        return bad


def _known_part(spec: FamilySpec, ansatz: Ansatz, y: MPoly, n: int) -> MPoly:
    out = ZERO
    if ansatz.include_classical:
        for i, coeff in spec.classical_coeffs().items():
            out = out + coeff * y.derivative_x(i)
    eigen = ansatz.eigen
    if eigen is None and ansatz.include_classical:
        eigen = spec.eigen()
    if eigen is not None:
        out = out + y * eigen(n)
    return out


def build_system(ansatz: Ansatz, spec: FamilySpec, n_set, pins: dict | None = None) -> LinSys:
    """One equation per (n, M/N-monomial, x-power) of the applied ansatz.

    ``pins`` maps column labels (``"(N,3,1)"``) to required values.
    """
    ns = list(n_set)
    if len(set(ns)) != len(ns) or any(n < 0 for n in ns):
        raise ValueError("n_set must hold distinct nonnegative integers")
    ns = sorted(ns)
    columns = ansatz.columns(ns)
    by_n: dict = {}
    for k, col in enumerate(columns):
        by_n.setdefault(col.n, []).append((k, col))

    row_labels, rows, rhs = [], [], []
    for n in ns:
        y = spec.member(n)
        derivs = [y]
        for _ in range(max(ansatz.max_order, 2)):
            derivs.append(derivs[-1].derivative_x(1))
        known = _known_part(spec, ansatz, y, n)
        contributions = []  # (column index, polynomial)
        for k, col in by_n.get(None, []) + by_n.get(n, []):
            d = derivs[col.order]
            if d.is_zero():
                continue
            a, b = col.group
            contributions.append((k, d * MPoly.monomial(1, col.xdeg, a, b)))
        entries: dict = {}
        for k, poly in contributions:
            for (dx, dM, dN), c in poly.terms.items():
                entries.setdefault(((dM, dN), dx), {})[k] = c
        known_terms = {((dM, dN), dx): c for (dx, dM, dN), c in known.terms.items()}
        keys = set(entries) | set(known_terms)
        if not keys:
            continue
        monos = sorted({mn for mn, _ in keys}, key=mn_order)
        top = max(dx for _, dx in keys)
        for mn in monos:
            for dx in range(top + 1):
                row_labels.append((n, mn, dx))
                rows.append(dict(sorted(entries.get((mn, dx), {}).items())))
                rhs.append(-known_terms.get((mn, dx), Fraction(0)))
    if pins:
        index = {str(c): k for k, c in enumerate(columns)}
        for label, value in pins.items():
            if label not in index:
                raise KeyError(f"pinned column {label} is not part of the ansatz")
            row_labels.append(("pin", label))
            rows.append({index[label]: Fraction(1)})
            rhs.append(Fraction(value))
    return LinSys(columns, row_labels, rows, rhs)


# -- exact elimination -------------------------------------------------------

@dataclass
class SolutionSpace:
    columns: list
    particular: dict  # column index -> value (free columns zero); empty if infeasible
    nullspace: list  # list of {column index: value}, one per free column
    free: list  # free column indices, ascending
    pivots: list  # pivot column indices, ascending
    infeasible: tuple | None = None

    @property
    def feasible(self) -> bool:
        return self.infeasible is None

    @property
    def dimension(self) -> int:
        return len(self.nullspace) if self.feasible else -1

    def value(self, label: str, assignment: dict | None = None) -> Fraction:
        assignment = self.particular if assignment is None else assignment
        for k, c in enumerate(self.columns):
            if str(c) == label:
                return assignment.get(k, Fraction(0))
        raise KeyError(label)

    def representative(self, free_values: dict | None = None) -> dict:
        """Particular solution plus the given multiples of the nullspace basis."""
        out = dict(self.particular)
        for f, basis in zip(self.free, self.nullspace):
            t = Fraction((free_values or {}).get(f, 0))
            if t:
                for k, v in basis.items():
                    out[k] = out.get(k, 0) + t * v
        return {k: v for k, v in out.items() if v}

    def to_text(self) -> str:
        if not self.feasible:
            return f"INFEASIBLE at {format_row(self.infeasible)}\n"
        lines = [f"rank {len(self.pivots)}, free {len(self.free)}"]
        lines.append("[particular]")
        lines += [f"{self.columns[k]} = {v}" for k, v in sorted(self.particular.items()) if v]
        for f, basis in zip(self.free, self.nullspace):
            lines.append(f"[null {self.columns[f]}]")
            lines += [f"{self.columns[k]} = {v}" for k, v in sorted(basis.items())]
        return "\n".join(lines) + "\n"


def solve_exact(sys: LinSys) -> SolutionSpace:
    """Reduced row echelon form by incremental insertion.

    Each incoming row is reduced against the current pivot rows; if anything
    is left its first nonzero column becomes a new pivot and is cleared from
    the existing rows.  Existing rows keep their leading column under this
    update, so the result is the reduced echelon form in the fixed column
    order whatever order rows arrive in.
    """
    pivot_rows: dict = {}  # pivot column -> (row dict, rhs)
    for label, row, b in zip(sys.row_labels, sys.rows, sys.rhs):
        if not row and b == 0:
            continue
        row = dict(row)
        b = Fraction(b)
        for k in [k for k in row if k in pivot_rows]:
            c = row.pop(k, 0)
            if not c:
                continue
            prow, pb = pivot_rows[k]
            for kk, v in prow.items():
                if kk == k:
                    continue
                nv = row.get(kk, 0) - c * v
                if nv:
                    row[kk] = nv
                else:
                    row.pop(kk, None)
            b -= c * pb
        if not row:
            if b != 0:
                return SolutionSpace(sys.columns, {}, [], [], sorted(pivot_rows), infeasible=label)
            continue
        lead = min(row)
        inv = 1 / row[lead]
        row = {k: v * inv for k, v in row.items()}
        b *= inv
        for pk, (prow, pb) in pivot_rows.items():
            c = prow.get(lead)
            if not c:
                continue
            for kk, v in row.items():
                nv = prow.get(kk, 0) - c * v
                if nv:
                    prow[kk] = nv
                else:
                    prow.pop(kk, None)
            pivot_rows[pk] = (prow, pb - c * b)
        pivot_rows[lead] = (row, b)

    pivots = sorted(pivot_rows)
    free = [k for k in range(len(sys.columns)) if k not in pivot_rows]
    particular = {p: pivot_rows[p][1] for p in pivots if pivot_rows[p][1]}
    nullspace = []
    for f in free:
        basis = {f: Fraction(1)}
        for p in pivots:
            v = pivot_rows[p][0].get(f)
            if v:
                basis[p] = -v
        nullspace.append(dict(sorted(basis.items())))
    return SolutionSpace(sys.columns, particular, nullspace, free, pivots)


# -- operators as assignments ------------------------------------------------

def operator_assignment(op: DiffOperator, columns: list) -> tuple:
    """Express the grouped part of ``op`` over ``columns``.

    Returns ``(values, missing)``: the assignment {column index: value} and a
    list of coefficient terms of ``op`` (up to the ansatz order) that no
    column can carry.
    """
    values = {}
    covered = set()
    for k, col in enumerate(columns):
        seq = op.groups.get(col.group)
        if seq is None:
            continue
        n = 0 if col.n is None else col.n
        if col.n is None and col.order == 0:
            coeff = seq.entry(0)
        elif col.n is None:
            coeff = seq.entry(col.order)
        else:
            coeff = seq.coefficient(col.order, n)
        v = coeff.coefficient(col.xdeg)
        covered.add((col.group, col.order, col.xdeg, col.n))
        if v:
            values[k] = v
    missing = []
    top = max((c.order for c in columns), default=-1)
    ns = sorted({c.n for c in columns if c.n is not None})
    for g, seq in op.groups.items():
        for i in range(top + 1):
            for n in (ns if any(c.n is not None and c.order == i for c in columns) else [None]):
                coeff = seq.coefficient(i, 0 if n is None else n) if n is not None else seq.entry(i)
                for dx in range(coeff.degree_x() + 1):
                    if coeff.coefficient(dx) and (g, i, dx, n) not in covered:
                        missing.append(str(Column(g, i, dx, n)))
    return values, missing


# -- extraction ---------------------------------------------------------------

class NCoefficient:
    """An order-i coefficient sum_j f_j(n) x^j with per-j n-dependence."""

    def __init__(self, parts: dict):
        self.parts = {j: f for j, f in sorted(parts.items())}

    def __call__(self, n) -> MPoly:
        return MPoly({(j, 0, 0): f(n) for j, f in self.parts.items()})

    def __str__(self):
        return " + ".join(f"({f})*x^{j}" if j else f"({f})" for j, f in self.parts.items())


@dataclass
class Extraction:
    groups: dict  # group key -> CoeffSeq
    flags: list = field(default_factory=list)

    @property
    def fitted(self) -> bool:
        return not self.flags


def _per_n_values(solution: SolutionSpace, assignment: dict) -> dict:
    """{(group, order, xdeg): {n: value}} for the n-dependent columns."""
    out: dict = {}
    for k, col in enumerate(solution.columns):
        if col.n is not None:
            out.setdefault((col.group, col.order, col.xdeg), {})[col.n] = assignment.get(k, Fraction(0))
    return out


def extract(solution: SolutionSpace, ansatz: Ansatz, n_set, assignment: dict | None = None,
            holdout: dict | None = None) -> Extraction:
    """Turn a solution into per-group coefficient sequences.

    n-dependent coefficients are fitted with :func:`interp_n` over ``n_set``.
    ``holdout`` maps n -> {(group, order, xdeg): value} from a re-solve with a
    larger n set; a fit that misses any held-out value, or that has no
    held-out data at all, is replaced by the per-n table and flagged.
    """
    if not solution.feasible:
        raise ValueError("cannot extract from an infeasible system")
    assignment = solution.particular if assignment is None else assignment
    entries: dict = {g: {} for g in ansatz.groups}
    for k, col in enumerate(solution.columns):
        if col.n is None:
            v = assignment.get(k, 0)
            if v:
                bucket = entries[col.group].setdefault(col.order, {})
                bucket[col.xdeg] = v

    fits: dict = {}
    flags = []
    for key, samples in sorted(_per_n_values(solution, assignment).items(), key=lambda kv: (mn_order(kv[0][0]), kv[0][1:])):
        held = {n: vals[key] for n, vals in (holdout or {}).items() if key in vals}
        if not any(samples.values()) and not any(held.values()):
            continue
        if len(samples) >= 2:
            fit = interp_n(sorted(samples.items()))
            if len(held) >= 2 and all(fit(n) == v for n, v in held.items()):
                fits[key] = fit
                continue
        flags.append(f"{Column(*key)}: per-n values kept, no validated polynomial fit")
        fits[key] = cf.NTable({**samples, **held})

    out = {}
    for g in ansatz.groups:
        polys = {
            i: MPoly({(j, 0, 0): v for j, v in coeffs.items()}) for i, coeffs in entries[g].items()
        }
        const = None
        n_entries = {}
        per_order: dict = {}
        for (gg, i, j), f in fits.items():
            if gg == g:
                per_order.setdefault(i, {})[j] = f
        for i, parts in per_order.items():
            if i == 0 and set(parts) == {0}:
                const = parts[0]
            else:
                n_entries[i] = NCoefficient(parts)
        if not polys and const is None and not n_entries:
            continue
        bound = max(list(polys) + list(n_entries) + [0])
        out[g] = cf.CoeffSeq(cf.GROUP_NAMES[g], polys, const=const, support_bound=bound, n_entries=n_entries)
    return Extraction(out, flags)


# -- end to end ----------------------------------------------------------------

@dataclass
class DiscoveryResult:
    status: str  # CONFIRMED | REFUTED | UNFITTED | INFEASIBLE
    solution: SolutionSpace
    extraction: Extraction | None
    operator: DiffOperator | None
    report: Report

    def to_text(self) -> str:
        parts = [f"STATUS: {self.status}", self.solution.to_text()]
        if self.operator is not None:
            parts.append(self.operator.to_text())
        if self.extraction is not None:
            parts += [f"# flag: {f}" for f in self.extraction.flags]
        parts.append(self.report.to_text())
        return "\n".join(p.rstrip("\n") for p in parts) + "\n"


def assemble_operator(spec: FamilySpec, ansatz: Ansatz, groups: dict, name: str = "discovered") -> DiffOperator:
    op = DiffOperator(name, groups=dict(groups), default_family=spec)
    if ansatz.include_classical:
        op.classical = spec.classical_coeffs()
    op.eigen = ansatz.eigen if ansatz.eigen is not None else (spec.eigen() if ansatz.include_classical else None)
    return op


def holdout_values(ansatz: Ansatz, spec: FamilySpec, n_set, pins=None, count: int = 2):
    """Re-solve with ``count`` extra degrees; return their n-dependent values.

    Returns ``(holdout, note)`` where ``note`` is empty unless the wider
    system was infeasible.
    """
    n_set = sorted(n_set)
    extra = [n_set[-1] + k for k in range(1, count + 1)]
    wider = solve_exact(build_system(ansatz, spec, n_set + extra, pins))
    if not wider.feasible:
        return {}, f"hold-out re-solve infeasible at {format_row(wider.infeasible)}"
    per_n = _per_n_values(wider, wider.particular)
    return {n: {key: vals[n] for key, vals in per_n.items()} for n in extra}, ""


def discover(ansatz: Ansatz, spec: FamilySpec, n_set, validate_n, pins: dict | None = None) -> DiscoveryResult:
    n_set = sorted(n_set)
    validate_n = sorted(validate_n)
    if set(validate_n) & set(n_set):
        raise ValueError("validation degrees must lie outside n_set")
    report = Report(f"discover on {spec.kind} alpha={spec.alpha}")
    system = build_system(ansatz, spec, n_set, pins)
    report.notes.append(f"system {system.shape[0]} x {system.shape[1]} over n = {n_set[0]}..{n_set[-1]}")
    solution = solve_exact(system)
    if not solution.feasible:
        report.notes.append(f"inconsistent row: {format_row(solution.infeasible)}")
        return DiscoveryResult("INFEASIBLE", solution, None, None, report)
    report.notes.append(f"rank {len(solution.pivots)}, nullspace dimension {solution.dimension}")
    assignment = solution.particular

    holdout = {}
    if any(c.n is not None for c in solution.columns):
        holdout, trouble = holdout_values(ansatz, spec, n_set, pins)
        if trouble:
            report.notes.append(trouble)
    extraction = extract(solution, ansatz, n_set, assignment, holdout)
    op = assemble_operator(spec, ansatz, extraction.groups)
    if not extraction.fitted:
        report.notes += extraction.flags
        return DiscoveryResult("UNFITTED", solution, extraction, op, report)
    check = verify_family(op, spec, validate_n)
    report.notes += check.notes
    report.entries += check.entries
    status = "CONFIRMED" if check.passed else "REFUTED"
    return DiscoveryResult(status, solution, extraction, op, report)


def sobolev_tables(alpha: int) -> dict:
    """Regenerate the M, N and MN coefficient tables of the Sobolev family.

    The ansatz has order 4*alpha + 10 and is solved on n = 0..order; the
    canonical solution (every free column zero) is returned per group.
    """
    order = 4 * int(alpha) + 10
    ansatz = Ansatz(groups=[(1, 0), (0, 1), (1, 1)], max_order=order)
    spec = FamilySpec("sobolev-laguerre", alpha)
    ns = list(range(order + 1))
    solution = solve_exact(build_system(ansatz, spec, ns))
    if not solution.feasible:
        raise InfeasibleSystem(solution.infeasible)
    holdout, _ = holdout_values(ansatz, spec, ns)
    return extract(solution, ansatz, ns, holdout=holdout).groups
