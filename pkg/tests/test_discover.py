from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from orthodiff import closedforms as cf
from orthodiff.discover import (
    Ansatz,
    Column,
    LinSys,
    build_system,
    discover,
    extract,
    operator_assignment,
    solve_exact,
)
from orthodiff.families import FamilySpec
from orthodiff.operator import assemble
from orthodiff.poly import NPoly, X

SOBOLEV_GROUPS = [(1, 0), (0, 1), (1, 1)]


def _system(rows, rhs):
    cols = [Column((0, 0), 0, j) for j in range(len(rows[0]))]
    sparse = [{k: Fraction(v) for k, v in enumerate(r) if v} for r in rows]
    labels = [(0, (0, 0), i) for i in range(len(rows))]
    return LinSys(cols, labels, sparse, [Fraction(b) for b in rhs])


def test_identity_system():
    sol = solve_exact(_system([[1, 0], [0, 1]], [3, 4]))
    assert sol.particular == {0: 3, 1: 4}
    assert sol.nullspace == [] and sol.free == []


def test_rref_is_canonical():
    rows = [[0, 2, 4, 2], [1, 1, 1, 1], [1, 3, 5, 3]]
    rhs = [2, 1, 3]
    forward = solve_exact(_system(rows, rhs))
    backward = solve_exact(_system(rows[::-1], rhs[::-1]))
    assert forward.pivots == backward.pivots == [0, 1]
    assert forward.particular == backward.particular
    assert forward.nullspace == backward.nullspace
    assert forward.free == [2, 3]
    # each basis vector has its free column set to one
    assert forward.nullspace[0][2] == 1 and 3 not in forward.nullspace[0]


def test_infeasible_reports_row():
    sol = solve_exact(_system([[1, 1], [2, 2]], [1, 3]))
    assert not sol.feasible and sol.infeasible == (0, (0, 0), 1)


matrices = st.integers(1, 5).flatmap(
    lambda cols: st.lists(
        st.lists(st.integers(-3, 3), min_size=cols + 1, max_size=cols + 1), min_size=1, max_size=6
    )
)


@given(matrices)
@settings(max_examples=80)
def test_every_assignment_satisfies_the_system(rows):
    system = _system([r[:-1] for r in rows], [r[-1] for r in rows])
    sol = solve_exact(system)
    if not sol.feasible:
        return
    assert system.residual(sol.particular) == []
    for basis in sol.nullspace:
        assert system.residual(basis, homogeneous=True) == []
    assert system.residual(sol.representative({f: 2 for f in sol.free})) == []


def test_trivial_classical_system():
    ansatz = Ansatz(groups=[(1, 0)], max_order=0)
    spec = FamilySpec("classical-laguerre", 0)
    sol = solve_exact(build_system(ansatz, spec, [0, 1]))
    assert sol.feasible
    assert sol.particular == {}


def test_row_count_is_dense_grid():
    ansatz = Ansatz(groups=[(1, 0)], max_order=4)
    spec = FamilySpec("koornwinder-laguerre", 0)
    system = build_system(ansatz, spec, range(1, 9))
    expected = 0
    for n in range(1, 9):
        monos = {lab[1] for lab in system.row_labels if lab[0] == n}
        top = max(lab[2] for lab in system.row_labels if lab[0] == n)
        expected += len(monos) * (top + 1)
    assert system.shape[0] == expected
    assert ansatz.unknowns_per_n() == sum(i + 3 for i in range(5))


def test_koornwinder_table_in_solution_set():
    ansatz = Ansatz(groups=[(1, 0)], max_order=4)
    spec = FamilySpec("koornwinder-laguerre", 0)
    system = build_system(ansatz, spec, range(1, 9))
    sol = solve_exact(system)
    values, missing = operator_assignment(assemble("koornwinder-dv", 0), system.columns)
    assert missing == []
    assert system.residual(values) == []
    assert sol.dimension == 0


def test_extract_and_fit():
    ansatz = Ansatz(groups=[(1, 0)], max_order=4)
    spec = FamilySpec("koornwinder-laguerre", 0)
    result = discover(ansatz, spec, range(0, 7), range(7, 13))
    assert result.status == "CONFIRMED"
    seq = result.extraction.groups[(1, 0)]
    assert seq.const == NPoly.parse("1/2*n^2 + 1/2*n")
    assert seq.entry(2) == 3 * X - X**2 / 2


def test_extract_empty_solution():
    ansatz = Ansatz(groups=[(1, 0)], max_order=0)
    spec = FamilySpec("classical-laguerre", 0)
    sol = solve_exact(build_system(ansatz, spec, [0, 1, 2]))
    assert extract(sol, ansatz, [0, 1, 2]).groups == {}


def test_unvalidated_fit_falls_back_to_table():
    ansatz = Ansatz(groups=[(1, 0)], max_order=4)
    spec = FamilySpec("koornwinder-laguerre", 0)
    sol = solve_exact(build_system(ansatz, spec, range(0, 7)))
    out = extract(sol, ansatz, range(0, 7))
    assert out.flags and isinstance(out.groups[(1, 0)].const, cf.NTable)


def test_symmetric_jacobi_reproduces_conjecture():
    for alpha in (0, 1):
        ansatz = Ansatz(groups=[(1, 0)], max_order=2 * alpha + 4)
        spec = FamilySpec("symmetric-jacobi", alpha)
        result = discover(ansatz, spec, range(0, 2 * alpha + 7), range(2 * alpha + 7, 2 * alpha + 10))
        assert result.status == "CONFIRMED"
        seq = result.extraction.groups[(1, 0)]
        for i in range(1, 7):
            assert seq.entry(i) == cf.conj_c(alpha, i)
    assert result.extraction.groups[(1, 0)].entry(2) == 10 * (1 - X**2)  # (2*1+3)(1-x^2) * 2


def test_over_constrained_is_infeasible():
    ansatz = Ansatz(groups=SOBOLEV_GROUPS, max_order=2)
    result = discover(ansatz, FamilySpec("sobolev-laguerre", 0), range(0, 11), [11])
    assert result.status == "INFEASIBLE"
    assert result.solution.infeasible == (3, (1, 0), 3)
    assert "n=3, M, x^3" in result.to_text()


def test_adding_degrees_shrinks_solution_set():
    ansatz = Ansatz(groups=[(1, 0)], max_order=4)
    spec = FamilySpec("koornwinder-laguerre", 0)
    small = build_system(ansatz, spec, range(1, 4))
    big = build_system(ansatz, spec, range(1, 6))
    big_sol = solve_exact(big)
    small_index = small.index()
    for assignment in [big_sol.particular] + [big_sol.representative({f: 1}) for f in big_sol.free]:
        moved = {small_index[str(big.columns[k])]: v for k, v in assignment.items() if str(big.columns[k]) in small_index}
        assert small.residual(moved) == []
    assert solve_exact(small).dimension > big_sol.dimension


def test_pins_select_representative():
    ansatz = Ansatz(groups=[(1, 0)], max_order=4)
    spec = FamilySpec("koornwinder-laguerre", 0)
    loose = solve_exact(build_system(ansatz, spec, range(1, 4)))
    label = str(loose.columns[loose.free[0]])
    pinned = solve_exact(build_system(ansatz, spec, range(1, 4), pins={label: 5}))
    assert pinned.value(label) == 5
    with pytest.raises(KeyError):
        build_system(ansatz, spec, [1], pins={"(N,1,1)": 1})


def test_determinism():
    ansatz = Ansatz(groups=[(1, 0)], max_order=4)
    spec = FamilySpec("koornwinder-laguerre", 1)
    a = discover(ansatz, spec, range(0, 7), range(7, 9)).to_text()
    b = discover(ansatz, spec, range(0, 7), range(7, 9)).to_text()
    assert a == b


def test_ansatz_config():
    text = """
    # Sobolev shape
    groups = M, N, MN
    max_order = 10
    max_degree = i+1
    max_degree.0 = 0
    include_classical = true
    eigen = n
    n_dependent_orders = 0
    """
    ansatz = Ansatz.parse(text)
    assert ansatz.groups == SOBOLEV_GROUPS
    assert ansatz.degree_cap(0) == 0 and ansatz.degree_cap(5) == 6
    assert ansatz.eigen == NPoly.parse("n")
    assert Ansatz.parse(ansatz.to_text()) == ansatz
    with pytest.raises(ValueError):
        Ansatz.parse("colour = blue")
    with pytest.raises(ValueError):
        Ansatz.parse("groups = Q")


def test_bad_n_set():
    ansatz = Ansatz()
    spec = FamilySpec("classical-laguerre", 0)
    with pytest.raises(ValueError):
        build_system(ansatz, spec, [1, 1])
    with pytest.raises(ValueError):
        build_system(ansatz, spec, [-1])
    with pytest.raises(ValueError):
        discover(ansatz, spec, [0, 1, 2], [2])
