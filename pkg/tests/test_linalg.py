import pytest

from qpb.cyclotomic import CycloField
from qpb.errors import InputError
from qpb.linalg import (
    BasedSpace, Echelon, LinearMap, QuotientSpace, graded_twist,
    intersect_spans, nullspace_of_columns, quotient_by, solve_linear,
    span_basis, spans_equal, twist_map,
)

F = CycloField(12)
ONE = F.one


def vec(*pairs):
    return {i: F.rational(c) for i, c in pairs if c}


def space(n, prefix="e"):
    return BasedSpace(tuple(f"{prefix}{i}" for i in range(n)))


def test_solve_identity():
    m = LinearMap.identity(space(3), F)
    assert solve_linear(m, vec((0, 1))) == vec((0, 1))


def test_solve_underdetermined_pivot_rule():
    # 1x2 matrix [1 1], target [2] -> [2, 0]
    m = LinearMap(space(2), space(1), [vec((0, 1)), vec((0, 1))], F)
    assert solve_linear(m, vec((0, 2))) == vec((0, 2))


def test_solve_inconsistent():
    m = LinearMap(space(2), space(2), [vec((0, 1), (1, 1)), vec((0, 1), (1, 1))], F)
    assert solve_linear(m, vec((0, 1))) is None


def test_solve_rejects_bad_target():
    m = LinearMap.identity(space(2), F)
    with pytest.raises(InputError):
        solve_linear(m, {5: ONE})


def test_solution_check_by_substitution():
    cols = [vec((0, 2), (1, 1)), vec((0, 1)), vec((1, 3), (2, 1))]
    m = LinearMap(space(3), space(3), cols, F)
    b = vec((0, 7), (1, 5), (2, 2))
    x = m.solve(b)
    assert x is not None and m.apply(x) == b


def test_nullspace():
    # x + y = 0 has kernel spanned by (1, -1) after normalization at the free var
    cols = [vec((0, 1)), vec((0, 1))]
    ker = nullspace_of_columns(cols, F)
    assert len(ker) == 1
    m = LinearMap(space(2), space(1), cols, F)
    assert m.apply(ker[0]) == {}


def test_quotient_basic():
    amb = space(2)
    q = quotient_by(amb, [vec((0, 1), (1, -1))], F)
    assert q.dim == 1
    assert q.verify()
    # both classes agree
    assert q.project(vec((0, 1))) == q.project(vec((1, 1)))


def test_quotient_no_relations():
    amb = space(3)
    q = quotient_by(amb, [], F)
    assert q.dim == 3
    assert q.projection == LinearMap.identity(amb, F)
    assert q.verify()


def test_quotient_rejects_out_of_range():
    with pytest.raises(InputError):
        quotient_by(space(2), [{5: ONE}], F)


def test_echelon_membership_and_span():
    e = Echelon()
    assert e.add(vec((0, 1), (1, 2)))
    assert e.add(vec((1, 1)))
    assert not e.add(vec((0, 3), (1, 1)))
    assert e.rank == 2
    assert e.contains(vec((0, 5)))
    basis = span_basis([vec((0, 1), (1, 2)), vec((0, 2), (1, 4)), vec((2, 1))])
    assert len(basis) == 2
    assert spans_equal(basis, [vec((0, 1), (1, 2)), vec((2, 7))])


def test_intersection():
    u = [vec((0, 1)), vec((1, 1))]
    w = [vec((1, 1)), vec((2, 1))]
    both = intersect_spans(u, w)
    assert len(both) == 1 and both[0] == vec((1, 1))


def test_antilinear_composition_and_inverse():
    z = F.zeta()
    st = LinearMap(space(1), space(1), [{0: z}], F, antilinear=True)
    # st(c*e0) = conj(c)*z*e0; involutive iff z*conj(z) = 1
    comp = st.compose(st)
    assert not comp.antilinear
    assert comp == LinearMap.identity(space(1), F)
    inv = st.inverse()
    assert inv.compose(st) == LinearMap.identity(space(1), F)


def test_graded_twist_signs():
    # deg0 x deg0: plain transposition
    v = {0 * 2 + 1: ONE}  # e0 (x) f1 in 2x2
    flipped = graded_twist(v, 2, 2, [0, 0], [0, 0])
    assert flipped == {1 * 2 + 0: ONE}
    # deg1 x deg1: sign -1
    tw = graded_twist(v, 2, 2, [1, 1], [1, 1])
    assert tw == {1 * 2 + 0: -ONE}
    # chi^2 = id on homogeneous pairs
    back = graded_twist(tw, 2, 2, [1, 1], [1, 1])
    assert back == v
    with pytest.raises(InputError):
        graded_twist(v, 2, 2, None, [0, 0])


def test_twist_map_matches_pointwise():
    a, b = space(2, "a"), space(3, "b")
    da, db = [0, 1], [1, 1, 0]
    tm = twist_map(a, b, da, db, F)
    for i in range(2):
        for j in range(3):
            v = {i * 3 + j: ONE}
            assert tm.apply(v) == graded_twist(v, 2, 3, da, db)


def test_inverse_roundtrip():
    cols = [vec((0, 1), (1, 1)), vec((1, 1))]
    m = LinearMap(space(2), space(2), cols, F)
    inv = m.inverse()
    assert inv.compose(m) == LinearMap.identity(space(2), F)
    assert m.compose(inv) == LinearMap.identity(space(2), F)
