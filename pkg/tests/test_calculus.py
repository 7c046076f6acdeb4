import pytest

from qpb.calculus import (
    TotalCalculus, build_total_calculus, differential_suite,
    trivial_base_calculus, universal_base_calculus,
)
from qpb.cyclotomic import CycloField
from qpb.fodc import universal_ideal, zero_ideal
from qpb.presets import hopf_preset


def point_calculus(group, kind="function_algebra", ideal="universal"):
    h = hopf_preset(group, kind)
    point = trivial_base_calculus(_point_algebra(h.field))
    ib = universal_ideal(h) if ideal == "universal" else zero_ideal(h)
    return build_total_calculus(h, ib, point)


def _point_algebra(field):
    from qpb.hopf import StarAlgebra
    from qpb.linalg import BasedSpace, LinearMap
    space = BasedSpace(("1",))
    star = LinearMap(space, space, [{0: field.one}], field, antilinear=True)
    return StarAlgebra("C(pt)", field, space, [[{0: field.one}]], {0: field.one}, star)


def two_point_calculus(group, kind="function_algebra"):
    h = hopf_preset(group, kind)
    base = universal_base_calculus(2, h.field)
    return build_total_calculus(h, universal_ideal(h), base)


def test_universal_base_calculus_two_points():
    F = CycloField(1)
    m = universal_base_calculus(2, F)
    # dims n(n-1)^k: 2, 2, 2
    from collections import Counter
    assert Counter(m.degrees) == {0: 2, 1: 2, 2: 2}


def test_point_base_cz2_dims():
    tc = point_calculus("Z2")
    # Omega(P) = Gamma^: dims (2, 2, 2)
    from collections import Counter
    assert Counter(tc.omega.degrees) == {0: 2, 1: 2, 2: 2}
    assert tc.bundle.base_dim == 1
    # hor(P) = B over a point with the trivial base calculus
    assert len(tc.hor_basis()) == 2


def test_differential_suite_point_cz2():
    tc = point_calculus("Z2")
    rep = differential_suite(tc)
    assert rep.ok, rep.to_text()


def test_differential_suite_point_cz3():
    tc = point_calculus("Z3")
    rep = differential_suite(tc)
    assert rep.ok, rep.to_text()


def test_differential_suite_two_point_cz2():
    tc = two_point_calculus("Z2")
    rep = differential_suite(tc)
    assert rep.ok, rep.to_text()


def test_differential_suite_zero_calculus():
    tc = point_calculus("Z2", ideal="zero")
    rep = differential_suite(tc)
    assert rep.ok, rep.to_text()
    assert any(r.status == "vacuous" for r in rep.records)


def test_lhat_deg0_matches_gauge_coalgebra():
    tc = point_calculus("Z2")
    from qpb.gauge import build_gauge_coalgebra
    gc = build_gauge_coalgebra(tc.bundle)
    rep = differential_suite(tc, gauge_coalgebra=gc)
    assert rep.ok, rep.to_text()
    recs = {r.identity_id for r in rep.records}
    assert "diff.Lhat-deg0" in recs


def test_tau_hat_restricted_to_degree_zero_is_tau():
    tc = point_calculus("Z2")
    b = tc.bundle
    # group basis elements sit in degree 0 of Gamma^
    for a in range(tc.group.dim):
        v = tc.tau_hat.cols[tc.gamma.i0(a)]
        # translate to b2 coordinates
        acc = {}
        from qpb.linalg import viadd
        one = tc.field.one
        deg0 = tc._deg0
        pos = {i: k for k, i in enumerate(deg0)}
        for fi, c in tc.w2.lift(v).items():
            i, j = tc.w2.tuples[fi]
            viadd(acc, c, {b.b2.flat_index((pos[i], pos[j])): one})
        assert b.b2.project(acc) == b.tau.cols[a]
