import pytest

from qpb.bundle import build_bundle
from qpb.braiding import (
    braided_structure, classicality_report, sigma_m, verify_braiding_suite,
)
from qpb.presets import point_bundle_data, trivial_bundle_data


def make_point(group, kind="function_algebra"):
    return build_bundle(*point_bundle_data(group, kind))


def make_trivial(group, points):
    return build_bundle(*trivial_bundle_data(group, points))


def test_sigma_on_units():
    b = make_point("Z2", "group_algebra")
    braid = sigma_m(b)
    # sigma(1 (x) q) = q (x) 1 for every q
    one = b.field.one
    for q in range(b.total.dim):
        v = b.b2.project_tuple((0, q))  # basis 0 is the unit e of C[Z2]
        got = braid.forward.apply(v)
        assert got == b.b2.project_tuple((q, 0))


def test_sigma_z2_group_algebra_values():
    b = make_point("Z2", "group_algebra")
    braid = sigma_m(b)
    # sigma(g (x) h) = ghg^-1 (x) g; for Z2: sigma(g (x) e) = e (x) g etc.
    assert braid.forward.apply(b.b2.project_tuple((1, 0))) == b.b2.project_tuple((0, 1))
    assert braid.forward.apply(b.b2.project_tuple((1, 1))) == b.b2.project_tuple((1, 1))


def test_sigma_function_algebra_is_flip_over_point():
    b = make_point("S3")
    braid = sigma_m(b)
    for i in range(3):
        for j in range(3):
            assert braid.forward.apply(b.b2.project_tuple((i, j))) == \
                b.b2.project_tuple((j, i))


@pytest.mark.parametrize("mk", [
    lambda: make_point("Z3"),
    lambda: make_point("S3", "group_algebra"),
    lambda: make_trivial("Z2", 2),
])
def test_braiding_suite(mk):
    b = mk()
    rep = verify_braiding_suite(b)
    assert rep.ok, rep.to_text()


def test_braided_structure_b2():
    b = make_point("Z2")
    mult, star, rep = braided_structure(b, 2)
    assert rep.ok, rep.to_text()


def test_braided_structure_b3_small():
    b = make_point("Z2", "group_algebra")
    mult, star, rep = braided_structure(b, 3)
    assert rep.ok, rep.to_text()


def test_classicality_dichotomy():
    for group in ("Z2", "Z3", "S3"):
        classical, rep = classicality_report(make_point(group))
        assert classical, group
    classical, rep = classicality_report(make_point("S3", "group_algebra"))
    assert not classical
    recs = {r.identity_id: r for r in rep.records}
    assert recs["classicality.iv"].witness is not None
    assert "sigma^2" in recs["classicality.iv"].witness
    # trivial group: all four true
    classical, _ = classicality_report(make_point("trivial", "group_algebra"))
    assert classical


def test_classicality_trivial_bundle():
    classical, rep = classicality_report(make_trivial("Z2", 2))
    assert classical
