import pytest

from qpb.bundle import build_bundle, galois_tower, translation_identities
from qpb.errors import BudgetExceeded, NotPrincipal
from qpb.linalg import LinearMap
from qpb.presets import point_bundle_data, trivial_bundle_data


def make_point(group, kind="function_algebra"):
    return build_bundle(*point_bundle_data(group, kind))


def make_trivial(group, points):
    return build_bundle(*trivial_bundle_data(group, points))


def test_point_bundle_group_algebra_z2():
    b = make_point("Z2", "group_algebra")
    assert b.base_dim == 1
    assert b.b2.dim == 4
    # tau(g) = kappa(g) (x) g = g (x) g for the grouplike g (basis order e, g)
    i_g = 1
    assert b.tau.cols[i_g] == b.b2.project_tuple((i_g, i_g))


def test_trivial_bundle_dims():
    b = make_trivial("Z2", 2)
    assert b.base_dim == 2
    assert b.total.dim == 4
    assert b.b2.dim == 8  # dim B * dim A


def test_non_principal_rejected():
    from qpb.presets import hopf_preset
    h = hopf_preset("Z2", "function_algebra")
    # trivial coaction b -> b (x) 1 on a dim > 1 algebra
    cols = []
    for i in range(h.dim):
        col = {}
        for j, c in h.unit.items():
            col[i * h.dim + j] = c
        cols.append(col)
    F = LinearMap(h.space, h.coproduct.codomain, cols, h.field)
    with pytest.raises(NotPrincipal):
        build_bundle(h.algebra, h, F)


@pytest.mark.parametrize("group,kind", [
    ("Z2", "group_algebra"),
    ("S3", "group_algebra"),
    ("Z3", "function_algebra"),
    ("S3", "function_algebra"),
])
def test_translation_identities_point(group, kind):
    rep = translation_identities(make_point(group, kind))
    assert rep.ok, rep.to_text()
    ids = {r.identity_id for r in rep.records}
    assert "translation.point-oracle" in ids


def test_translation_identities_trivial_bundle():
    rep = translation_identities(make_trivial("Z2", 2))
    assert rep.ok, rep.to_text()
    ids = {r.identity_id for r in rep.records}
    assert "translation.point-oracle" not in ids
    assert "translation.centrality" in ids


def test_galois_tower_z2():
    b = make_point("Z2", "group_algebra")
    xn, tau_n, rep = galois_tower(b, 2)
    assert rep.ok, rep.to_text()
    # X_2 : B_3 <-> B (x) A (x) A, dim 8 both sides
    assert xn.domain.dim == 8 and xn.codomain.dim == 8


def test_galois_tower_base_case_and_budget():
    b = make_point("Z2", "group_algebra")
    x1, tau_1, rep = galois_tower(b, 1)
    assert rep.ok
    assert x1 is b.X
    with pytest.raises(BudgetExceeded):
        galois_tower(b, b.tower_budget + 1)


def test_tower_trivial_bundle():
    b = make_trivial("Z2", 2)
    xn, tau_n, rep = galois_tower(b, 2)
    assert rep.ok, rep.to_text()
