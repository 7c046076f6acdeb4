"""Preset Hopf algebras and bundles.

Point bundles take B = A with the coproduct as coaction (base = scalars);
trivial bundles take B = C(X) (x) A with F = id (x) phi (base = C(X) with
|X| points).  These cover the commutative/noncommutative and trivial-base /
nontrivial-base combinations used across the verification suites.
"""

from __future__ import annotations

from .cyclotomic import CycloField
from .errors import UnknownPreset
from .hopf import (
    HopfStarAlgebra, StarAlgebra, gen_from_group_table, group_conductor,
    named_group,
)
from .linalg import BasedSpace, LinearMap, Vec

GROUPS = ("Z2", "Z3", "S3", "trivial")
KINDS = ("function_algebra", "group_algebra")


def hopf_preset(group: str, kind: str, conductor: int | None = None) -> HopfStarAlgebra:
    t = named_group(group)
    n = conductor if conductor is not None else group_conductor(t)
    return gen_from_group_table(t, kind, CycloField(n))


def point_bundle_data(group: str, kind: str = "function_algebra",
                      conductor: int | None = None):
    """(total, group_hopf, coaction) for the point-base bundle B = A."""
    h = hopf_preset(group, kind, conductor)
    return h.algebra, h, h.coproduct


def trivial_bundle_data(group: str, base_points: int, kind: str = "function_algebra",
                        conductor: int | None = None):
    """(total, group_hopf, coaction) for B = C(X) (x) A, F = id (x) phi."""
    if base_points < 1:
        raise UnknownPreset(f"base_points must be >= 1, got {base_points}")
    h = hopf_preset(group, kind, conductor)
    field = h.field
    one = field.one
    da = h.dim
    nx = base_points
    labels = tuple(f"x{p}.{lab}" for p in range(nx) for lab in h.space.labels)
    space = BasedSpace(labels)

    def idx(p, a):
        return p * da + a

    mult = []
    for p in range(nx):
        for a in range(da):
            row = []
            for q in range(nx):
                for b_ in range(da):
                    if p != q:
                        row.append({})
                    else:
                        row.append({idx(p, k): c
                                    for k, c in h.algebra.mul_basis(a, b_).items()})
            mult.append(row)
    unit: Vec = {}
    for p in range(nx):
        for a, c in h.unit.items():
            unit[idx(p, a)] = c
    star_cols = []
    for p in range(nx):
        for a in range(da):
            star_cols.append({idx(p, k): c
                              for k, c in h.star_vec({a: one}).items()})
    star = LinearMap(space, space, star_cols, field, antilinear=True)
    total = StarAlgebra(f"C(X{nx})(x){h.algebra.name}", field, space, mult, unit, star)
    f_cols = []
    for p in range(nx):
        for a in range(da):
            col: Vec = {}
            for a1, a2, c in h.sweedler(a):
                col[idx(p, a1) * da + a2] = c
            f_cols.append(col)
    from .linalg import tensor_labels
    coaction = LinearMap(space, tensor_labels(space, h.space), f_cols, field)
    return total, h, coaction


def bundle_data(name: str, group: str, base_points: int = 1,
                kind: str = "function_algebra", conductor: int | None = None):
    if name == "point":
        return point_bundle_data(group, kind, conductor)
    if name == "trivial":
        return trivial_bundle_data(group, base_points, kind, conductor)
    raise UnknownPreset(f"unknown bundle preset {name!r}")


# -- example generation: presets as complete spec files ----------------------------

GEN_PRESETS = ("c-group", "group-algebra", "point-bundle", "trivial-bundle")


def _hopf_sections(h: HopfStarAlgebra) -> dict:
    dim = h.dim
    mult = []
    for i in range(dim):
        for j in range(dim):
            for k in sorted(h.algebra.mult[i][j]):
                mult.append([i, j, k, h.algebra.mult[i][j][k].literal()])
    cop = []
    for i in range(dim):
        for idx in sorted(h.coproduct.cols[i]):
            j, k = divmod(idx, dim)
            cop.append([i, j, k, h.coproduct.cols[i][idx].literal()])
    counit = []
    for i in range(dim):
        c = h.eps_basis(i)
        if c:
            counit.append([i, c.literal()])
    antipode = []
    for i in range(dim):
        for j in sorted(h.antipode.cols[i]):
            antipode.append([i, j, h.antipode.cols[i][j].literal()])
    star = []
    for i in range(dim):
        for j in sorted(h.algebra.star.cols[i]):
            star.append([i, j, h.algebra.star.cols[i][j].literal()])
    return {
        "basis": list(h.space.labels),
        "mult": mult,
        "coproduct": cop,
        "counit": counit,
        "antipode": antipode,
        "star": star,
    }


def generate_example(name: str, group: str = "Z2", base_points: int = 2,
                     kind: str = "function_algebra", fodc: str | None = None,
                     base_calculus: str | None = None,
                     conductor: int | None = None) -> dict:
    """A complete spec-file document (as a JSON-ready dict) for a preset."""
    if name not in GEN_PRESETS:
        raise UnknownPreset(f"unknown example preset {name!r}")
    if name == "c-group":
        kind = "function_algebra"
        bundle = {"preset": "point"}
    elif name == "group-algebra":
        kind = "group_algebra"
        bundle = {"preset": "point"}
    elif name == "point-bundle":
        bundle = {"preset": "point"}
    else:
        bundle = {"preset": "trivial", "base_points": base_points}
    h = hopf_preset(group, kind, conductor)
    doc = {
        "format": "qpb-spec/1",
        "conductor": h.field.n,
        "hopf": _hopf_sections(h),
        "bundle": bundle,
    }
    if h.corepresentations:
        doc["corepresentations"] = [
            {"name": c.name, "dim": c.dim,
             "functional": [s.literal() for s in c.functional]}
            for c in h.corepresentations
        ]
    if fodc:
        doc["fodc"] = {"preset": fodc}
    if base_calculus:
        doc["base_calculus"] = {"preset": base_calculus}
    return doc


def serialize_example(doc: dict) -> str:
    import json
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"
