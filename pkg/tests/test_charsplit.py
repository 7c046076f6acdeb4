from qpb.charsplit import (
    CommAlgebra, factor_over_field, field_characters, p_divmod, p_gcd,
    primitive_idempotents,
)
from qpb.cyclotomic import CycloField
from qpb.linalg import Vec, viadd


def diag_algebra(field, n):
    """C^n with pointwise product."""
    def mul(u: Vec, v: Vec) -> Vec:
        out = {}
        for k, a in u.items():
            b = v.get(k)
            if b:
                out[k] = a * b
        return out
    unit = {i: field.one for i in range(n)}
    return CommAlgebra(field, n, mul, unit)


def group_algebra_z3(field):
    """C[Z3]: splits over Q(zeta_3) into three characters."""
    def mul(u, v):
        out = {}
        for i, a in u.items():
            for j, b in v.items():
                viadd(out, a * b, {(i + j) % 3: field.one})
        return out
    return CommAlgebra(field, 3, mul, {0: field.one})


def test_factoring_cyclotomic():
    F = CycloField(3)
    # x^3 - 1 = (x-1)(x-z)(x-z^2) over Q(zeta_3)
    coeffs = [-F.one, F.zero, F.zero, F.one]
    facs = factor_over_field(coeffs, F)
    assert len(facs) == 3
    roots = set()
    for fac, m in facs:
        assert m == 1 and len(fac) == 2
        roots.add((-fac[0]).literal())
    assert roots == {F.one.literal(), F.zeta().literal(), F.zeta(2).literal()}


def test_factoring_rational():
    F = CycloField(1)
    coeffs = [F.rational(-1), F.zero, F.one]  # x^2 - 1
    facs = factor_over_field(coeffs, F)
    assert len(facs) == 2


def test_poly_gcd():
    F = CycloField(1)
    one = F.one
    # gcd(x^2-1, x-1) = x-1
    g = p_gcd([-one, F.zero, one], [-one, one])
    assert g == [-one, one]


def test_diagonal_idempotents():
    F = CycloField(1)
    alg = diag_algebra(F, 4)
    idems = primitive_idempotents(alg)
    assert len(idems) == 4
    assert all(d == 1 for _, d in idems)
    chars = field_characters(alg)
    assert len(chars) == 4


def test_group_algebra_z3_splits_over_zeta3():
    alg = group_algebra_z3(CycloField(3))
    idems = primitive_idempotents(alg)
    assert len(idems) == 3
    chars = field_characters(alg)
    assert len(chars) == 3
    # each character sends the generator to a cube root of unity
    F = CycloField(3)
    vals = sorted(chi[1].literal() for chi in chars)
    assert sorted([F.one.literal(), F.zeta().literal(), F.zeta(2).literal()]) == vals


def test_group_algebra_z3_over_rationals_keeps_field_piece():
    alg = group_algebra_z3(CycloField(1))
    idems = primitive_idempotents(alg)
    dims = sorted(d for _, d in idems)
    assert dims == [1, 2]  # Q (+) Q(zeta_3)
    assert len(field_characters(alg)) == 1
