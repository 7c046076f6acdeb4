"""Splitting commutative semisimple algebras over Q(zeta_n) into primitive
idempotents, and enumerating their field-valued characters.

Minimal polynomials are computed by exact Krylov iteration; factoring over
the cyclotomic field is delegated to sympy's number-field machinery, and the
idempotents are recovered by polynomial CRT.  Pieces that are proper field
extensions admit no field-valued characters and stay unsplit.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import CycloField, Scalar
from .errors import InputError
from .linalg import Echelon, Vec, solve_columns, viadd

# -- dense univariate polynomials over Scalar (ascending coefficients) ---------


def p_trim(p):
    while p and p[-1].is_zero():
        p.pop()
    return p


def p_divmod(num, den):
    num = list(num)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    q = [den[0].field.zero] * max(0, len(num) - len(den) + 1)
    inv = den[-1].inverse()
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1] * inv
        if c:
            q[k] = c
            for i, d in enumerate(den):
                num[k + i] = num[k + i] - c * d
    return q, p_trim(num)


def p_mul(a, b, field):
    if not a or not b:
        return []
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = out[i + j] + x * y
    return p_trim(out)


def p_sub(a, b, field):
    n = max(len(a), len(b))
    a = a + [field.zero] * (n - len(a))
    b = b + [field.zero] * (n - len(b))
    return p_trim([x - y for x, y in zip(a, b)])


def p_monic(p):
    inv = p[-1].inverse()
    return [c * inv for c in p]


def p_gcd(a, b):
    a, b = list(a), list(b)
    while b:
        _, r = p_divmod(a, b)
        a, b = b, r
    return p_monic(a) if a else a


def p_eea(a, b, field):
    """(g, u, v) with u*a + v*b = g, g the monic gcd."""
    r0, r1 = list(a), list(b)
    s0, s1 = [field.one], []
    t0, t1 = [], [field.one]
    while r1:
        q, r = p_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, p_sub(s0, p_mul(q, s1, field), field)
        t0, t1 = t1, p_sub(t0, p_mul(q, t1, field), field)
    lead = r0[-1].inverse()
    return ([c * lead for c in r0], [c * lead for c in s0], [c * lead for c in t0])


def p_is_squarefree(p, field):
    dp = p_trim([p[i] * field.rational(i) for i in range(1, len(p))])
    g = p_gcd(p, dp)
    return len(g) == 1


# -- sympy factoring bridge ------------------------------------------------------

def factor_over_field(coeffs, field: CycloField):
    """Monic irreducible factors with multiplicity of a monic polynomial;
    coefficients ascend on both ends."""
    import sympy
    from sympy import QQ, Poly, symbols

    x = symbols("x")
    if field.degree == 1:
        p = Poly([c.rational_value() for c in reversed(coeffs)], x, domain=QQ)
        out = []
        for fac, m in p.factor_list()[1]:
            fc = [field.rational(Fraction(str(q))) for q in reversed(fac.all_coeffs())]
            out.append((p_monic(fc), m))
        return out
    zeta = sympy.exp(2 * sympy.I * sympy.pi / field.n)
    K = QQ.algebraic_field(zeta)

    def to_k(s: Scalar):
        expr = sympy.Integer(0)
        for k, c in enumerate(s.coeffs):
            if c:
                expr += sympy.Rational(c.numerator, c.denominator) * zeta ** k
        return K.from_sympy(sympy.expand(expr))

    def from_anp(a) -> Scalar:
        rep = list(a.rep) if hasattr(a, "rep") else [a]
        rep = [Fraction(str(q)) for q in rep]  # descending zeta powers
        rep.reverse()
        return field.scalar(rep)

    p = Poly([to_k(c) for c in reversed(coeffs)], x, domain=K)
    out = []
    for fac, m in p.factor_list()[1]:
        fc = [from_anp(a) for a in reversed(fac.rep.to_list())]
        out.append((p_monic(fc), m))
    return out


# -- commutative algebra splitting ------------------------------------------------

class CommAlgebra:
    """A commutative unital algebra given by a coordinate mult callback."""

    def __init__(self, field: CycloField, dim: int, mul, unit: Vec):
        self.field = field
        self.dim = dim
        self.mul = mul
        self.unit = dict(unit)

    def minpoly_rel(self, e: Vec, x: Vec):
        """Monic minimal polynomial of x acting on the unital piece eA (i.e.
        with local unit e), ascending coefficients."""
        ech = Echelon()
        powers = [dict(e)]
        ech.add(e)
        cur = dict(e)
        while True:
            cur = self.mul(cur, x)
            if ech.contains(cur):
                break
            ech.add(cur)
            powers.append(dict(cur))
        sol = solve_columns(powers, cur, self.field)
        assert sol is not None, "power fell outside its own Krylov span"
        coeffs = [-(sol.get(k, self.field.zero)) for k in range(len(powers))]
        coeffs.append(self.field.one)
        return coeffs

    def eval_poly_rel(self, e: Vec, p, x: Vec) -> Vec:
        """p(x) inside eA, with e as the local unit."""
        out: Vec = {}
        cur = dict(e)
        for k, c in enumerate(p):
            if k > 0:
                cur = self.mul(cur, x)
            viadd(out, c, cur)
        return out

    def local_dim(self, e: Vec) -> int:
        ech = Echelon()
        for i in range(self.dim):
            ech.add(self.mul(e, {i: self.field.one}))
        return ech.rank


def primitive_idempotents(alg: CommAlgebra):
    """Primitive idempotents as (idempotent Vec, local dimension), in a
    deterministic order.  Raises InputError on non-semisimple input."""
    field = alg.field
    candidates = [{i: field.one} for i in range(alg.dim)]
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            candidates.append({**{i: field.one}, j: field.one})

    def split_once(e: Vec):
        for cand in candidates:
            x = alg.mul(e, cand)
            minpoly = alg.minpoly_rel(e, x)
            if len(minpoly) - 1 < 2:
                continue
            if not p_is_squarefree(minpoly, field):
                raise InputError("algebra is not semisimple "
                                 "(non-squarefree minimal polynomial)")
            factors = factor_over_field(minpoly, field)
            if len(factors) < 2:
                continue
            parts = []
            for fac, m in factors:
                if m != 1:
                    raise InputError("algebra is not semisimple")
                cof, _ = p_divmod(minpoly, fac)
                # CRT projector: cof * (cof^{-1} mod fac), evaluated at x
                g, u, _ = p_eea(cof, fac, field)
                if len(g) != 1:
                    raise InputError("inseparable factor while splitting")
                inv0 = g[0].inverse()
                proj = p_mul(cof, [c * inv0 for c in u], field)
                parts.append(alg.eval_poly_rel(e, proj, x))
            return parts
        return None

    done = []
    queue = [dict(alg.unit)]
    while queue:
        e = queue.pop(0)
        d = alg.local_dim(e)
        parts = split_once(e) if d > 1 else None
        if parts is None:
            done.append((e, d))
        else:
            queue.extend(parts)
    done.sort(key=lambda pair: (min(pair[0]), _vec_key(pair[0])))
    for e, d in done:
        if alg.mul(e, e) != e:
            raise InputError("splitting produced a non-idempotent (non-semisimple input)")
    return done


def _vec_key(v: Vec):
    return tuple((k, v[k].literal()) for k in sorted(v))


def field_characters(alg: CommAlgebra):
    """All algebra characters into the base field, one per 1-dimensional
    piece; each is the list [chi(e_0), ..., chi(e_{dim-1})]."""
    field = alg.field
    out = []
    for e, d in primitive_idempotents(alg):
        if d != 1:
            continue
        lead = min(e)
        inv = e[lead].inverse()
        chi = []
        for i in range(alg.dim):
            v = alg.mul({i: field.one}, e)
            chi.append(v.get(lead, field.zero) * inv)
        out.append(chi)
    return out
