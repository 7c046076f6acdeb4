"""Degree-truncated differential calculus on preset product bundles.

Omega(P) = Omega(M) (x)^ Gamma^ carries the graded product, star and
differential of a product bundle calculus; F^ = id (x) phi^ is its unique
graded-differential extension of the coaction.  On the balanced powers W_n =
Omega(P) (x)^_M ... the Galois map X^(phi (x) w) = phi F^(w) is verified to
be bijective in every total degree <= 2, the extended translation map tau^
is its inverse on Gamma^, and sigma^_M is assembled from F^ and tau^ with
the graded-twist signs of its defining formula.

L^ is the subspace of F^_2-invariants of W_2 with the counital differential
coalgebra structure (eps^_M, Delta^, phi^_M); everything is checked exactly
and degree-budgeted.
"""

from __future__ import annotations

from .bundle import Bundle, build_bundle
from .errors import DegreeBudget, NotProductBundle, ValidationFailed
from .fodc import Envelope2, Fodc, GammaEnvelope
from .hopf import StarAlgebra
from .linalg import (
    BasedSpace, Echelon, LinearMap, Vec, span_basis, spans_equal, viadd,
    vscale,
)
from .report import (
    CheckRecord, ValidationReport, failing, map_equality_record, passing, vacuous,
)
from .tensor import Factor, TProd, term_map

BUDGET = 2


class BaseCalculus:
    """A graded *-DGA over the base, truncated at degree 2.

    ``mult_table[i][j]`` is a Vec (or None above the budget), ``d_cols[i]``
    a Vec or None on the top degree, ``star_cols`` plain star values.
    """

    def __init__(self, field, labels, degrees, mult_table, unit, star_cols, d_cols,
                 name="Omega(M)"):
        self.field = field
        self.space = BasedSpace(tuple(labels))
        self.degrees = tuple(degrees)
        self.mult_table = mult_table
        self.unit = dict(unit)
        self.star_cols = star_cols
        self.d_cols = d_cols
        self.name = name
        self.dim = self.space.dim
        self._check()

    def degree(self, i):
        return self.degrees[i]

    def mul_basis(self, i, j) -> Vec:
        out = self.mult_table[i][j]
        if out is None:
            raise DegreeBudget(f"product exceeds the degree budget in {self.name}")
        return out

    def mul(self, u: Vec, v: Vec) -> Vec:
        out: Vec = {}
        for i, a in u.items():
            for j, b in v.items():
                viadd(out, a * b, self.mul_basis(i, j))
        return out

    def d_apply(self, v: Vec) -> Vec:
        out: Vec = {}
        for i, c in v.items():
            col = self.d_cols[i]
            if col is None:
                raise DegreeBudget(f"d beyond the degree budget in {self.name}")
            viadd(out, c, col)
        return out

    def star_apply(self, v: Vec) -> Vec:
        out: Vec = {}
        for i, c in v.items():
            viadd(out, c.conj(), self.star_cols[i])
        return out

    def _check(self):
        field = self.field
        one = field.one
        deg = self.degrees
        for i in range(self.dim):
            for j in range(self.dim):
                if deg[i] + deg[j] > BUDGET:
                    continue
                ij = self.mul_basis(i, j)
                for k in range(self.dim):
                    if deg[i] + deg[j] + deg[k] > BUDGET:
                        continue
                    if self.mul(ij, {k: one}) != self.mul({i: one}, self.mul_basis(j, k)):
                        raise ValidationFailed(f"{self.name}: product not associative")
        for i in range(self.dim):
            if self.mul(self.unit, {i: one}) != {i: one} or \
                    self.mul({i: one}, self.unit) != {i: one}:
                raise ValidationFailed(f"{self.name}: unit fails")
        for i in range(self.dim):
            st = self.star_apply(self.star_cols[i])
            # star_cols hold plain values; star is antilinear so conjugate once
            if st != {i: one}:
                raise ValidationFailed(f"{self.name}: star not involutive")
        for i in range(self.dim):
            for j in range(self.dim):
                if deg[i] + deg[j] > BUDGET:
                    continue
                lhs = self.star_apply(self.mul_basis(i, j))
                sign = -one if (deg[i] * deg[j]) % 2 else one
                rhs = vscale(sign, self.mul(self.star_apply({j: one}),
                                            self.star_apply({i: one})))
                if lhs != rhs:
                    raise ValidationFailed(f"{self.name}: star not graded-antimultiplicative")
        for i in range(self.dim):
            if deg[i] > 0 or self.d_cols[i] is None:
                continue
            dd = self.d_apply(self.d_cols[i])
            if dd:
                raise ValidationFailed(f"{self.name}: d^2 != 0")
        for i in range(self.dim):
            for j in range(self.dim):
                if deg[i] + deg[j] > BUDGET - 1:
                    continue
                lhs = self.d_apply(self.mul_basis(i, j))
                sign = -one if deg[i] % 2 else one
                rhs = self.mul(self.d_apply({i: one}), {j: one})
                for k, c in self.mul({i: one}, self.d_apply({j: one})).items():
                    viadd(rhs, sign * c, {k: one})
                if lhs != rhs:
                    raise ValidationFailed(f"{self.name}: Leibniz fails")
        for i in range(self.dim):
            if deg[i] > BUDGET - 1:
                continue
            if self.d_apply(self.star_apply({i: one})) != \
                    self.star_apply(self.d_apply({i: one})):
                raise ValidationFailed(f"{self.name}: d not hermitian")


def trivial_base_calculus(base: StarAlgebra) -> BaseCalculus:
    """Omega(M) = V concentrated in degree 0, d = 0."""
    field = base.field
    n = base.dim
    mult = [[dict(base.mul_basis(i, j)) for j in range(n)] for i in range(n)]
    star_cols = [dict(base.star.cols[i]) for i in range(n)]
    d_cols = [{} for _ in range(n)]
    return BaseCalculus(field, base.space.labels, [0] * n, mult, base.unit,
                        star_cols, d_cols, name="Omega(M)[trivial]")


def universal_base_calculus(n_points: int, field) -> BaseCalculus:
    """The universal path calculus on an n-point set, truncated at degree 2:
    degree-k basis = characteristic functions of (k+1)-step paths with no
    repeated consecutive point."""
    paths = [[(x,) for x in range(n_points)]]
    for k in (1, 2):
        prev = paths[-1]
        cur = []
        for p in prev:
            for y in range(n_points):
                if y != p[-1]:
                    cur.append(p + (y,))
        paths.append(cur)
    allp = paths[0] + paths[1] + paths[2]
    index = {p: i for i, p in enumerate(allp)}
    degrees = [len(p) - 1 for p in allp]
    labels = ["|".join(f"x{i}" for i in p) for p in allp]
    one = field.one
    dim = len(allp)

    def concat(p, q):
        if p[-1] != q[0]:
            return None
        return p + q[1:]

    mult = []
    for p in allp:
        row = []
        for q in allp:
            if len(p) - 1 + len(q) - 1 > BUDGET:
                row.append(None)
                continue
            r = concat(p, q)
            row.append({index[r]: one} if r is not None else {})
        mult.append(row)
    unit = {index[(x,)]: one for x in range(n_points)}
    star_cols = []
    for p in allp:
        k = len(p) - 1
        sign = -one if (k * (k + 1) // 2) % 2 else one
        star_cols.append({index[tuple(reversed(p))]: sign})
    d_cols = []
    for p in allp:
        k = len(p) - 1
        if k >= BUDGET:
            d_cols.append(None)
            continue
        acc: Vec = {}
        for pos in range(k + 2):
            sign = -one if pos % 2 else one
            for y in range(n_points):
                q = p[:pos] + (y,) + p[pos:]
                if all(q[i] != q[i + 1] for i in range(len(q) - 1)):
                    viadd(acc, sign, {index[q]: one})
        d_cols.append(acc)
    return BaseCalculus(field, labels, degrees, mult, unit, star_cols, d_cols,
                        name="Omega(M)[universal]")


class OmegaP:
    """Omega(M) (x)^ Gamma^ with the product-bundle structure, degree <= 2."""

    def __init__(self, base: BaseCalculus, gamma: GammaEnvelope):
        self.base = base
        self.gamma = gamma
        field = gamma.field
        self.field = field
        one = field.one
        # free graded pair space for indexing
        m_factor = Factor(base.space, base.degrees)
        self.tp = TProd(field, (m_factor, gamma.factor), budget=BUDGET,
                        name="Omega(P)")
        self.space = self.tp.space  # no balancing: flat = space
        self.dim = self.space.dim
        self.degrees = tuple(self.tp.degree(t) for t in self.tp.tuples)
        self._mult_cache: dict = {}

        self.unit = {}
        for m, cm in base.unit.items():
            for a, ca in gamma.unit.items():
                self.unit[self.idx(m, a)] = cm * ca

        # the product-calculus star is componentwise (no Koszul sign): this is
        # the convention under which d and the extended coproduct are hermitian
        star_cols = []
        for i in range(self.dim):
            m, g = self.tp.tuples[i]
            acc: Vec = {}
            for m2, cm in base.star_cols[m].items():
                for g2, cg in gamma.star.cols[g].items():
                    viadd(acc, cm * cg, {self.idx(m2, g2): one})
            star_cols.append(acc)
        self.star = LinearMap(self.space, self.space, star_cols, field,
                              antilinear=True)

        d_cols = []
        for i in range(self.dim):
            m, g = self.tp.tuples[i]
            if self.degrees[i] >= BUDGET:
                d_cols.append(None)
                continue
            acc: Vec = {}
            if base.d_cols[m] is not None:
                for m2, cm in base.d_cols[m].items():
                    viadd(acc, cm, {self.idx(m2, g): one})
            sign = -one if base.degree(m) % 2 else one
            if gamma.degree(g) < BUDGET:
                for g2, cg in gamma.d_cols[g].items():
                    viadd(acc, sign * cg, {self.idx(m, g2): one})
            d_cols.append(acc)
        self.d_cols = d_cols

        # F^ = id (x) phi^ into Omega(P) (x) Gamma^
        self.og = TProd(field, (Factor(self.space, self.degrees), gamma.factor),
                        budget=BUDGET, name="Omega(P)(x)Gamma^")
        f_cols = []
        for i in range(self.dim):
            m, g = self.tp.tuples[i]
            acc = {}
            for fj, c in gamma.square.lift(gamma.phi_hat.cols[g]).items():
                g1, g2 = gamma.square.tuples[fj]
                acc[self.og.flat_index((self.idx(m, g1), g2))] = c
            f_cols.append(self.og.project(acc))
        self.f_hat = LinearMap(self.space, self.og.space, f_cols, field)
        self.f_legs = []
        for i in range(self.dim):
            legs = []
            for fj, c in self.og.lift(self.f_hat.cols[i]).items():
                w, th = self.og.tuples[fj]
                legs.append((w, th, c))
            self.f_legs.append(legs)

        # the Omega(M)-bimodule factor for the balanced powers
        lact, ract = [], []
        for f in range(base.dim):
            lcols, rcols = [], []
            for i in range(self.dim):
                m, g = self.tp.tuples[i]
                lacc: Vec = {}
                if base.degree(f) + self.degrees[i] <= BUDGET:
                    for m2, cm in base.mul_basis(f, m).items():
                        lacc[self.idx(m2, g)] = cm
                # right: (m (x) g)(f (x) 1) = (-1)^{deg g * deg f} m f (x) g
                racc: Vec = {}
                if base.degree(f) + self.degrees[i] <= BUDGET:
                    sign = -one if (gamma.degree(g) * base.degree(f)) % 2 else one
                    for m2, cm in base.mul_basis(m, f).items():
                        racc[self.idx(m2, g)] = sign * cm
                lcols.append(lacc)
                rcols.append(racc)
            lact.append(LinearMap(self.space, self.space, lcols, field))
            ract.append(LinearMap(self.space, self.space, rcols, field))
        self.factor = Factor(self.space, self.degrees, lact, ract)
        self.m_embed_cols = []
        for f in range(base.dim):
            acc = {}
            for a, ca in gamma.unit.items():
                if base.degree(f) <= BUDGET:
                    acc[self.idx(f, a)] = ca
            self.m_embed_cols.append(acc)

    def idx(self, m: int, g: int) -> int:
        return self.tp.flat_index((m, g))

    def degree(self, i: int) -> int:
        return self.degrees[i]

    def mul_basis(self, i: int, j: int) -> Vec:
        key = (i, j)
        out = self._mult_cache.get(key)
        if out is None:
            m1, g1 = self.tp.tuples[i]
            m2, g2 = self.tp.tuples[j]
            if self.degrees[i] + self.degrees[j] > BUDGET:
                raise DegreeBudget("product exceeds the budget in Omega(P)")
            sign = (-self.field.one
                    if (self.gamma.degree(g1) * self.base.degree(m2)) % 2
                    else self.field.one)
            out = {}
            for m, cm in self.base.mul_basis(m1, m2).items():
                for g, cg in self.gamma.mul_basis(g1, g2).items():
                    out[self.idx(m, g)] = sign * cm * cg
            self._mult_cache[key] = out
        return out

    def mul(self, u: Vec, v: Vec) -> Vec:
        out: Vec = {}
        for i, a in u.items():
            for j, b in v.items():
                viadd(out, a * b, self.mul_basis(i, j))
        return out

    def d_apply(self, v: Vec) -> Vec:
        out: Vec = {}
        for i, c in v.items():
            col = self.d_cols[i]
            if col is None:
                raise DegreeBudget("d beyond the budget in Omega(P)")
            viadd(out, c, col)
        return out

    def star_apply(self, v: Vec) -> Vec:
        return self.star.apply(v)

    def component(self, degree: int):
        return [i for i in range(self.dim) if self.degrees[i] == degree]


class TotalCalculus:
    """Bundle + FODC + base calculus, with W_2, W_3, X^, tau^, sigma^_M, L^."""

    def __init__(self, fodc: Fodc, env2: Envelope2, gamma: GammaEnvelope,
                 base_calc: BaseCalculus, omega: OmegaP):
        self.fodc = fodc
        self.env2 = env2
        self.gamma = gamma
        self.base_calc = base_calc
        self.omega = omega
        field = omega.field
        self.field = field
        one = field.one
        self.group = gamma.group

        # the degree-0 bundle extracted from Omega(P)
        deg0 = omega.component(0)
        self._deg0 = deg0
        pos = {i: k for k, i in enumerate(deg0)}
        labels = tuple(omega.space.labels[i] for i in deg0)
        b_space = BasedSpace(labels)

        def to_b(v: Vec) -> Vec:
            out = {}
            for i, c in v.items():
                k = pos.get(i)
                if k is None:
                    raise ValidationFailed("degree-0 data leaks into higher degree")
                out[k] = c
            return out

        mult = [[to_b(omega.mul_basis(i, j)) for j in deg0] for i in deg0]
        unit = to_b(omega.unit)
        star_cols = [to_b(omega.star.cols[i]) for i in deg0]
        star = LinearMap(b_space, b_space, star_cols, field, antilinear=True)
        total = StarAlgebra("Omega^0(P)", field, b_space, mult, unit, star)
        g = self.group
        da = g.dim
        from .linalg import tensor_labels
        f_cols = []
        for i in deg0:
            col: Vec = {}
            for w, th, c in omega.f_legs[i]:
                dth, a, _ = gamma.split(th)
                if dth != 0:
                    raise ValidationFailed("coaction of a function has a form component")
                col[pos[w] * da + a] = c
            f_cols.append(col)
        coaction = LinearMap(b_space, tensor_labels(b_space, g.space), f_cols, field)
        self.bundle = build_bundle(total, g, coaction)
        # Omega^0(M) must be exactly the computed base V
        emb0 = [to_b(col) for col in
                [omega.m_embed_cols[f] for f in range(base_calc.dim)
                 if base_calc.degree(f) == 0]]
        if not spans_equal(emb0, self.bundle.base_vectors):
            raise NotProductBundle("base calculus degree 0 differs from the computed base")

        # balanced powers
        self.w2 = TProd(field, (omega.factor, omega.factor),
                        coeff_degrees=base_calc.degrees, budget=BUDGET, name="W_2")
        self.w3 = TProd(field, (omega.factor,) * 3,
                        coeff_degrees=base_calc.degrees, budget=BUDGET, name="W_3")

        # X^ : W_2 -> Omega(P) (x) Gamma^
        og = omega.og

        def x_terms(t):
            i, j = t
            for w, th, c in omega.f_legs[j]:
                for u, cu in omega.mul_basis(i, w).items():
                    yield (u, th), c * cu

        self.x_hat = term_map(self.w2, og, x_terms)
        # bijectivity in each total degree
        w2deg = self.w2.degrees()
        ogdeg = [og.degree(og.tuples[og.quotient.keep[b]]) for b in range(og.dim)]
        self.x_by_degree_ok = {}
        for k in range(BUDGET + 1):
            src = [i for i in range(self.w2.dim) if w2deg[i] == k]
            dst = [i for i in range(og.dim) if ogdeg[i] == k]
            ech = Echelon()
            rank = 0
            for i in src:
                if ech.add(self.x_hat.cols[i]):
                    rank += 1
            self.x_by_degree_ok[k] = (len(src) == len(dst) == rank)
        if not all(self.x_by_degree_ok.values()):
            raise NotProductBundle(
                f"X^ fails degreewise bijectivity: {self.x_by_degree_ok}")
        self.x_hat_inv = self.x_hat.inverse()

        # tau^ on Gamma^ (degree <= 2)
        tau_cols = []
        for gi in range(gamma.dim):
            acc: Vec = {}
            for i, c in omega.unit.items():
                viadd(acc, c, {og.flat_index((i, gi)): one})
            tau_cols.append(self.x_hat_inv.apply(og.project(acc)))
        self.tau_hat = LinearMap(gamma.space, self.w2.space, tau_cols, field)
        self.tau_legs = []
        for gi in range(gamma.dim):
            legs = []
            for fi, c in self.w2.lift(tau_cols[gi]).items():
                p, q = self.w2.tuples[fi]
                legs.append((p, q, c))
            self.tau_legs.append(legs)

        # sigma^_M and its formula inverse
        def sigma_terms(t):
            i, j = t
            dj = omega.degree(j)
            for w, th, c in omega.f_legs[i]:
                sign = -one if (gamma.degree(th) * dj) % 2 else one
                for p, q, ct in self.tau_legs[th]:
                    c0 = c * ct * sign
                    for u, cu in omega.mul_basis(w, j).items():
                        for v, cv in omega.mul_basis(u, p).items():
                            yield (v, q), c0 * cu * cv

        self.sigma_fwd = term_map(self.w2, self.w2, sigma_terms)

        kinv = gamma.kappa_hat_inv

        def sigma_inv_terms(t):
            i, j = t
            di = omega.degree(i)
            for w, th, c in omega.f_legs[j]:
                sign = -one if (gamma.degree(th) * (di + omega.degree(w))) % 2 else one
                for th2, ck in kinv.cols[th].items():
                    for p, q, ct in self.tau_legs[th2]:
                        c0 = c * ck * ct * sign
                        for u, cu in omega.mul_basis(q, i).items():
                            for v, cv in omega.mul_basis(u, w).items():
                                yield (p, v), c0 * cu * cv

        self.sigma_inv = term_map(self.w2, self.w2, sigma_inv_terms)

        # graded operations on W_2
        def star2_terms(t):
            i, j = t
            sign = -one if (omega.degree(i) * omega.degree(j)) % 2 else one
            for j2, cj in omega.star.cols[j].items():
                for i2, ci in omega.star.cols[i].items():
                    yield (j2, i2), sign * cj * ci

        self.w2_star = term_map(self.w2, self.w2, star2_terms, antilinear=True)

        d_cols = []
        for b in range(self.w2.dim):
            if w2deg[b] >= BUDGET:
                d_cols.append(None)
                continue
            acc: Vec = {}
            for fi, c in self.w2.lift({b: one}).items():
                i, j = self.w2.tuples[fi]
                if omega.d_cols[i] is not None:
                    for i2, ci in omega.d_cols[i].items():
                        viadd(acc, c * ci, {self.w2.flat_index((i2, j)): one})
                sign = -one if omega.degree(i) % 2 else one
                if omega.d_cols[j] is not None:
                    for j2, cj in omega.d_cols[j].items():
                        viadd(acc, c * cj * sign,
                              {self.w2.flat_index((i, j2)): one})
            d_cols.append(self.w2.project(acc))
        self.w2_d_cols = d_cols
        self.w2_degrees = w2deg

        def mu_terms(t):
            i, j = t
            for k, c in omega.mul_basis(i, j).items():
                yield (k,), c

        self.w1 = TProd(field, (omega.factor,), budget=BUDGET, name="W_1")
        self.w2_mu = term_map(self.w2, self.w1, mu_terms)

        # F^_2 on W_2 (into W_2 (x) Gamma^) and the invariants L^
        self.w2g = TProd(field, (omega.factor, omega.factor, gamma.factor),
                         coeff_degrees=base_calc.degrees, budget=BUDGET,
                         name="W_2(x)Gamma^")

        def f2_terms(t):
            i, j = t
            for w1, th1, c1 in omega.f_legs[i]:
                for w2_, th2, c2 in omega.f_legs[j]:
                    sign = (-one if (gamma.degree(th1) * omega.degree(w2_)) % 2
                            else one)
                    c0 = c1 * c2 * sign
                    for th, cth in gamma.mul_basis(th1, th2).items():
                        yield (w1, w2_, th), c0 * cth

        self.f2_hat = term_map(self.w2, self.w2g, f2_terms)
        iota_cols = []
        for b in range(self.w2.dim):
            acc: Vec = {}
            for fi, c in self.w2.lift({b: one}).items():
                i, j = self.w2.tuples[fi]
                for a, ca in gamma.unit.items():
                    viadd(acc, c * ca, {self.w2g.flat_index((i, j, a)): one})
            iota_cols.append(self.w2g.project(acc))
        diff_cols = []
        for b in range(self.w2.dim):
            col = dict(self.f2_hat.cols[b])
            for k, c in iota_cols[b].items():
                s = col.get(k)
                s = -c if s is None else s - c
                if s:
                    col[k] = s
                elif k in col:
                    del col[k]
            diff_cols.append(col)
        self.lhat_basis = span_basis(
            LinearMap(self.w2.space, self.w2g.space, diff_cols, field).nullspace())
        self.lhat_space = BasedSpace(tuple(f"Lh{i}" for i in range(len(self.lhat_basis))))
        self.lhat_incl = LinearMap(self.lhat_space, self.w2.space, self.lhat_basis, field)
        self.lhat_degrees = []
        for lb in self.lhat_basis:
            degs = {w2deg[i] for i in lb}
            if len(degs) != 1:
                raise ValidationFailed("L^ basis vector is not homogeneous")
            self.lhat_degrees.append(degs.pop())

        # L^ as an Omega(M)-bimodule factor (actions beyond the degree budget
        # are stored empty; balanced relations never consult them)
        lact, ract = [], []
        for f in range(base_calc.dim):
            lf = omega.factor.lact[f]
            rf = omega.factor.ract[f]
            lcols, rcols = [], []
            for li, lb in enumerate(self.lhat_basis):
                if self.lhat_degrees[li] + base_calc.degree(f) > BUDGET:
                    lcols.append({})
                    rcols.append({})
                    continue
                lv = self._act_w2(lf, lb)
                rv = self._act_w2(rf, lb, right=True)
                lcols.append(self._into_lhat(lv, "f.L^"))
                rcols.append(self._into_lhat(rv, "L^.f"))
            lact.append(LinearMap(self.lhat_space, self.lhat_space, lcols, field))
            ract.append(LinearMap(self.lhat_space, self.lhat_space, rcols, field))
        self.lhat_factor = Factor(self.lhat_space, tuple(self.lhat_degrees),
                                  lact, ract)
        self.lhat_lact, self.lhat_ract = lact, ract

        # Delta^ = (id (x) tau^) F^ : Omega(P) -> W_3, restricted to L^ (x) Omega(P)
        w3 = self.w3
        delta_cols = []
        for i in range(omega.dim):
            acc: Vec = {}
            for w, th, c in omega.f_legs[i]:
                for p, q, ct in self.tau_legs[th]:
                    viadd(acc, c * ct, {w3.flat_index((w, p, q)): one})
            delta_cols.append(w3.project(acc))
        self.delta_hat_w3 = LinearMap(omega.space, w3.space, delta_cols, field)

        self.t_lo = TProd(field, (self.lhat_factor, omega.factor),
                          coeff_degrees=base_calc.degrees, budget=BUDGET,
                          name="L^(x)Omega")
        self.t_ll = TProd(field, (self.lhat_factor, self.lhat_factor),
                          coeff_degrees=base_calc.degrees, budget=BUDGET,
                          name="L^(x)L^")
        self.t_llo = TProd(field, (self.lhat_factor, self.lhat_factor, omega.factor),
                           coeff_degrees=base_calc.degrees, budget=BUDGET,
                           name="L^(x)L^(x)Omega")
        self.t_lll = TProd(field, (self.lhat_factor,) * 3,
                           coeff_degrees=base_calc.degrees, budget=BUDGET,
                           name="L^(x)3")
        self.t_loo = TProd(field, (self.lhat_factor, omega.factor, omega.factor),
                           coeff_degrees=base_calc.degrees, budget=BUDGET,
                           name="L^(x)Omega(x)Omega")

        def j_lo_terms(t):
            l, j = t
            for fi, c in self.w2.lift(self.lhat_basis[l]).items():
                x, y = self.w2.tuples[fi]
                yield (x, y, j), c

        self.j_lo = term_map(self.t_lo, w3, j_lo_terms)
        if self.j_lo.rank() != self.t_lo.dim:
            raise ValidationFailed("L^ (x) Omega does not embed into W_3")
        dh_cols = []
        for i in range(omega.dim):
            sol = self.j_lo.solve(delta_cols[i])
            if sol is None:
                raise ValidationFailed("Delta^ does not land in L^ (x) Omega(P)")
            dh_cols.append(sol)
        self.delta_hat = LinearMap(omega.space, self.t_lo.space, dh_cols, field)

        def j_ll_terms(t):
            l1, l2 = t
            for fi, c in self.w2.lift(self.lhat_basis[l2]).items():
                x, y = self.w2.tuples[fi]
                yield (l1, x, y), c

        self.j_ll = term_map(self.t_ll, self.t_loo, j_ll_terms)
        phi_cols = []
        for li, lb in enumerate(self.lhat_basis):
            acc = {}
            for fi, c in self.w2.lift(lb).items():
                i, j = self.w2.tuples[fi]
                for fj, cd in self.t_lo.lift(dh_cols[i]).items():
                    l1, x = self.t_lo.tuples[fj]
                    viadd(acc, c * cd, {self.t_loo.flat_index((l1, x, j)): one})
            sol = self.j_ll.solve(self.t_loo.project(acc))
            if sol is None:
                raise ValidationFailed("phi^_M does not land in L^ (x) L^")
            phi_cols.append(sol)
        self.phi_hat_m = LinearMap(self.lhat_space, self.t_ll.space, phi_cols, field)

        # eps^_M : L^ -> Omega(M) (embedded basis coordinates)
        m_embed = LinearMap(base_calc.space, omega.space, omega.m_embed_cols, field)
        eps_cols = []
        for lb in self.lhat_basis:
            v = self.w2_mu.apply(lb)
            acc: Vec = {}
            for fi, c in self.w1.lift(v).items():
                acc[self.w1.tuples[fi][0]] = c
            sol = m_embed.solve(acc)
            if sol is None:
                raise ValidationFailed("mu(L^) leaves Omega(M)")
            eps_cols.append(sol)
        self.eps_hat_m = LinearMap(self.lhat_space, base_calc.space, eps_cols, field)
        self.m_embed = m_embed

    # -- helpers -----------------------------------------------------------

    def _act_w2(self, m: LinearMap, v: Vec, right: bool = False) -> Vec:
        """Apply a slot map on W_2: left actions act on slot 0, right on slot 1."""
        w2 = self.w2
        out: Vec = {}
        one = self.field.one
        for fi, c in w2.lift(v).items():
            i, j = w2.tuples[fi]
            if right:
                for j2, cj in m.cols[j].items():
                    viadd(out, c * cj, {w2.flat_index((i, j2)): one})
            else:
                for i2, ci in m.cols[i].items():
                    viadd(out, c * ci, {w2.flat_index((i2, j)): one})
        return w2.project(out)

    def _into_lhat(self, v: Vec, what: str) -> Vec:
        sol = self.lhat_incl.solve(v)
        if sol is None:
            raise ValidationFailed(f"{what} leaves L^")
        return sol

    def w2_d(self, v: Vec) -> Vec:
        out: Vec = {}
        for i, c in v.items():
            col = self.w2_d_cols[i]
            if col is None:
                raise DegreeBudget("d beyond the budget on W_2")
            viadd(out, c, col)
        return out

    def w2_basis_deg(self, b: int) -> int:
        return self.w2_degrees[b]

    def tau_of(self, gamma_vec: Vec) -> Vec:
        return self.tau_hat.apply(gamma_vec)

    def hor_basis(self):
        """Horizontal forms: kernel of the strictly-positive second degree
        part of F^."""
        omega, gamma = self.omega, self.gamma
        og = omega.og
        field = self.field
        cols = []
        for i in range(omega.dim):
            col: Vec = {}
            for w, th, c in omega.f_legs[i]:
                if gamma.degree(th) > 0:
                    col[og.flat_index((w, th))] = c
            cols.append(col)
        return span_basis(LinearMap(omega.space, og.space, cols, field).nullspace())

    def omega_m_fixed(self):
        """F^-fixed subspace of Omega(P) (the embedded Omega(M))."""
        omega, gamma = self.omega, self.gamma
        og = omega.og
        field = self.field
        one = field.one
        cols = []
        for i in range(omega.dim):
            col = dict(self.omega.f_hat.cols[i])
            iota: Vec = {}
            for a, ca in gamma.unit.items():
                viadd(iota, ca, {og.flat_index((i, a)): one})
            for k, c in og.project(iota).items():
                s = col.get(k)
                s = -c if s is None else s - c
                if s:
                    col[k] = s
                elif k in col:
                    del col[k]
            cols.append(col)
        return span_basis(LinearMap(omega.space, og.space, cols, field).nullspace())

    def filtration_basis(self, k: int):
        """Omega_k(P) = F^-preimage of Omega(P) (x) Gamma^{<= k}."""
        omega, gamma = self.omega, self.gamma
        og = omega.og
        field = self.field
        cols = []
        for i in range(omega.dim):
            col: Vec = {}
            for w, th, c in omega.f_legs[i]:
                if gamma.degree(th) > k:
                    col[og.flat_index((w, th))] = c
            cols.append(col)
        return span_basis(LinearMap(omega.space, og.space, cols, field).nullspace())

    def f_pos_part(self, i: int):
        return [(w, th, c) for (w, th, c) in self.omega.f_legs[i]
                if self.gamma.degree(th) == 0]

    # -- transported products ----------------------------------------------

    def x2_apply(self, v: Vec) -> Vec:
        """X^_2 : W_3 -> Omega(P) (x) Gamma^ (x) Gamma^."""
        omega, gamma = self.omega, self.gamma
        field = self.field
        one = field.one
        ogg = self.ogg_space()
        og = omega.og
        out: Vec = {}
        for fi, c in self.w3.lift(v).items():
            x, y, z = self.w3.tuples[fi]
            inner = self.x_hat.apply(self.w2.project_tuple((y, z)))
            for fj, c2 in og.lift(inner).items():
                u, th2 = og.tuples[fj]
                pairv = self.x_hat.apply(self.w2.project_tuple((x, u)))
                for fk, c3 in og.lift(pairv).items():
                    p, th1 = og.tuples[fk]
                    viadd(out, c * c2 * c3,
                          {ogg.flat_index((p, th1, th2)): one})
        return ogg.project(out)

    def ogg_space(self) -> TProd:
        if not hasattr(self, "_ogg"):
            self._ogg = TProd(self.field,
                              (Factor(self.omega.space, self.omega.degrees),
                               self.gamma.factor, self.gamma.factor),
                              budget=BUDGET, name="Omega(x)Gamma^(x)Gamma^")
        return self._ogg

    def x2_inverse(self) -> LinearMap:
        if not hasattr(self, "_x2inv"):
            ogg = self.ogg_space()
            cols = [self.x2_apply({b: self.field.one}) for b in range(self.w3.dim)]
            x2 = LinearMap(self.w3.space, ogg.space, cols, self.field)
            if not x2.is_bijective():
                raise ValidationFailed("X^_2 is not bijective")
            self._x2 = x2
            self._x2inv = x2.inverse()
        return self._x2inv

    def w2_mult(self, u: Vec, v: Vec) -> Vec:
        """Braided product on W_2 transported along X^."""
        og = self.omega.og
        omega, gamma = self.omega, self.gamma
        one = self.field.one
        xu = self.x_hat.apply(u)
        xv = self.x_hat.apply(v)
        out: Vec = {}
        for fi, c1 in og.lift(xu).items():
            p, g1 = og.tuples[fi]
            for fj, c2 in og.lift(xv).items():
                q, g2 = og.tuples[fj]
                sign = -one if (gamma.degree(g1) * omega.degree(q)) % 2 else one
                c0 = c1 * c2 * sign
                for m, cm in omega.mul_basis(p, q).items():
                    for gg, cg in gamma.mul_basis(g1, g2).items():
                        viadd(out, c0 * cm * cg, {og.flat_index((m, gg)): one})
        return self.x_hat_inv.apply(og.project(out))

    def w3_mult(self, u: Vec, v: Vec) -> Vec:
        """Braided product on W_3 transported along X^_2."""
        ogg = self.ogg_space()
        omega, gamma = self.omega, self.gamma
        one = self.field.one
        x2inv = self.x2_inverse()
        xu = self._x2.apply(u)
        xv = self._x2.apply(v)
        out: Vec = {}
        for fi, c1 in ogg.lift(xu).items():
            p, g1, h1 = ogg.tuples[fi]
            d_g1, d_h1 = gamma.degree(g1), gamma.degree(h1)
            for fj, c2 in ogg.lift(xv).items():
                q, g2, h2 = ogg.tuples[fj]
                sgn = ((d_g1 + d_h1) * omega.degree(q) + d_h1 * gamma.degree(g2)) % 2
                c0 = c1 * c2 * (-one if sgn else one)
                for m, cm in omega.mul_basis(p, q).items():
                    for gg, cg in gamma.mul_basis(g1, g2).items():
                        for hh, ch in gamma.mul_basis(h1, h2).items():
                            viadd(out, c0 * cm * cg * ch,
                                  {ogg.flat_index((m, gg, hh)): one})
        return x2inv.apply(ogg.project(out))

    def embed_w3(self, x: Vec, y: Vec, z: Vec) -> Vec:
        """x (x) y (x) z in W_3 from three Omega(P) vectors."""
        w3 = self.w3
        one = self.field.one
        out: Vec = {}
        for i, ci in x.items():
            for j, cj in y.items():
                for k, ck in z.items():
                    viadd(out, ci * cj * ck, {w3.flat_index((i, j, k)): one})
        return w3.project(out)

    def embed_w2(self, x: Vec, y: Vec) -> Vec:
        w2 = self.w2
        one = self.field.one
        out: Vec = {}
        for i, ci in x.items():
            for j, cj in y.items():
                viadd(out, ci * cj, {w2.flat_index((i, j)): one})
        return w2.project(out)

    def sigma_at(self, p: int, inverse: bool = False) -> LinearMap:
        from .tensor import block_terms
        m = self.sigma_inv if inverse else self.sigma_fwd

        def terms(t):
            for pair, c in block_terms(self.w2, (t[p], t[p + 1]), m):
                yield t[:p] + pair + t[p + 2:], c

        return term_map(self.w3, self.w3, terms)

    def mu_at(self, p: int) -> LinearMap:
        omega = self.omega

        def terms(t):
            for k, c in omega.mul_basis(t[p], t[p + 1]).items():
                yield t[:p] + (k,) + t[p + 2:], c

        return term_map(self.w3, self.w2, terms)


def build_total_calculus(group_hopf, ideal_basis, base_calc: BaseCalculus) -> TotalCalculus:
    """Assemble the full tower from a Hopf algebra, an FODC ideal, and a base
    calculus preset."""
    from .fodc import build_envelope2, build_fodc
    fodc = build_fodc(group_hopf, ideal_basis)
    env2 = build_envelope2(fodc)
    gamma = GammaEnvelope(env2)
    omega = OmegaP(base_calc, gamma)
    return TotalCalculus(fodc, env2, gamma, base_calc, omega)


def differential_suite(tc: TotalCalculus, gauge_coalgebra=None) -> ValidationReport:
    """All degree-budgeted identities of the differential sector: F^ is a
    graded-differential *-homomorphism, X^ is degreewise bijective, the tau^
    identity block, the full sigma^_M suite, and the counital differential
    coalgebra structure of L^."""
    rep = ValidationReport()
    rep.extend(tc.env2.report)
    field = tc.field
    one = field.one
    omega, gamma, base = tc.omega, tc.gamma, tc.base_calc
    w2, w3 = tc.w2, tc.w3
    og = omega.og

    # --- F^ structure -------------------------------------------------------
    rep.add(passing("diff.Xhat-bijective", "X^ bijective per degree",
                    note=str(tc.x_by_degree_ok)))

    def og_mul(u: Vec, v: Vec) -> Vec:
        out: Vec = {}
        for fi, c1 in og.lift(u).items():
            p, g1 = og.tuples[fi]
            for fj, c2 in og.lift(v).items():
                q, g2 = og.tuples[fj]
                sign = -one if (gamma.degree(g1) * omega.degree(q)) % 2 else one
                c0 = c1 * c2 * sign
                for m, cm in omega.mul_basis(p, q).items():
                    for gg, cg in gamma.mul_basis(g1, g2).items():
                        viadd(out, c0 * cm * cg, {og.flat_index((m, gg)): one})
        return og.project(out)

    bad = None
    for i in range(omega.dim):
        for j in range(omega.dim):
            if omega.degree(i) + omega.degree(j) > BUDGET:
                continue
            lhs = omega.f_hat.apply(omega.mul_basis(i, j))
            rhs = og_mul(omega.f_hat.cols[i], omega.f_hat.cols[j])
            if lhs != rhs:
                bad = {"basis_pair": [i, j]}
                break
        if bad:
            break
    rep.add(failing("diff.Fhat-mult", "F^ multiplicative", bad) if bad
            else passing("diff.Fhat-mult", "F^ multiplicative"))

    bad = None
    for i in range(omega.dim):
        lhs = omega.f_hat.apply(omega.star.cols[i])
        acc: Vec = {}
        for fj, c in og.lift(omega.f_hat.cols[i]).items():
            w, th = og.tuples[fj]
            for w2_, cw in omega.star.cols[w].items():
                for th2, cth in gamma.star.cols[th].items():
                    viadd(acc, (c.conj()) * cw * cth,
                          {og.flat_index((w2_, th2)): one})
        if lhs != og.project(acc):
            bad = {"basis_index": i}
            break
    rep.add(failing("diff.Fhat-star", "F^ hermitian", bad) if bad
            else passing("diff.Fhat-star", "F^ hermitian"))

    bad = None
    for i in range(omega.dim):
        if omega.degree(i) >= BUDGET:
            continue
        lhs = omega.f_hat.apply(omega.d_cols[i])
        acc = {}
        for fj, c in og.lift(omega.f_hat.cols[i]).items():
            w, th = og.tuples[fj]
            if omega.d_cols[w] is not None:
                for w2_, cw in omega.d_cols[w].items():
                    viadd(acc, c * cw, {og.flat_index((w2_, th)): one})
            sign = -one if omega.degree(w) % 2 else one
            if gamma.degree(th) < BUDGET and gamma.d_cols[th] is not None:
                for th2, cth in gamma.d_cols[th].items():
                    viadd(acc, c * cth * sign, {og.flat_index((w, th2)): one})
        if lhs != og.project(acc):
            bad = {"basis_index": i}
            break
    rep.add(failing("diff.Fhat-d", "F^ intertwines d", bad) if bad
            else passing("diff.Fhat-d", "F^ intertwines d"))

    # (F^ (x) id)F^ = (id (x) phi^)F^ in Omega (x) Gamma^ (x) Gamma^
    ogg = tc.ogg_space()
    bad = None
    for i in range(omega.dim):
        lhs: Vec = {}
        rhs: Vec = {}
        for w, th, c in omega.f_legs[i]:
            for w2_, th1, c2 in omega.f_legs[w]:
                viadd(lhs, c * c2, {ogg.flat_index((w2_, th1, th)): one})
            for fj, c2 in gamma.square.lift(gamma.phi_hat.cols[th]).items():
                g1, g2 = gamma.square.tuples[fj]
                viadd(rhs, c * c2, {ogg.flat_index((w, g1, g2)): one})
        if ogg.project(lhs) != ogg.project(rhs):
            bad = {"basis_index": i}
            break
    rep.add(failing("diff.Fhat-coassoc", "(F^ (x) id)F^ = (id (x) phi^)F^", bad)
            if bad else passing("diff.Fhat-coassoc", "(F^ (x) id)F^ = (id (x) phi^)F^"))

    # horizontal forms and the embedded base calculus
    hor = tc.hor_basis()
    expected_hor = []
    for i in range(omega.dim):
        m, g = omega.tp.tuples[i]
        if gamma.degree(g) == 0:
            expected_hor.append({i: one})
    rep.add(passing("diff.hor", "hor(P) = Omega(M) . B")
            if spans_equal(hor, expected_hor)
            else failing("diff.hor", "hor(P) = Omega(M) . B",
                         {"dim": len(hor), "expected": len(expected_hor)}))
    fixed = tc.omega_m_fixed()
    rep.add(passing("diff.omegaM", "Omega(M) = F^-fixed forms")
            if spans_equal(fixed, omega.m_embed_cols)
            else failing("diff.omegaM", "Omega(M) = F^-fixed forms",
                         {"dim": len(fixed)}))

    # --- tau^ block -----------------------------------------------------------
    w2g = tc.w2g

    # (id (x) F^) tau^ = tau^((1)) (x) (2)
    lhs_cols, rhs_cols = [], []
    for gi in range(gamma.dim):
        acc: Vec = {}
        for p, q, ct in tc.tau_legs[gi]:
            for w, th, c in omega.f_legs[q]:
                viadd(acc, ct * c, {w2g.flat_index((p, w, th)): one})
        lhs_cols.append(w2g.project(acc))
        acc = {}
        for fj, c in gamma.square.lift(gamma.phi_hat.cols[gi]).items():
            g1, g2 = gamma.square.tuples[fj]
            for p, q, ct in tc.tau_legs[g1]:
                viadd(acc, c * ct, {w2g.flat_index((p, q, g2)): one})
        rhs_cols.append(w2g.project(acc))
    lhs = LinearMap(gamma.space, w2g.space, lhs_cols, field)
    rhs = LinearMap(gamma.space, w2g.space, rhs_cols, field)
    rep.add(map_equality_record("diff.tau-coact", "(id (x) F^)tau^", lhs, rhs,
                                witness_space=w2g.space))

    # F^_2 tau^ = (tau^ (x) id) ad
    ad = gamma.ad_hat()
    lhs = tc.f2_hat.compose(tc.tau_hat)
    rhs_cols = []
    for gi in range(gamma.dim):
        acc = {}
        for fj, c in gamma.square.lift(ad.cols[gi]).items():
            g1, g2 = gamma.square.tuples[fj]
            for p, q, ct in tc.tau_legs[g1]:
                viadd(acc, c * ct, {w2g.flat_index((p, q, g2)): one})
        rhs_cols.append(w2g.project(acc))
    rhs = LinearMap(gamma.space, w2g.space, rhs_cols, field)
    rep.add(map_equality_record("diff.tau-ad", "F^_2 tau^ = (tau^ (x) id) ad",
                                lhs, rhs, witness_space=w2g.space))

    # tau^(gamma)* = tau^(kappa^(gamma)*)
    lhs = tc.w2_star.compose(tc.tau_hat)
    rhs = tc.tau_hat.compose(gamma.star.compose(gamma.kappa_hat))
    rep.add(map_equality_record("diff.tau-star", "tau^* = tau^ kappa^ *",
                                lhs, rhs, witness_space=w2.space))

    # tau^ d = d tau^
    bad = None
    for gi in range(gamma.dim):
        if gamma.degree(gi) >= BUDGET:
            continue
        lhs_v = tc.tau_hat.apply(gamma.d_cols[gi])
        rhs_v = tc.w2_d(tc.tau_hat.cols[gi])
        if lhs_v != rhs_v:
            bad = {"basis_index": gi}
            break
    rep.add(failing("diff.tau-d", "tau^ d = d tau^", bad) if bad
            else passing("diff.tau-d", "tau^ d = d tau^"))

    # (F^ (x) id) tau^ = chi{kappa^((1)) (x) tau^((2))}, carried into
    # W_2 (x) Gamma^: the right side is the graded twist of
    # kappa^(gamma^(1)) (x) l(gamma^(2)) (x) r(gamma^(2)) moving the kappa^
    # leg to the end, with the coproduct twist sign (-1)^{deg (1) deg (2)};
    # the left side swaps the F^-output leg past the r slot
    lhs_cols, rhs_cols = [], []
    for gi in range(gamma.dim):
        acc: Vec = {}
        for p, q, ct in tc.tau_legs[gi]:
            for w, th, c in omega.f_legs[p]:
                sign = -one if (gamma.degree(th) * omega.degree(q)) % 2 else one
                viadd(acc, ct * c * sign, {w2g.flat_index((w, q, th)): one})
        lhs_cols.append(w2g.project(acc))
        acc = {}
        for fj, c in gamma.square.lift(gamma.phi_hat.cols[gi]).items():
            g1, g2 = gamma.square.tuples[fj]
            sign = -one if (gamma.degree(g1) * gamma.degree(g2)) % 2 else one
            for k1, ck in gamma.kappa_hat.cols[g1].items():
                for p, q, ct in tc.tau_legs[g2]:
                    viadd(acc, c * ck * ct * sign,
                          {w2g.flat_index((p, q, k1)): one})
        rhs_cols.append(w2g.project(acc))
    lhs = LinearMap(gamma.space, w2g.space, lhs_cols, field)
    rhs = LinearMap(gamma.space, w2g.space, rhs_cols, field)
    rep.add(map_equality_record("diff.tau-left-coact", "(F^ (x) id)tau^", lhs, rhs,
                                witness_space=w2g.space))

    # mu tau^ = eps(.) 1
    lhs = tc.w2_mu.compose(tc.tau_hat)
    rhs_cols = []
    for gi in range(gamma.dim):
        acc = {}
        e = gamma.eps_basis(gi)
        if e:
            for i, c in omega.unit.items():
                viadd(acc, e * c, {tc.w1.flat_index((i,)): one})
        rhs_cols.append(tc.w1.project(acc))
    rhs = LinearMap(gamma.space, tc.w1.space, rhs_cols, field)
    rep.add(map_equality_record("diff.tau-eps", "l r = eps(.)1", lhs, rhs,
                                witness_space=tc.w1.space))

    # graded centrality of im(tau^) with Omega(M)
    bad = None
    for f in range(base.dim):
        for gi in range(gamma.dim):
            if base.degree(f) + gamma.degree(gi) > BUDGET:
                continue
            lv = tc._act_w2(omega.factor.lact[f], tc.tau_hat.cols[gi])
            rv = tc._act_w2(omega.factor.ract[f], tc.tau_hat.cols[gi], right=True)
            sign = -one if (base.degree(f) * gamma.degree(gi)) % 2 else one
            if lv != vscale(sign, rv):
                bad = {"base_index": f, "gamma_index": gi}
                break
        if bad:
            break
    rep.add(failing("diff.tau-central", "im(tau^) graded-commutes with Omega(M)", bad)
            if bad else
            passing("diff.tau-central", "im(tau^) graded-commutes with Omega(M)"))

    # twisted multiplicativity: tau^(xy) per the chi-formula
    bad = None
    for gi in range(gamma.dim):
        for gj in range(gamma.dim):
            if gamma.degree(gi) + gamma.degree(gj) > BUDGET:
                continue
            lhs_v = tc.tau_hat.apply(gamma.mul_basis(gi, gj))
            acc: Vec = {}
            for u, v_, cu in tc.tau_legs[gj]:
                sign = -one if (gamma.degree(gi) * omega.degree(u)) % 2 else one
                for p, q, ct in tc.tau_legs[gi]:
                    c0 = cu * ct * sign
                    for m, cm in omega.mul_basis(u, p).items():
                        for m2, cm2 in omega.mul_basis(q, v_).items():
                            viadd(acc, c0 * cm * cm2,
                                  {w2.flat_index((m, m2)): one})
            if lhs_v != w2.project(acc):
                bad = {"pair": [gi, gj]}
                break
        if bad:
            break
    rep.add(failing("diff.tau-mult", "tau^ of a product (chi formula)", bad)
            if bad else passing("diff.tau-mult", "tau^ of a product (chi formula)"))

    # --- sigma^_M suite --------------------------------------------------------
    ident = LinearMap.identity(w2.space, field)
    ok = (tc.sigma_fwd.compose(tc.sigma_inv) == ident
          and tc.sigma_inv.compose(tc.sigma_fwd) == ident)
    rep.add(passing("diff.g-inv", "g-inv") if ok
            else failing("diff.g-inv", "g-inv", {}))

    # filtration compatibility for k = 0, 1, 2 (degree-budgeted pairings)
    for k in range(BUDGET + 1):
        fk = tc.filtration_basis(k)
        left_span = []
        right_span = []
        for u in fk:
            deg_u = omega.degree(min(u))
            for j in range(omega.dim):
                if deg_u + omega.degree(j) > BUDGET:
                    continue
                left_span.append(tc.embed_w2(u, {j: one}))
                right_span.append(tc.embed_w2({j: one}, u))
        img = [tc.sigma_fwd.apply(v) for v in left_span]
        ok = spans_equal(img, right_span)
        rep.add(passing(f"diff.gsM-filt-{k}", "gsM-filt") if ok
                else failing(f"diff.gsM-filt-{k}", "gsM-filt", {"k": k}))

    s12 = tc.sigma_at(0)
    s23 = tc.sigma_at(1)
    lhs = s12.compose(s23).compose(s12)
    rhs = s23.compose(s12).compose(s23)
    rep.add(map_equality_record("diff.g-braid", "g-braid", lhs, rhs,
                                witness_space=w3.space))

    mu12 = tc.mu_at(0)
    mu23 = tc.mu_at(1)
    rep.add(map_equality_record("diff.prod-gsM1", "prod-gsM1",
                                tc.sigma_fwd.compose(mu12),
                                mu23.compose(s12).compose(s23),
                                witness_space=w2.space))
    rep.add(map_equality_record("diff.prod-gsM2", "prod-gsM2",
                                tc.sigma_fwd.compose(mu23),
                                mu12.compose(s23).compose(s12),
                                witness_space=w2.space))

    rep.add(map_equality_record("diff.g-comm", "mu sigma^ = mu",
                                tc.w2_mu.compose(tc.sigma_fwd), tc.w2_mu,
                                witness_space=tc.w1.space))

    rep.add(map_equality_record("diff.g-star", "* sigma^ = sigma^-1 *",
                                tc.w2_star.compose(tc.sigma_fwd),
                                tc.sigma_inv.compose(tc.w2_star),
                                witness_space=w2.space))

    bad = None
    for b in range(w2.dim):
        if tc.w2_basis_deg(b) >= BUDGET:
            continue
        lhs_v = tc.w2_d(tc.sigma_fwd.cols[b])
        rhs_v = tc.sigma_fwd.apply(tc.w2_d_cols[b])
        if lhs_v != rhs_v:
            bad = {"basis_index": b}
            break
    rep.add(failing("diff.g-d", "d sigma^ = sigma^ d", bad) if bad
            else passing("diff.g-d", "d sigma^ = sigma^ d"))

    # --- L^ -------------------------------------------------------------------
    nl = tc.lhat_space.dim
    # closed under star and d
    ok = True
    for lb in tc.lhat_basis:
        if tc.lhat_incl.solve(tc.w2_star.apply(lb)) is None:
            ok = False
            break
    rep.add(passing("diff.Lhat-star", "L^ closed under conjugation") if ok
            else failing("diff.Lhat-star", "L^ closed under conjugation", {}))
    ok = True
    for li, lb in enumerate(tc.lhat_basis):
        if tc.lhat_degrees[li] >= BUDGET:
            continue
        if tc.lhat_incl.solve(tc.w2_d(lb)) is None:
            ok = False
            break
    rep.add(passing("diff.Lhat-d", "L^ closed under d") if ok
            else failing("diff.Lhat-d", "L^ closed under d", {}))

    if gauge_coalgebra is not None:
        # degree-0 part of L^ equals L
        b = tc.bundle
        b2 = b.b2
        deg0 = tc._deg0
        omap = {bi: deg0[bi] for bi in range(len(deg0))}
        l_in_w2 = []
        for lb in gauge_coalgebra.l_basis:
            acc = {}
            for fi, c in b2.lift(lb).items():
                i, j = b2.tuples[fi]
                viadd(acc, c, {w2.flat_index((omap[i], omap[j])): one})
            l_in_w2.append(w2.project(acc))
        lhat0 = [lb for li, lb in enumerate(tc.lhat_basis)
                 if tc.lhat_degrees[li] == 0]
        rep.add(passing("diff.Lhat-deg0", "L^0 = L")
                if spans_equal(l_in_w2, lhat0)
                else failing("diff.Lhat-deg0", "L^0 = L",
                             {"dim_L": len(l_in_w2), "dim_Lhat0": len(lhat0)}))

    # eps^_M: hermitian and d-compatible
    bad = None
    for li in range(nl):
        st = tc.lhat_incl.solve(tc.w2_star.apply(tc.lhat_basis[li]))
        lhs_v = tc.eps_hat_m.apply(st)
        rhs_v = base.star_apply(tc.eps_hat_m.cols[li])
        if lhs_v != rhs_v:
            bad = {"basis_index": li}
            break
    rep.add(failing("diff.epsM-star", "eps^_M * = * eps^_M", bad) if bad
            else passing("diff.epsM-star", "eps^_M * = * eps^_M"))
    bad = None
    for li in range(nl):
        if tc.lhat_degrees[li] >= BUDGET:
            continue
        dl = tc.lhat_incl.solve(tc.w2_d(tc.lhat_basis[li]))
        lhs_v = tc.eps_hat_m.apply(dl)
        rhs_v = base.d_apply(tc.eps_hat_m.cols[li])
        if lhs_v != rhs_v:
            bad = {"basis_index": li}
            break
    rep.add(failing("diff.epsM-d", "eps^_M d = d eps^_M", bad) if bad
            else passing("diff.epsM-d", "eps^_M d = d eps^_M"))

    # counital differential coalgebra identities
    t_l = TProd(field, (tc.lhat_factor,), budget=BUDGET, name="L^")

    def eps1_terms(t):
        l1, l2 = t
        for f, c in tc.eps_hat_m.cols[l1].items():
            for k, ck in tc.lhat_lact[f].cols[l2].items():
                yield (k,), c * ck

    eps1 = term_map(tc.t_ll, t_l, eps1_terms)

    def eps2_terms(t):
        l1, l2 = t
        for f, c in tc.eps_hat_m.cols[l2].items():
            for k, ck in tc.lhat_ract[f].cols[l1].items():
                yield (k,), c * ck

    eps2 = term_map(tc.t_ll, t_l, eps2_terms)
    resc = LinearMap(tc.lhat_space, t_l.space,
                     [t_l.project_tuple((i,)) for i in range(nl)], field)
    rep.add(map_equality_record("diff.Lhat-counit-left", "counit",
                                eps1.compose(tc.phi_hat_m), resc,
                                witness_space=t_l.space))
    rep.add(map_equality_record("diff.Lhat-counit-right", "counit",
                                eps2.compose(tc.phi_hat_m), resc,
                                witness_space=t_l.space))

    def epsd_terms(t):
        l, j = t
        for f, c in tc.eps_hat_m.cols[l].items():
            emb = tc.m_embed.cols[f]
            for i, ci in emb.items():
                for k, ck in omega.mul_basis(i, j).items():
                    yield (k,), c * ci * ck

    epsd = term_map(tc.t_lo, tc.w1, epsd_terms)
    ido = LinearMap(omega.space, tc.w1.space,
                    [tc.w1.project_tuple((i,)) for i in range(omega.dim)], field)
    rep.add(map_equality_record("diff.Lhat-e-fgau", "(eps^_M (x) id)Delta^ = id",
                                epsd.compose(tc.delta_hat), ido,
                                witness_space=tc.w1.space))

    def id_delta_terms(t):
        l, j = t
        for fj, cd in tc.t_lo.lift(tc.delta_hat.cols[j]).items():
            l2, x = tc.t_lo.tuples[fj]
            yield (l, l2, x), cd

    id_delta = term_map(tc.t_lo, tc.t_llo, id_delta_terms)

    def phi_id_terms_lo(t):
        l, j = t
        for fj, cp in tc.t_ll.lift(tc.phi_hat_m.cols[l]).items():
            l1, l2 = tc.t_ll.tuples[fj]
            yield (l1, l2, j), cp

    phi_id = term_map(tc.t_lo, tc.t_llo, phi_id_terms_lo)
    rep.add(map_equality_record("diff.Lhat-coact", "(id (x) Delta^)Delta^ = (phi^_M (x) id)Delta^",
                                id_delta.compose(tc.delta_hat),
                                phi_id.compose(tc.delta_hat),
                                witness_space=tc.t_llo.space))

    def phi1_terms(t):
        l1, l2 = t
        for fj, cp in tc.t_ll.lift(tc.phi_hat_m.cols[l1]).items():
            a, b_ = tc.t_ll.tuples[fj]
            yield (a, b_, l2), cp

    phi1 = term_map(tc.t_ll, tc.t_lll, phi1_terms)

    def phi2_terms(t):
        l1, l2 = t
        for fj, cp in tc.t_ll.lift(tc.phi_hat_m.cols[l2]).items():
            a, b_ = tc.t_ll.tuples[fj]
            yield (l1, a, b_), cp

    phi2 = term_map(tc.t_ll, tc.t_lll, phi2_terms)
    rep.add(map_equality_record("diff.Lhat-coasso", "phi^_M coassociative",
                                phi1.compose(tc.phi_hat_m),
                                phi2.compose(tc.phi_hat_m),
                                witness_space=tc.t_lll.space))

    # <tau^, tau^>(theta) = d tau^(theta) on Gamma_inv
    bad = None
    checked = False
    for t in range(gamma.d1):
        checked = True
        # theta as the invariant element 1 (x) theta_t of Gamma
        theta_vec = gamma.inv1_vec(t)
        lhs_v: Vec = {}
        for idx, c in tc.env2.delta.cols[t].items():
            t1, t2 = divmod(idx, gamma.d1)
            v1 = tc.tau_of(gamma.inv1_vec(t1))
            v2 = tc.tau_of(gamma.inv1_vec(t2))
            viadd(lhs_v, c, tc.w2_mult(v1, v2))
        rhs_v = tc.w2_d(tc.tau_of(theta_vec))
        if lhs_v != rhs_v:
            bad = {"theta_index": t}
            break
    if not checked:
        rep.add(vacuous("diff.tau-bracket", "<tau^,tau^> = d tau^",
                        note="zero calculus"))
    else:
        rep.add(failing("diff.tau-bracket", "<tau^,tau^> = d tau^", bad) if bad
                else passing("diff.tau-bracket", "<tau^,tau^> = d tau^"))

    return rep
