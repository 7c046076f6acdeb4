"""Quantum principal bundles in degree zero.

A bundle is a coacting *-algebra (B, F) over a Hopf *-algebra A; the base V
is computed as the F-fixed-point subalgebra, never declared.  Principality is
the bijectivity of the Galois map X(b (x) q) = b F(q) on B (x)_V B, and the
translation map is tau(a) = X^{-1}(1 (x) a).

B_n spaces (n-fold balanced tensor powers) are built once and cached so all
canonical bases agree across operations.
"""

from __future__ import annotations

import os

from .errors import (
    BudgetExceeded, InputError, NotCoaction, NotPrincipal, NotStarHom,
    ValidationFailed,
)
from .hopf import HopfStarAlgebra, StarAlgebra
from .linalg import (
    BasedSpace, LinearMap, Vec, span_basis, vadd, viadd, vscale,
)
from .report import (
    CheckRecord, ValidationReport, failing, map_equality_record, passing,
)
from .tensor import Factor, TProd, term_map

DEFAULT_TOWER_BUDGET = 3


def _tower_budget() -> int:
    env = os.environ.get("QPB_TENSOR_BUDGET")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InputError(f"bad QPB_TENSOR_BUDGET value {env!r}") from None
    return DEFAULT_TOWER_BUDGET


class Bundle:
    def __init__(self, total: StarAlgebra, group: HopfStarAlgebra, coaction: LinearMap,
                 base_vectors, base: StarAlgebra, base_in_total: LinearMap):
        self.total = total
        self.group = group
        self.coaction = coaction
        self.field = total.field
        self.base_vectors = base_vectors  # V basis as vectors in B
        self.base = base                  # abstract V with solved structure constants
        self.base_in_total = base_in_total
        self.tower_budget = _tower_budget()
        one = self.field.one
        lact = [total.left_mult_map(v) for v in base_vectors]
        ract = [total.right_mult_map(v) for v in base_vectors]
        self.b_factor = Factor.ungraded(total.space, lact, ract)
        self.a_factor = Factor.ungraded(group.space)
        self._spaces: dict = {}
        self.b2 = self.b_space(2)
        # Galois map X(b (x) q) = b F(q)
        ba = self.mixed_space("BA")
        fcols = coaction.cols
        da = group.dim

        def x_terms(t):
            i, j = t
            for idx, c in fcols[j].items():
                k, a = divmod(idx, da)
                for u, cu in total.mul_basis(i, k).items():
                    yield (u, a), c * cu

        self.X = term_map(self.b2, ba, x_terms)
        if self.b2.dim != total.dim * da or not self.X.is_bijective():
            raise NotPrincipal(
                "Galois map X is not bijective "
                f"(dim B2 = {self.b2.dim}, dim B(x)A = {total.dim * da}, rank = {self.X.rank()})",
                where="bundle.coaction")
        self.X_inv = self.X.inverse()
        tau_cols = []
        for a in range(da):
            target: Vec = {}
            for i, c in total.unit.items():
                viadd(target, c, {ba.flat_index((i, a)): one})
            tau_cols.append(self.X_inv.apply(ba.project(target)))
        self.tau = LinearMap(group.space, self.b2.space, tau_cols, self.field)
        # flat legs tau(e_a) = sum (i, j, c), cached for Sweedler-style loops
        self.tau_legs = []
        for a in range(da):
            legs = []
            for fi, c in self.b2.lift(tau_cols[a]).items():
                i, j = self.b2.tuples[fi]
                legs.append((i, j, c))
            self.tau_legs.append(legs)
        self.f_legs = []
        for i in range(total.dim):
            self.f_legs.append([(idx // da, idx % da, c)
                                for idx, c in coaction.cols[i].items()])

    # -- cached spaces ----------------------------------------------------

    def b_space(self, n: int) -> TProd:
        """B_n = B (x)_V ... (x)_V B, cached."""
        if n < 1:
            raise InputError("tensor power must be at least 1")
        if n > self.tower_budget + 1:
            raise BudgetExceeded(
                f"B_{n} exceeds the tensor budget (max n = {self.tower_budget + 1}; "
                "set QPB_TENSOR_BUDGET to raise)")
        key = ("B", n)
        if key not in self._spaces:
            self._spaces[key] = TProd(self.field, (self.b_factor,) * n, name=f"B_{n}")
        return self._spaces[key]

    def mixed_space(self, pattern: str) -> TProd:
        """TProd for a pattern over letters 'B' (balanced) and 'A' (free)."""
        key = ("mix", pattern)
        if key not in self._spaces:
            factors = tuple(self.b_factor if ch == "B" else self.a_factor
                            for ch in pattern)
            self._spaces[key] = TProd(self.field, factors, name=pattern)
        return self._spaces[key]

    # -- small conveniences -------------------------------------------------

    @property
    def base_dim(self) -> int:
        return len(self.base_vectors)

    def is_point_base(self) -> bool:
        return self.base_dim == 1

    def is_point_trivial(self) -> bool:
        """B = A with F = phi, so the closed-form translation oracle applies."""
        return (self.total.space.labels == self.group.space.labels
                and self.coaction.cols == self.group.coproduct.cols)

    def x_n(self, n: int) -> LinearMap:
        """The tower isomorphism X_n : B_{n+1} -> B (x) A^n, cached.

        X_1 = X and X_{m+1}(b (x) q) = (X (x) id^m)(b (x) X_m(q)).
        """
        if n < 1:
            raise InputError("tower level must be >= 1")
        if n > self.tower_budget:
            raise BudgetExceeded(f"tower level {n} exceeds budget {self.tower_budget}")
        key = ("X", n)
        if key in self._spaces:
            return self._spaces[key]
        if n == 1:
            self._spaces[key] = self.X
            return self.X
        prev = self.x_n(n - 1)
        prev_src = self.b_space(n)
        prev_target = self.mixed_space("B" + "A" * (n - 1))
        target = self.mixed_space("B" + "A" * n)
        ba = self.mixed_space("BA")

        def terms(t):
            sub = prev.apply(prev_src.project_tuple(t[1:]))
            for fi, c in prev_target.lift(sub).items():
                st = prev_target.tuples[fi]
                xv = self.X.apply(self.b2.project_tuple((t[0], st[0])))
                for fj, c2 in ba.lift(xv).items():
                    u, a0 = ba.tuples[fj]
                    yield (u, a0) + st[1:], c * c2

        xn = term_map(self.b_space(n + 1), target, terms)
        self._spaces[key] = xn
        return xn

    def x_n_inverse(self, n: int) -> LinearMap:
        key = ("Xinv", n)
        if key not in self._spaces:
            self._spaces[key] = self.x_n(n).inverse()
        return self._spaces[key]

    def lmult_map(self, n: int, slot: int, w: Vec) -> LinearMap:
        """Left multiplication by w in one slot of B_n."""
        bn = self.b_space(n)
        total = self.total

        def terms(t):
            for k, c in total.mul(w, {t[slot]: self.field.one}).items():
                yield t[:slot] + (k,) + t[slot + 1:], c

        return term_map(bn, bn, terms)

    def rmult_map(self, n: int, slot: int, w: Vec) -> LinearMap:
        bn = self.b_space(n)
        total = self.total

        def terms(t):
            for k, c in total.mul({t[slot]: self.field.one}, w).items():
                yield t[:slot] + (k,) + t[slot + 1:], c

        return term_map(bn, bn, terms)

    def flipstar(self, n: int) -> LinearMap:
        """The standard conjugation on B_n: reverse slots and star each factor."""
        bn = self.b_space(n)
        star_cols = self.total.star.cols

        def terms(t):
            rev = t[::-1]
            acc = [((), self.field.one)]
            for i in rev:
                nxt = []
                for tup, c in acc:
                    for k, ck in star_cols[i].items():
                        nxt.append((tup + (k,), c * ck))
                acc = nxt
            return acc

        return term_map(bn, bn, terms, antilinear=True)


def _check(rep: ValidationReport, ident, label, bad):
    rep.add(failing(ident, label, bad) if bad else passing(ident, label))


def build_bundle(total: StarAlgebra, group: HopfStarAlgebra,
                 coaction: LinearMap) -> Bundle:
    """Validate the coaction, compute the base, and assemble X and tau.

    Raises NotCoaction / NotStarHom / NotPrincipal on bad input.
    """
    field = total.field
    one = field.one
    da = group.dim

    def tens(u: Vec, v: Vec) -> Vec:
        out: Vec = {}
        for i, a in u.items():
            for j, b in v.items():
                out[i * da + j] = a * b
        return out

    # unital
    if coaction.apply(total.unit) != tens(total.unit, group.unit):
        raise NotCoaction("F(1) != 1 (x) 1", where="bundle.coaction")
    # multiplicative and star
    def ba_mul(x: Vec, y: Vec) -> Vec:
        out: Vec = {}
        for idx, a in x.items():
            i1, i2 = divmod(idx, da)
            for jdx, b in y.items():
                j1, j2 = divmod(jdx, da)
                c = a * b
                for k1, c1 in total.mul_basis(i1, j1).items():
                    for k2, c2 in group.algebra.mul_basis(i2, j2).items():
                        viadd(out, c * c1 * c2, {k1 * da + k2: one})
        return out

    for i in range(total.dim):
        for j in range(total.dim):
            lhs = coaction.apply(total.mul_basis(i, j))
            rhs = ba_mul(coaction.cols[i], coaction.cols[j])
            if lhs != rhs:
                raise NotStarHom(
                    f"F is not multiplicative at basis pair ({i}, {j})",
                    where="bundle.coaction")
    for i in range(total.dim):
        lhs = coaction.apply(total.star_vec({i: one}))
        rhs: Vec = {}
        for idx, c in coaction.cols[i].items():
            i1, i2 = divmod(idx, da)
            rhs = vadd(rhs, vscale(c.conj(),
                                   tens(total.star_vec({i1: one}),
                                        group.star_vec({i2: one}))))
        if lhs != rhs:
            raise NotStarHom(f"F is not hermitian at basis index {i}",
                             where="bundle.coaction")
    # coaction laws
    id_b = LinearMap.identity(total.space, field)
    lhs = coaction.tensor(LinearMap.identity(group.space, field)).compose(coaction)
    rhs = id_b.tensor(group.coproduct).compose(coaction)
    if lhs != rhs:
        raise NotCoaction("(F (x) id)F != (id (x) phi)F", where="bundle.coaction")
    for i in range(total.dim):
        acc: Vec = {}
        for idx, c in coaction.cols[i].items():
            i1, i2 = divmod(idx, da)
            viadd(acc, c * group.eps_basis(i2), {i1: one})
        if acc != {i: one}:
            raise NotCoaction(f"(id (x) eps)F != id at basis index {i}",
                              where="bundle.coaction")

    # base V = F-fixed points
    iota_cols = [tens({i: one}, group.unit) for i in range(total.dim)]
    diff = LinearMap(total.space, coaction.codomain,
                     [vadd(coaction.cols[i], vscale(-one, iota_cols[i]))
                      for i in range(total.dim)], field)
    base_vectors = span_basis(diff.nullspace())
    if not base_vectors:
        raise NotCoaction("coaction has no fixed vectors at all", where="bundle.coaction")
    incl = LinearMap(BasedSpace(tuple(f"v{i}" for i in range(len(base_vectors)))),
                     total.space, base_vectors, field)
    # abstract V structure constants
    nb = len(base_vectors)

    def in_base(v: Vec, what: str) -> Vec:
        sol = incl.solve(v)
        if sol is None:
            raise ValidationFailed(f"{what} leaves the fixed-point subalgebra",
                                   where="bundle.coaction")
        return sol

    vmult = [[in_base(total.mul(base_vectors[i], base_vectors[j]), "product of base elements")
              for j in range(nb)] for i in range(nb)]
    vunit = in_base(total.unit, "unit")
    vstar_cols = [in_base(total.star_vec(base_vectors[i]), "star of base element")
                  for i in range(nb)]
    vstar = LinearMap(incl.domain, incl.domain, vstar_cols, field, antilinear=True)
    base = StarAlgebra("V", field, incl.domain, vmult, vunit, vstar)
    return Bundle(total, group, coaction, base_vectors, base, incl)


# -- translation identity suite --------------------------------------------------


def translation_identities(b: Bundle) -> ValidationReport:
    """The six translation-map identities plus bimodule centrality; over a
    point-trivial bundle, tau is also matched against the closed-form oracle
    kappa(a^(1)) (x) a^(2)."""
    rep = ValidationReport()
    field = b.field
    one = field.one
    g = b.group
    total = b.total
    b2 = b.b2
    da = g.dim

    # tau(a)* = tau[kappa(a)*]
    s2 = b.flipstar(2)
    lhs = s2.compose(b.tau)
    rhs = b.tau.compose(g.algebra.star.compose(g.antipode))
    rep.add(map_equality_record("translation.star", "tau involution", lhs, rhs,
                                witness_space=b2.space))

    # l(a) r(a) = eps(a) 1
    b1 = b.b_space(1)
    mu = term_map(b2, b1, lambda t: (((k,), c) for k, c in
                                     total.mul_basis(t[0], t[1]).items()))
    lhs = mu.compose(b.tau)
    eps_cols = [b1.project({b1.flat_index((i,)): c * g.eps_basis(a)
                            for i, c in total.unit.items()})
                for a in range(da)]
    rhs = LinearMap(g.space, b1.space, eps_cols, field)
    rep.add(map_equality_record("translation.eps", "l(a)r(a) = eps(a)1", lhs, rhs,
                                witness_space=b1.space))

    # (id (x) F) tau(a) = tau(a^(1)) (x) a^(2)
    bba = b.mixed_space("BBA")

    def idf_terms(t):
        i, j = t
        for k, a, c in b.f_legs[j]:
            yield (i, k, a), c

    idf = term_map(b2, bba, idf_terms)
    lhs = idf.compose(b.tau)
    rhs_cols = []
    for a in range(da):
        acc: Vec = {}
        for a1, a2, c in g.sweedler(a):
            for i, j, ct in b.tau_legs[a1]:
                viadd(acc, c * ct, {bba.flat_index((i, j, a2)): one})
        rhs_cols.append(bba.project(acc))
    rhs = LinearMap(g.space, bba.space, rhs_cols, field)
    rep.add(map_equality_record("translation.coaction", "(id (x) F)tau", lhs, rhs,
                                witness_space=bba.space))

    # tau(ac) = l(c)l(a) (x) r(a)r(c)
    bad = None
    for a in range(da):
        for c_ in range(da):
            lhs_v = b.tau.apply(g.algebra.mul_basis(a, c_))
            acc: Vec = {}
            for u, v, cc in b.tau_legs[c_]:
                for x, y, ca in b.tau_legs[a]:
                    coeff = cc * ca
                    for p, cp in total.mul_basis(u, x).items():
                        for q, cq in total.mul_basis(y, v).items():
                            viadd(acc, coeff * cp * cq,
                                  {b2.flat_index((p, q)): one})
            rhs_v = b2.project(acc)
            if lhs_v != rhs_v:
                bad = {"basis_pair": [g.space.labels[a], g.space.labels[c_]],
                       "lhs": b2.render(lhs_v), "rhs": b2.render(rhs_v)}
                break
        if bad:
            break
    _check(rep, "translation.mult", "tau(ac) = l(c)l(a) (x) r(a)r(c)", bad)

    # (F (x) id) tau(a) = l(a^(2)) (x) kappa(a^(1)) (x) r(a^(2)),
    # both sides carried into B (x)_V B (x) A by the free slot swap
    def fid_terms(t):
        i, j = t
        for k, a, c in b.f_legs[i]:
            yield (k, j, a), c

    fid = term_map(b2, bba, fid_terms)
    lhs = fid.compose(b.tau)
    rhs_cols = []
    for a in range(da):
        acc = {}
        for a1, a2, c in g.sweedler(a):
            kap = g.antipode.cols[a1]
            for x, y, ct in b.tau_legs[a2]:
                for k, ck in kap.items():
                    viadd(acc, c * ct * ck, {bba.flat_index((x, y, k)): one})
        rhs_cols.append(bba.project(acc))
    rhs = LinearMap(g.space, bba.space, rhs_cols, field)
    rep.add(map_equality_record("translation.left-coaction", "(F (x) id)tau", lhs, rhs,
                                witness_space=bba.space))

    # tau(a) f = f tau(a) for f in a basis of V
    bad = None
    for fi, fvec in enumerate(b.base_vectors):
        lf = b.lmult_map(2, 0, fvec)
        rf = b.rmult_map(2, 1, fvec)
        for a in range(da):
            lv = lf.apply(b.tau.cols[a])
            rv = rf.apply(b.tau.cols[a])
            if lv != rv:
                bad = {"base_index": fi, "group_basis": g.space.labels[a],
                       "f.tau(a)": b2.render(lv), "tau(a).f": b2.render(rv)}
                break
        if bad:
            break
    _check(rep, "translation.centrality", "tf=ft", bad)

    # closed-form oracle over a point-trivial bundle
    if b.is_point_trivial():
        oracle_cols = []
        for a in range(da):
            acc = {}
            for a1, a2, c in g.sweedler(a):
                for k, ck in g.antipode.cols[a1].items():
                    viadd(acc, c * ck, {b2.flat_index((k, a2)): one})
            oracle_cols.append(b2.project(acc))
        oracle = LinearMap(g.space, b2.space, oracle_cols, field)
        rep.add(map_equality_record("translation.point-oracle",
                                    "tau = kappa(a^(1)) (x) a^(2) over a point",
                                    b.tau, oracle, witness_space=b2.space))
    return rep


# -- Galois tower -----------------------------------------------------------------


def galois_tower(b: Bundle, n: int):
    """X_n: B_{n+1} -> B (x) A^n by the recursion, tau_n as its restricted
    inverse; verifies X_n tau_n = 1 (x) id on basis tuples.

    Returns (X_n, tau_n, report).
    """
    if n < 1:
        raise InputError("tower level must be >= 1")
    if n > b.tower_budget:
        raise BudgetExceeded(f"tower level {n} exceeds budget {b.tower_budget}")
    field = b.field
    one = field.one
    da = b.group.dim
    total = b.total
    rep = ValidationReport()

    xn = b.x_n(n)
    target = b.mixed_space("B" + "A" * n)
    if not xn.is_bijective():
        rep.add(failing("tower.bijective", f"X_{n} bijective",
                        {"rank": xn.rank(), "dim": xn.domain.dim}))
        return xn, None, rep
    rep.add(passing("tower.bijective", f"X_{n} bijective"))

    # tau_n via the product formula
    bn1 = b.b_space(n + 1)
    from itertools import product as iproduct
    tau_cols = {}
    a_tuples = list(iproduct(range(da), repeat=n))
    for at in a_tuples:
        # legs of tau(a_1) (x) ... (x) tau(a_n), middle products
        acc_terms = [((), one)]
        prev_y = None
        for pos, a in enumerate(at):
            nxt = []
            for tup, c in acc_terms:
                for x, y, ct in b.tau_legs[a]:
                    if pos == 0:
                        nxt.append((tup + (x, y), c * ct))
                    else:
                        # multiply trailing slot into x
                        base = tup[:-1]
                        yprev = tup[-1]
                        for k, ck in total.mul_basis(yprev, x).items():
                            nxt.append((base + (k, y), c * ct * ck))
            acc_terms = nxt
        acc: Vec = {}
        for tup, c in acc_terms:
            viadd(acc, c, {bn1.flat_index(tup): one})
        tau_cols[at] = bn1.project(acc)

    # X_n tau_n (a_1 ... a_n) = 1 (x) a_1 (x) ... (x) a_n
    bad = None
    for at in a_tuples:
        got = xn.apply(tau_cols[at])
        want: Vec = {}
        for i, c in total.unit.items():
            viadd(want, c, {target.flat_index((i,) + at): one})
        want = target.project(want)
        if got != want:
            bad = {"tuple": [b.group.space.labels[a] for a in at],
                   "lhs": target.render(got), "rhs": target.render(want)}
            break
    _check(rep, "tower.inverse", f"X_{n} tau_{n} = 1 (x) id", bad)

    # independent check: tau_n agrees with the restricted inverse of X_n
    xinv = b.x_n_inverse(n)
    bad = None
    for at in a_tuples:
        want: Vec = {}
        for i, c in total.unit.items():
            viadd(want, c, {target.flat_index((i,) + at): one})
        direct = xinv.apply(target.project(want))
        if direct != tau_cols[at]:
            bad = {"tuple": [b.group.space.labels[a] for a in at]}
            break
    _check(rep, "tower.formula", f"tau_{n} product formula = X_{n}^-1 restriction", bad)

    tau_n = tau_cols
    return xn, tau_n, rep
