"""The canonical braid operator on B (x)_V B and everything it induces.

sigma(b (x) q) = sum_k b_k q l(c_k) (x) r(c_k)  with  F(b) = sum_k b_k (x) c_k,
with inverse sigma^{-1}(q (x) b) = sum_k tau(kappa^{-1}(c_k)) q b_k.  The suite
checks the braid equation on B_3, the product and star compatibilities, the
functoriality identities with F and tau, and the four-way classicality
dichotomy (A commutative <=> two exchange laws <=> sigma involutive).

B_n products are transported along the tower isomorphisms X_n, which the
paper identifies as *-isomorphisms onto B (x) A^n with the componentwise
structure; the n >= 3 star is the reversal braid word applied after the
factorwise star, and its algebra axioms are asserted rather than assumed.
"""

from __future__ import annotations

from .bundle import Bundle
from .errors import EquivalenceViolation
from .linalg import LinearMap, Vec, viadd
from .report import (
    CheckRecord, ValidationReport, failing, map_equality_record, passing,
)
from .tensor import block_terms, term_map


class BraidOperator:
    def __init__(self, bundle: Bundle, forward: LinearMap, inverse: LinearMap):
        self.bundle = bundle
        self.forward = forward
        self.inverse = inverse
        self._cache: dict = {}

    # -- slot operators -----------------------------------------------------

    def at(self, n: int, p: int, inverse: bool = False) -> LinearMap:
        """sigma (or its inverse) on slots (p, p+1) of B_n."""
        key = ("at", n, p, inverse)
        if key in self._cache:
            return self._cache[key]
        b = self.bundle
        bn = b.b_space(n)
        m = self.inverse if inverse else self.forward

        def terms(t):
            for pair, c in block_terms(b.b2, (t[p], t[p + 1]), m):
                yield t[:p] + pair + t[p + 2:], c

        out = term_map(bn, bn, terms)
        self._cache[key] = out
        return out

    def mu_at(self, n: int, p: int) -> LinearMap:
        """Multiply slots (p, p+1): B_n -> B_{n-1}."""
        key = ("mu", n, p)
        if key in self._cache:
            return self._cache[key]
        b = self.bundle
        src, dst = b.b_space(n), b.b_space(n - 1)

        def terms(t):
            for k, c in b.total.mul_basis(t[p], t[p + 1]).items():
                yield t[:p] + (k,) + t[p + 2:], c

        out = term_map(src, dst, terms)
        self._cache[key] = out
        return out

    # -- braided algebra structure -------------------------------------------

    def mult2(self, u: Vec, v: Vec) -> Vec:
        """(p (x) b)(q (x) g) = p sigma(b (x) q) g on B_2."""
        b = self.bundle
        b2 = b.b2
        total = b.total
        one = b.field.one
        out: Vec = {}
        for fu, cu in b2.lift(u).items():
            p, bb = b2.tuples[fu]
            for fv, cv in b2.lift(v).items():
                q, g = b2.tuples[fv]
                mid = self._sigma_pair(bb, q)
                c0 = cu * cv
                for (x, y), cs in mid:
                    for xx, cx in total.mul_basis(p, x).items():
                        for yy, cy in total.mul_basis(y, g).items():
                            viadd(out, c0 * cs * cx * cy,
                                  {b2.flat_index((xx, yy)): one})
        return b2.project(out)

    def _sigma_pair(self, i: int, j: int):
        key = ("pair", i, j)
        if key in self._cache:
            return self._cache[key]
        b2 = self.bundle.b2
        v = self.forward.apply(b2.project_tuple((i, j)))
        legs = [(b2.tuples[fi], c) for fi, c in b2.lift(v).items()]
        self._cache[key] = legs
        return legs

    def star_n(self, n: int) -> LinearMap:
        """The sigma-induced involution on B_n: factor reversal with star,
        then the half-twist braid word in adjacent sigmas."""
        key = ("star", n)
        if key in self._cache:
            return self._cache[key]
        b = self.bundle
        out = b.flipstar(n)
        for k in range(1, n):
            for p in range(k - 1, -1, -1):
                out = self.at(n, p).compose(out)
        self._cache[key] = out
        return out

    def mult_n(self, n: int):
        """Braided product on B_n transported along X_{n-1} (n >= 2)."""
        if n == 2:
            return self.mult2
        b = self.bundle
        xn = b.x_n(n - 1)
        xinv = b.x_n_inverse(n - 1)
        target = b.mixed_space("B" + "A" * (n - 1))
        total, group = b.total, b.group
        one = b.field.one

        def mul(u: Vec, v: Vec) -> Vec:
            xu = xn.apply(u)
            xv = xn.apply(v)
            out: Vec = {}
            for fu, cu in target.lift(xu).items():
                tu = target.tuples[fu]
                for fv, cv in target.lift(xv).items():
                    tv = target.tuples[fv]
                    terms = [((), cu * cv)]
                    for pos in range(n):
                        alg = total if pos == 0 else group.algebra
                        nxt = []
                        for tup, c in terms:
                            for k, ck in alg.mul_basis(tu[pos], tv[pos]).items():
                                nxt.append((tup + (k,), c * ck))
                        terms = nxt
                    for tup, c in terms:
                        viadd(out, c, {target.flat_index(tup): one})
            return xinv.apply(target.project(out))

        return mul


def sigma_m(b: Bundle) -> BraidOperator:
    """Assemble the braid and its inverse and verify they compose to the
    identity; V-bilinearity is checked on basis x V-basis."""
    field = b.field
    one = field.one
    b2 = b.b2
    total = b.total
    group = b.group

    def fwd_terms(t):
        i, j = t
        for k, c, cf in b.f_legs[i]:
            for x, y, ct in b.tau_legs[c]:
                coeff = cf * ct
                # e_k e_j x (x) y
                for u, cu in total.mul_basis(k, j).items():
                    for w, cw in total.mul_basis(u, x).items():
                        yield (w, y), coeff * cu * cw

    forward = term_map(b2, b2, fwd_terms)

    kappa_inv = group.antipode_inverse

    def inv_terms(t):
        q, bb = t
        for bk, c, cf in b.f_legs[bb]:
            for a, ca in kappa_inv.cols[c].items():
                for x, y, ct in b.tau_legs[a]:
                    coeff = cf * ca * ct
                    # x (x) y q b_k
                    for u, cu in total.mul_basis(y, q).items():
                        for w, cw in total.mul_basis(u, bk).items():
                            yield (x, w), coeff * cu * cw

    inverse = term_map(b2, b2, inv_terms)

    ident = LinearMap.identity(b2.space, field)
    if forward.compose(inverse) != ident or inverse.compose(forward) != ident:
        raise EquivalenceViolation("sigma and its formula inverse do not compose to id")
    for fvec in b.base_vectors:
        lf = b.lmult_map(2, 0, fvec)
        rf = b.rmult_map(2, 1, fvec)
        if forward.compose(lf) != lf.compose(forward):
            raise EquivalenceViolation("sigma is not left V-linear")
        if forward.compose(rf) != rf.compose(forward):
            raise EquivalenceViolation("sigma is not right V-linear")
    return BraidOperator(b, forward, inverse)


def verify_braiding_suite(b: Bundle, braid: BraidOperator | None = None) -> ValidationReport:
    """Prop 2.1 plus Lemmas 2.2-2.4: braid equation, product compatibility,
    sigma-commutativity, star exchange, tau and F functoriality."""
    rep = ValidationReport()
    braid = braid or sigma_m(b)
    field = b.field
    one = field.one
    b2, b3 = b.b2, b.b_space(3)
    g = b.group
    da = g.dim
    total = b.total

    s12 = braid.at(3, 0)
    s23 = braid.at(3, 1)
    lhs = s12.compose(s23).compose(s12)
    rhs = s23.compose(s12).compose(s23)
    rep.add(map_equality_record("braiding.braid", "braid", lhs, rhs,
                                witness_space=b3.space))

    mu12 = braid.mu_at(3, 0)
    mu23 = braid.mu_at(3, 1)
    lhs = braid.forward.compose(mu12)
    rhs = mu23.compose(s12).compose(s23)
    rep.add(map_equality_record("braiding.prod-sM1", "prod-sM1", lhs, rhs,
                                witness_space=b2.space))
    lhs = braid.forward.compose(mu23)
    rhs = mu12.compose(s23).compose(s12)
    rep.add(map_equality_record("braiding.prod-sM2", "prod-sM2", lhs, rhs,
                                witness_space=b2.space))

    mu = braid.mu_at(2, 0)
    rep.add(map_equality_record("braiding.comm", "comm", mu.compose(braid.forward), mu,
                                witness_space=b.b_space(1).space))

    # inverse formula already verified at construction; record it
    rep.add(passing("braiding.inv", "inv",
                    note="sigma^-1 per the closed formula composes to id both ways"))

    fs = b.flipstar(2)
    rep.add(map_equality_record("braiding.star-exchange", "sigma* = *sigma^-1",
                                braid.forward.compose(fs), fs.compose(braid.inverse),
                                witness_space=b2.space))

    # mu is a *-homomorphism for the braided structure
    star2 = braid.star_n(2)
    bad = None
    b1 = b.b_space(1)
    star1 = b.flipstar(1)
    for i in range(b2.dim):
        v = {i: one}
        if mu.apply(star2.apply(v)) != star1.apply(mu.apply(v)):
            bad = {"basis_index": i}
            break
    if bad is None:
        for i in range(b2.dim):
            for j in range(b2.dim):
                lhs_v = mu.apply(braid.mult2({i: one}, {j: one}))
                rhs_flat: Vec = {}
                for fu, cu in b1.lift(mu.apply({i: one})).items():
                    for fv, cv in b1.lift(mu.apply({j: one})).items():
                        for k, ck in total.mul_basis(b1.tuples[fu][0],
                                                     b1.tuples[fv][0]).items():
                            viadd(rhs_flat, cu * cv * ck, {b1.flat_index((k,)): one})
                if lhs_v != b1.project(rhs_flat):
                    bad = {"basis_pair": [i, j]}
                    break
            if bad:
                break
    rep.add(failing("braiding.mu-star-hom", "mu_M is a *-homomorphism", bad)
            if bad else passing("braiding.mu-star-hom", "mu_M is a *-homomorphism"))

    # tau is a *-homomorphism into braided B_2, and sigma tau = tau kappa
    bad = None
    for a in range(da):
        lhs_v = b.tau.apply(g.star_vec({a: one}))
        rhs_v = star2.apply(b.tau.cols[a])
        if lhs_v != rhs_v:
            bad = {"group_basis": g.space.labels[a], "side": "star"}
            break
    if bad is None:
        for a in range(da):
            for c in range(da):
                lhs_v = b.tau.apply(g.algebra.mul_basis(a, c))
                rhs_v = braid.mult2(b.tau.cols[a], b.tau.cols[c])
                if lhs_v != rhs_v:
                    bad = {"basis_pair": [g.space.labels[a], g.space.labels[c]],
                           "side": "mult"}
                    break
            if bad:
                break
    rep.add(failing("braiding.tau-star-hom", "tau is a *-homomorphism", bad)
            if bad else passing("braiding.tau-star-hom", "tau is a *-homomorphism"))

    rep.add(map_equality_record("braiding.sigma-tau", "sigma tau = tau kappa",
                                braid.forward.compose(b.tau),
                                b.tau.compose(g.antipode), witness_space=b2.space))

    # aP-funct on A (x) B -> B_3
    ab = b.mixed_space("AB")
    lhs_cols = []
    rhs_cols = []
    comp = s12.compose(s23)
    for a in range(da):
        for i in range(total.dim):
            base: Vec = {}
            for x, y, ct in b.tau_legs[a]:
                viadd(base, ct, {b3.flat_index((x, y, i)): one})
            lhs_cols.append(comp.apply(b3.project(base)))
            acc: Vec = {}
            for x, y, ct in b.tau_legs[a]:
                viadd(acc, ct, {b3.flat_index((i, x, y)): one})
            rhs_cols.append(b3.project(acc))
    lhs = LinearMap(ab.space, b3.space, lhs_cols, field)
    rhs = LinearMap(ab.space, b3.space, rhs_cols, field)
    rep.add(map_equality_record("braiding.aP-funct", "aP-funct", lhs, rhs,
                                witness_space=b3.space))

    # F-funct: (sigma (x) id)(id (x) chi)(F (x) id) = (id (x) F) sigma on B_2
    bba = b.mixed_space("BBA")

    def lhs_terms(t):
        i, j = t
        for k, c, cf in b.f_legs[i]:
            for (x, y), cs in braid._sigma_pair(k, j):
                yield (x, y, c), cf * cs

    lhs = term_map(b2, bba, lhs_terms)

    def idf_terms(t):
        i, j = t
        for k, c, cf in b.f_legs[j]:
            yield (i, k, c), cf

    idf = term_map(b2, bba, idf_terms)
    rhs = idf.compose(braid.forward)
    rep.add(map_equality_record("braiding.F-funct", "F-funct", lhs, rhs,
                                witness_space=bba.space))
    return rep


def braided_structure(b: Bundle, n: int, braid: BraidOperator | None = None):
    """Braided algebra structure on B_n; returns (mult, star, report).

    For n = 2 the product is the explicit sigma formula and X is verified to
    be a *-isomorphism onto B (x) A; for n >= 3 the product is transported
    along X_{n-1} and the braid-word star is verified to be an involutive
    antiautomorphism.
    """
    braid = braid or sigma_m(b)
    rep = ValidationReport()
    field = b.field
    one = field.one
    bn = b.b_space(n)
    mult = braid.mult_n(n)
    star = braid.star_n(n)
    unit_flat: Vec = {}
    from itertools import product as iproduct
    units = [b.total.unit] * n
    terms = [((), one)]
    for uvec in units:
        terms = [(tup + (k,), c * ck) for tup, c in terms for k, ck in uvec.items()]
    for tup, c in terms:
        viadd(unit_flat, c, {bn.flat_index(tup): one})
    unit = bn.project(unit_flat)

    bad = None
    for i in range(bn.dim):
        v = {i: one}
        if mult(unit, v) != v or mult(v, unit) != v:
            bad = {"basis_index": i}
            break
    rep.add(failing(f"braided{n}.unit", "unit of prodBB", bad) if bad
            else passing(f"braided{n}.unit", "unit of prodBB"))

    bad = None
    for i in range(bn.dim):
        v = {i: one}
        if star.apply(star.apply(v)) != v:
            bad = {"basis_index": i}
            break
    rep.add(failing(f"braided{n}.star-invol", "star involutive", bad) if bad
            else passing(f"braided{n}.star-invol", "star involutive"))

    bad = None
    for i in range(bn.dim):
        for j in range(bn.dim):
            lhs = star.apply(mult({i: one}, {j: one}))
            rhs = mult(star.apply({j: one}), star.apply({i: one}))
            if lhs != rhs:
                bad = {"basis_pair": [i, j]}
                break
        if bad:
            break
    rep.add(failing(f"braided{n}.star-antimult", "(uv)* = v*u*", bad) if bad
            else passing(f"braided{n}.star-antimult", "(uv)* = v*u*"))

    if n == 2:
        # X is a *-isomorphism onto B (x) A
        ba = b.mixed_space("BA")
        total, g = b.total, b.group
        bad = None
        for i in range(bn.dim):
            for j in range(bn.dim):
                lhs = b.X.apply(mult({i: one}, {j: one}))
                acc: Vec = {}
                for fu, cu in ba.lift(b.X.apply({i: one})).items():
                    u, au = ba.tuples[fu]
                    for fv, cv in ba.lift(b.X.apply({j: one})).items():
                        v, av = ba.tuples[fv]
                        for k, ck in total.mul_basis(u, v).items():
                            for a, ca in g.algebra.mul_basis(au, av).items():
                                viadd(acc, cu * cv * ck * ca,
                                      {ba.flat_index((k, a)): one})
                if lhs != ba.project(acc):
                    bad = {"basis_pair": [i, j]}
                    break
            if bad:
                break
        rep.add(failing("braided2.X-mult", "X multiplicative", bad) if bad
                else passing("braided2.X-mult", "X multiplicative"))

        def ba_star_terms(t):
            i, a = t
            for k, ck in total.star.cols[i].items():
                for c, cc in g.algebra.star.cols[a].items():
                    yield (k, c), ck * cc

        ba_star = term_map(ba, ba, ba_star_terms, antilinear=True)
        rep.add(map_equality_record("braided2.X-star", "X hermitian",
                                    b.X.compose(star), ba_star.compose(b.X),
                                    witness_space=ba.space))
    return mult, star, rep


def classicality_report(b: Bundle, braid: BraidOperator | None = None):
    """Prop 4.1 four-way dichotomy; returns (classical: bool, report).

    All four sub-tests are evaluated independently; disagreement raises
    EquivalenceViolation since the equivalence is a theorem.
    """
    braid = braid or sigma_m(b)
    rep = ValidationReport()
    field = b.field
    one = field.one
    g = b.group
    b2, b3 = b.b2, b.b_space(3)
    total = b.total
    results = {}
    witnesses = {}

    wit = g.is_commutative()
    results["i"] = wit is None
    if wit is not None:
        i, j = wit
        witnesses["i"] = {
            "basis_pair": [g.space.labels[i], g.space.labels[j]],
            "ab": g.space.render(g.algebra.mul_basis(i, j)),
            "ba": g.space.render(g.algebra.mul_basis(j, i)),
        }

    # (ii) F-wrong
    bba = b.mixed_space("BBA")

    def fid_chi_terms(t):
        i, j = t
        for k, c, cf in b.f_legs[i]:
            yield (k, j, c), cf

    fid_chi = term_map(b2, bba, fid_chi_terms)
    lhs = fid_chi.compose(braid.forward)

    def idf_terms(t):
        i, j = t
        for k, c, cf in b.f_legs[j]:
            yield (i, k, c), cf

    idf = term_map(b2, bba, idf_terms)

    def s12_terms(t):
        i, j, a = t
        for (x, y), cs in braid._sigma_pair(i, j):
            yield (x, y, a), cs

    s12_bba = term_map(bba, bba, s12_terms)
    rhs = s12_bba.compose(idf)
    dj = lhs.first_difference(rhs)
    results["ii"] = dj is None
    if dj is not None:
        witnesses["ii"] = {"basis_index": dj,
                           "lhs": bba.render(lhs.cols[dj]),
                           "rhs": bba.render(rhs.cols[dj])}

    # (iii) aP-wrong on B (x) A -> B_3
    da = g.dim
    lhs_cols = []
    rhs_cols = []
    s12 = braid.at(3, 0)
    s23 = braid.at(3, 1)
    comp = s23.compose(s12)
    for i in range(total.dim):
        for a in range(da):
            acc: Vec = {}
            for x, y, ct in b.tau_legs[a]:
                viadd(acc, ct, {b3.flat_index((x, y, i)): one})
            lhs_cols.append(b3.project(acc))
            base: Vec = {}
            for x, y, ct in b.tau_legs[a]:
                viadd(base, ct, {b3.flat_index((i, x, y)): one})
            rhs_cols.append(comp.apply(b3.project(base)))
    dj = None
    for k, (lc, rc) in enumerate(zip(lhs_cols, rhs_cols)):
        if lc != rc:
            dj = k
            break
    results["iii"] = dj is None
    if dj is not None:
        witnesses["iii"] = {"basis_index": dj,
                            "lhs": b3.render(lhs_cols[dj]),
                            "rhs": b3.render(rhs_cols[dj])}

    # (iv) sigma involutive
    sq = braid.forward.compose(braid.forward)
    ident = LinearMap.identity(b2.space, field)
    dj = sq.first_difference(ident)
    results["iv"] = dj is None
    if dj is not None:
        witnesses["iv"] = {"basis_index": dj,
                           "basis_label": b2.space.labels[dj],
                           "sigma^2": b2.render(sq.cols[dj])}

    vals = set(results.values())
    if len(vals) != 1:
        raise EquivalenceViolation(
            f"classicality sub-tests disagree: {results} (library bug trap)")
    classical = results["i"]
    for key, label in (("i", "A commutative"), ("ii", "F-wrong"),
                       ("iii", "aP-wrong"), ("iv", "sigma involutive")):
        status = "pass"
        note = f"holds: {results[key]}"
        rec = CheckRecord(f"classicality.{key}", label, status, note=note,
                          witness=witnesses.get(key))
        rep.add(rec)
    rep.add(passing("classicality.agreement", "four-way equivalence",
                    note=f"classical = {classical}"))
    return classical, rep
