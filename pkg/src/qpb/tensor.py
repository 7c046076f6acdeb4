"""Balanced tensor products of based factor spaces.

A TProd is a tensor product of graded factor spaces, truncated to a total
degree budget, quotiented by middle-linearity relations x.f (x) y - x (x) f.y
over a coefficient algebra (the base algebra V in degree zero, the base
calculus Omega(M) in the graded setting).  Balancing happens on an adjacent
pair exactly when the left factor carries a right action and the right factor
a left action; factors without actions (e.g. trailing Hopf-algebra legs) stay
free.

Operators between TProds are assembled per canonical basis element by lifting
to the flat tensor basis, rewriting tuples, and projecting back; the caller's
rewrite rule must descend to the quotient (all rules used here are module maps
in the balanced slots).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .cyclotomic import CycloField, Scalar
from .errors import DegreeBudget, InputError
from .linalg import BasedSpace, LinearMap, QuotientSpace, Vec, viadd


@dataclass
class Factor:
    """One tensor slot: a based space with degrees and optional left/right
    actions of the coefficient algebra basis."""
    space: BasedSpace
    degrees: tuple
    lact: list | None = None  # list[LinearMap], one per coefficient basis element
    ract: list | None = None

    @classmethod
    def ungraded(cls, space: BasedSpace, lact=None, ract=None) -> "Factor":
        return cls(space, (0,) * space.dim, lact, ract)


class TProd:
    def __init__(self, field: CycloField, factors, coeff_degrees=None, budget=None,
                 name: str = ""):
        self.field = field
        self.factors = tuple(factors)
        self.coeff_degrees = coeff_degrees
        self.budget = budget
        self.name = name
        tuples = []
        ranges = [range(f.space.dim) for f in self.factors]
        degs = [f.degrees for f in self.factors]
        for t in iproduct(*ranges):
            if budget is not None and sum(d[i] for d, i in zip(degs, t)) > budget:
                continue
            tuples.append(t)
        self.tuples = tuples
        self.tuple_index = {t: i for i, t in enumerate(tuples)}
        labels = tuple("|".join(f.space.labels[i] for f, i in zip(self.factors, t))
                       for t in tuples)
        self.flat = BasedSpace(labels)
        relations = self._relations()
        self.quotient = QuotientSpace(self.flat, relations, field)
        self.space = self.quotient.space

    # -- construction ------------------------------------------------------

    def _relations(self):
        out = []
        nf = len(self.factors)
        for p in range(nf - 1):
            left, right = self.factors[p], self.factors[p + 1]
            if left.ract is None or right.lact is None:
                continue
            ncoeff = len(left.ract)
            if len(right.lact) != ncoeff:
                raise InputError("factor actions disagree on coefficient dimension")
            for c in range(ncoeff):
                cdeg = 0 if self.coeff_degrees is None else self.coeff_degrees[c]
                r_cols = left.ract[c].cols
                l_cols = right.lact[c].cols
                for t in self.tuples:
                    if self.budget is not None and self.degree(t) + cdeg > self.budget:
                        continue
                    rel: Vec = {}
                    for k, s in r_cols[t[p]].items():
                        t2 = t[:p] + (k,) + t[p + 1:]
                        viadd(rel, s, {self.tuple_index[t2]: self.field.one})
                    for k, s in l_cols[t[p + 1]].items():
                        t2 = t[:p + 1] + (k,) + t[p + 2:]
                        viadd(rel, -s, {self.tuple_index[t2]: self.field.one})
                    if rel:
                        out.append(rel)
        return out

    # -- basic queries -------------------------------------------------------

    @property
    def dim(self) -> int:
        return self.space.dim

    def degree(self, t) -> int:
        return sum(f.degrees[i] for f, i in zip(self.factors, t))

    def basis_degree(self, b: int) -> int:
        """Degree of a canonical basis element (its representative tuple)."""
        return self.degree(self.tuples[self.quotient.keep[b]])

    def degrees(self):
        return [self.basis_degree(b) for b in range(self.dim)]

    def project(self, flat: Vec) -> Vec:
        return self.quotient.project(flat)

    def lift(self, v: Vec) -> Vec:
        return self.quotient.lift(v)

    def flat_index(self, t) -> int:
        idx = self.tuple_index.get(t)
        if idx is None:
            raise DegreeBudget(f"tuple {t} exceeds the degree budget in {self.name or 'TProd'}")
        return idx

    def flat_vec(self, t) -> Vec:
        return {self.flat_index(t): self.field.one}

    def project_tuple(self, t) -> Vec:
        return self.project(self.flat_vec(t))

    def render(self, v: Vec) -> str:
        return self.space.render(v)

    def basis_vec(self, b: int) -> Vec:
        return {b: self.field.one}


def term_map(src: TProd, dst: TProd, fn, antilinear: bool = False,
             field: CycloField | None = None) -> LinearMap:
    """Build a map src.space -> dst.space from a flat term rewriter.

    ``fn(t)`` receives a source tuple and yields (tuple, Scalar) pairs over
    dst; the rewriter must descend to the balanced quotient.
    """
    field = field or src.field
    cols = []
    for b in range(src.dim):
        flat = src.lift(src.basis_vec(b))
        out: Vec = {}
        for fi, c in flat.items():
            if antilinear:
                c = c.conj()
            for t2, c2 in fn(src.tuples[fi]):
                if c2:
                    viadd(out, c * c2, {dst.flat_index(t2): field.one})
        cols.append(dst.project(out))
    return LinearMap(src.space, dst.space, cols, field, antilinear)


def block_terms(sub: TProd, subtuple, m: LinearMap):
    """Apply a map defined on a sub-TProd to one flat subtuple: project the
    subtuple, apply, lift back to flat subtuples.  Yields (subtuple, Scalar)."""
    v = m.apply(sub.project_tuple(subtuple))
    flat = sub.lift(v)
    for fi, c in flat.items():
        yield sub.tuples[fi], c


def subspace_in(tp: TProd, vectors) -> list[Vec]:
    """Canonical basis of the span of the given quotient vectors."""
    from .linalg import span_basis
    return span_basis(vectors)
