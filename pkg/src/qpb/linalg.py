"""Based linear algebra over a cyclotomic field.

Vectors are sparse dicts {index: Scalar} with no explicit zeros.  Linear maps
store sparse columns.  All eliminations use reduced row echelon form with
lexicographic pivot order, so every derived basis (kernels, spans, quotient
bases, solutions) is canonical and byte-reproducible.
"""

from __future__ import annotations

import os

from .cyclotomic import CycloField, Scalar
from .errors import InputError

Vec = dict  # {int: Scalar}

# every successful solve is re-checked by substitution when set
DEBUG_SOLVE = bool(os.environ.get("QPB_DEBUG_SOLVE"))


# -- sparse vector helpers ---------------------------------------------------

def vadd(a: Vec, b: Vec) -> Vec:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k)
        if s is None:
            out[k] = v
        else:
            s = s + v
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def vsub(a: Vec, b: Vec) -> Vec:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k)
        if s is None:
            out[k] = -v
        else:
            s = s - v
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def viadd(acc: Vec, c: Scalar, b: Vec) -> None:
    """acc += c*b, in place."""
    if not c:
        return
    for k, v in b.items():
        s = acc.get(k)
        if s is None:
            acc[k] = c * v
        else:
            s = s + c * v
            if s:
                acc[k] = s
            else:
                del acc[k]


def vscale(c: Scalar, a: Vec) -> Vec:
    if not c:
        return {}
    return {k: c * v for k, v in a.items()}


def vneg(a: Vec) -> Vec:
    return {k: -v for k, v in a.items()}


def vconj(a: Vec) -> Vec:
    return {k: v.conj() for k, v in a.items()}


def vequal(a: Vec, b: Vec) -> bool:
    return a == b


class BasedSpace:
    """A finite-dimensional space with an ordered basis of unique labels."""

    __slots__ = ("labels", "dim", "_index")

    def __init__(self, labels):
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise InputError("basis labels must be unique")
        self.labels = labels
        self.dim = len(labels)
        self._index = {lab: i for i, lab in enumerate(labels)}

    def index(self, label: str) -> int:
        return self._index[label]

    def basis_vec(self, i: int, field: CycloField) -> Vec:
        return {i: field.one}

    def render(self, v: Vec) -> str:
        """Human/report form '1/2*label+...' with indices ascending; '0' if empty."""
        if not v:
            return "0"
        parts = []
        for k in sorted(v):
            parts.append(f"{v[k].literal()}*{self.labels[k]}")
        return " + ".join(parts)

    def __eq__(self, other):
        return isinstance(other, BasedSpace) and self.labels == other.labels

    def __repr__(self):
        return f"BasedSpace(dim={self.dim})"


def tensor_labels(a: BasedSpace, b: BasedSpace) -> BasedSpace:
    return BasedSpace(tuple(f"{x}(x){y}" for x in a.labels for y in b.labels))


# -- row echelon --------------------------------------------------------------

class Echelon:
    """Incremental reduced row echelon form of a growing set of sparse rows.

    Pivot columns are chosen as the smallest index of each inserted residual,
    and all stored rows stay fully reduced against each other; the row set is
    therefore the canonical RREF basis of the span regardless of insertion
    order.
    """

    def __init__(self):
        self.rows: dict[int, Vec] = {}  # pivot column -> row with leading 1

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def reduce(self, v: Vec) -> Vec:
        """Residual of v after elimination against the stored rows.

        Every stored row has its minimum at its pivot, so eliminating at the
        current minimum only introduces larger indices; the minimum of the
        work vector increases monotonically and the loop terminates.
        """
        v = dict(v)
        out: Vec = {}
        while v:
            p = min(v)
            c = v.pop(p)
            row = self.rows.get(p)
            if row is None:
                out[p] = c
                continue
            for kk, vv in row.items():
                if kk == p:
                    continue
                s = v.get(kk)
                s = -c * vv if s is None else s - c * vv
                if s:
                    v[kk] = s
                elif kk in v:
                    del v[kk]
        return out

    def add(self, v: Vec) -> bool:
        """Insert v's class; True if it enlarged the span."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        inv = r[p].inverse()
        r = {k: inv * c for k, c in r.items()}
        # back-substitute into existing rows
        for q, row in self.rows.items():
            c = row.get(p)
            if c is not None:
                for kk, vv in r.items():
                    if kk == p:
                        continue
                    s = row.get(kk)
                    s = -c * vv if s is None else s - c * vv
                    if s:
                        row[kk] = s
                    elif kk in row:
                        del row[kk]
                del row[p]
        self.rows[p] = r
        return True

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    def basis(self) -> list[Vec]:
        """Canonical RREF basis, ordered by pivot column."""
        return [dict(self.rows[p]) for p in sorted(self.rows)]


def span_basis(vectors) -> list[Vec]:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.basis()


def spans_equal(vs, ws) -> bool:
    e1 = Echelon()
    for v in vs:
        e1.add(v)
    e2 = Echelon()
    for w in ws:
        e2.add(w)
    if e1.rank != e2.rank:
        return False
    return all(e1.contains(w) for w in e2.basis())


def intersect_spans(us, ws) -> list[Vec]:
    """Canonical basis of span(us) & span(ws)."""
    us = span_basis(us)
    ws = span_basis(ws)
    if not us or not ws:
        return []
    # nullspace of [U^T | -W^T] on stacked coefficients
    cols = [dict(u) for u in us] + [vneg(w) for w in ws]
    field = _field_of(cols)
    ker = nullspace_of_columns(cols, field)
    out = []
    for coeffs in ker:
        v: Vec = {}
        for j, c in coeffs.items():
            if j < len(us):
                viadd(v, c, us[j])
        if v:
            out.append(v)
    return span_basis(out)


def _field_of(vecs) -> CycloField:
    for v in vecs:
        for c in v.values():
            return c.field
    raise InputError("cannot infer field from all-zero data")


def nullspace_of_columns(cols: list[Vec], field: CycloField) -> list[Vec]:
    """Kernel basis of the map with the given columns (domain dim = len(cols)).

    Deterministic: RREF over the equations, free variables in ascending order,
    each kernel vector has a 1 at its free index.
    """
    # equations indexed by row: row r -> {j: cols[j][r]}
    rows: dict[int, Vec] = {}
    for j, col in enumerate(cols):
        for r, c in col.items():
            rows.setdefault(r, {})[j] = c
    ech = Echelon()
    for r in sorted(rows):
        ech.add(rows[r])
    pivset = set(ech.rows)
    out = []
    for f in range(len(cols)):
        if f in pivset:
            continue
        v = {f: field.one}
        for p, row in ech.rows.items():
            c = row.get(f)
            if c is not None:
                v[p] = -c
        out.append({k: c for k, c in v.items() if c})
    return out


class LinearMap:
    """A based linear (or antilinear) map stored by sparse columns.

    Antilinear maps conjugate input coefficients: T(c*v) = conj(c)*T(v).
    """

    __slots__ = ("domain", "codomain", "cols", "antilinear", "field", "_solver")

    def __init__(self, domain: BasedSpace, codomain: BasedSpace, cols, field: CycloField,
                 antilinear: bool = False):
        if len(cols) != domain.dim:
            raise InputError("column count does not match domain dimension")
        self.domain = domain
        self.codomain = codomain
        self.cols = [dict(c) for c in cols]
        self.antilinear = antilinear
        self.field = field

    # -- constructors ---------------------------------------------------

    @classmethod
    def identity(cls, space: BasedSpace, field: CycloField) -> "LinearMap":
        return cls(space, space, [{i: field.one} for i in range(space.dim)], field)

    @classmethod
    def zero(cls, domain: BasedSpace, codomain: BasedSpace, field: CycloField) -> "LinearMap":
        return cls(domain, codomain, [{} for _ in range(domain.dim)], field)

    @classmethod
    def from_function(cls, domain: BasedSpace, codomain: BasedSpace, field: CycloField, fn,
                      antilinear: bool = False) -> "LinearMap":
        return cls(domain, codomain, [fn(i) for i in range(domain.dim)], field, antilinear)

    # -- application / composition ---------------------------------------

    def apply(self, v: Vec) -> Vec:
        out: Vec = {}
        for j, c in v.items():
            if self.antilinear:
                c = c.conj()
            viadd(out, c, self.cols[j])
        return out

    def __call__(self, v: Vec) -> Vec:
        return self.apply(v)

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other."""
        if other.codomain.dim != self.domain.dim:
            raise InputError("composition dimension mismatch")
        cols = [self.apply(c) for c in other.cols]
        return LinearMap(other.domain, self.codomain, cols, self.field,
                         self.antilinear ^ other.antilinear)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        return self.compose(other)

    def add(self, other: "LinearMap") -> "LinearMap":
        if self.antilinear != other.antilinear:
            raise InputError("cannot add linear and antilinear maps")
        return LinearMap(self.domain, self.codomain,
                         [vadd(a, b) for a, b in zip(self.cols, other.cols)],
                         self.field, self.antilinear)

    def sub(self, other: "LinearMap") -> "LinearMap":
        if self.antilinear != other.antilinear:
            raise InputError("cannot subtract linear and antilinear maps")
        return LinearMap(self.domain, self.codomain,
                         [vsub(a, b) for a, b in zip(self.cols, other.cols)],
                         self.field, self.antilinear)

    def scale(self, c: Scalar) -> "LinearMap":
        return LinearMap(self.domain, self.codomain, [vscale(c, col) for col in self.cols],
                         self.field, self.antilinear)

    def tensor(self, other: "LinearMap") -> "LinearMap":
        if self.antilinear != other.antilinear:
            raise InputError("tensor factors must have equal antilinearity")
        dom = tensor_labels(self.domain, other.domain)
        cod = tensor_labels(self.codomain, other.codomain)
        bd = other.domain.dim
        bc = other.codomain.dim
        cols = []
        for i in range(self.domain.dim):
            ci = self.cols[i]
            for j in range(bd):
                cj = other.cols[j]
                col: Vec = {}
                for r1, c1 in ci.items():
                    for r2, c2 in cj.items():
                        col[r1 * bc + r2] = c1 * c2
                cols.append(col)
        return LinearMap(dom, cod, cols, self.field, self.antilinear)

    # -- solving -----------------------------------------------------------

    def solver(self) -> "PreparedSolve":
        s = getattr(self, "_solver", None)
        if s is None:
            s = PreparedSolve(self.cols, self.codomain.dim, self.field)
            self._solver = s
        return s

    def solve(self, b: Vec) -> Vec | None:
        """Deterministic preimage of b (free variables zero), or None."""
        sol = self.solver().solve(b)
        if DEBUG_SOLVE and sol is not None:
            check: Vec = {}
            for j, c in sol.items():
                viadd(check, c, self.cols[j])
            assert check == b, "solve substitution check failed"
        return sol

    def nullspace(self) -> list[Vec]:
        return nullspace_of_columns(self.cols, self.field)

    def rank(self) -> int:
        ech = Echelon()
        for c in self.cols:
            ech.add(c)
        return ech.rank

    def image_basis(self) -> list[Vec]:
        return span_basis(self.cols)

    def is_bijective(self) -> bool:
        return (self.domain.dim == self.codomain.dim
                and self.rank() == self.domain.dim)

    def inverse(self) -> "LinearMap":
        if self.domain.dim != self.codomain.dim:
            raise InputError("inverse of non-square map")
        solver = self.solver()
        if solver.rank != self.domain.dim:
            raise InputError("map is not invertible")
        cols = []
        for i in range(self.codomain.dim):
            sol = solver.solve({i: self.field.one})
            if sol is None:
                raise InputError("map is not invertible")
            cols.append(sol)
        inv = LinearMap(self.codomain, self.domain, cols, self.field, self.antilinear)
        if self.antilinear:
            inv = LinearMap(self.codomain, self.domain,
                            [vconj(c) for c in cols], self.field, True)
        return inv

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.antilinear == other.antilinear
                and self.domain.dim == other.domain.dim
                and self.codomain.dim == other.codomain.dim
                and self.cols == other.cols)

    def first_difference(self, other: "LinearMap"):
        """Index of the first differing column, or None if equal."""
        for j, (a, b) in enumerate(zip(self.cols, other.cols)):
            if a != b:
                return j
        return None

    def __repr__(self):
        kind = "antilinear" if self.antilinear else "linear"
        return f"LinearMap({self.domain.dim}->{self.codomain.dim}, {kind})"


class PreparedSolve:
    """One elimination, many right-hand sides.

    Rows [A | I] are fully reduced once; afterwards each solve(b) reads the
    particular solution (free variables zero) off the tracked identity part,
    and rows whose pivot fell into the tracking region are consistency
    constraints on b.
    """

    def __init__(self, cols: list[Vec], ncod: int, field: CycloField):
        self.n = len(cols)
        self.ncod = ncod
        self.field = field
        rows: dict[int, Vec] = {}
        for j, col in enumerate(cols):
            for r, c in col.items():
                rows.setdefault(r, {})[j] = c
        ech = Echelon()
        n = self.n
        for r in range(ncod):
            row = dict(rows.get(r, {}))
            row[n + r] = field.one
            ech.add(row)
        self.transform: dict[int, Vec] = {}   # pivot var -> {r: coeff}
        self.constraints: list[Vec] = []      # {r: coeff}, must annihilate b
        self.pivots = []
        for p, row in ech.rows.items():
            if p < n:
                self.pivots.append(p)
                self.transform[p] = {k - n: v for k, v in row.items() if k >= n}
            else:
                self.constraints.append({k - n: v for k, v in row.items()})
        self.rank = len(self.pivots)

    def solve(self, b: Vec) -> Vec | None:
        for con in self.constraints:
            acc = None
            for r, c in con.items():
                v = b.get(r)
                if v:
                    acc = c * v if acc is None else acc + c * v
            if acc:
                return None
        sol: Vec = {}
        for p, tr in self.transform.items():
            acc = None
            for r, c in tr.items():
                v = b.get(r)
                if v:
                    acc = c * v if acc is None else acc + c * v
            if acc:
                sol[p] = acc
        return sol


def solve_columns(cols: list[Vec], b: Vec, field: CycloField,
                  ncod: int | None = None) -> Vec | None:
    """Solve sum_j x_j cols[j] = b; lexicographically smallest pivot choice,
    free variables zero; None when inconsistent."""
    if ncod is None:
        ncod = 0
        for col in cols:
            for r in col:
                ncod = max(ncod, r + 1)
        for r in b:
            ncod = max(ncod, r + 1)
    return PreparedSolve(cols, ncod, field).solve(b)


class QuotientSpace:
    """ambient / span(relations), with canonical projection and section.

    The quotient basis consists of the ambient basis classes at the non-pivot
    indices of the RREF of the relations (lexicographic pivot order); the
    section maps each class to its representative ambient basis vector.
    """

    def __init__(self, ambient: BasedSpace, relations, field: CycloField):
        self.ambient = ambient
        self.field = field
        ech = Echelon()
        for r in relations:
            ech.add(r)
        self.relations = ech
        piv = set(ech.rows)
        keep = [i for i in range(ambient.dim) if i not in piv]
        self.keep = keep
        self._pos = {k: idx for idx, k in enumerate(keep)}
        self.space = BasedSpace(tuple(ambient.labels[i] for i in keep))
        proj_cols = []
        for i in range(ambient.dim):
            if i in piv:
                row = ech.rows[i]
                col = {self._pos[k]: -c for k, c in row.items() if k != i}
            else:
                col = {self._pos[i]: field.one}
            proj_cols.append(col)
        self.projection = LinearMap(ambient, self.space, proj_cols, field)
        sec_cols = [{k: field.one} for k in keep]
        self.section = LinearMap(self.space, ambient, sec_cols, field)

    @property
    def dim(self) -> int:
        return self.space.dim

    def project(self, v: Vec) -> Vec:
        return self.projection.apply(v)

    def lift(self, v: Vec) -> Vec:
        return self.section.apply(v)

    def verify(self) -> bool:
        """projection o section = id and kernel(projection) = span(relations)."""
        comp = self.projection.compose(self.section)
        if comp != LinearMap.identity(self.space, self.field):
            return False
        ker = self.projection.nullspace()
        if len(ker) != self.relations.rank:
            return False
        return all(self.relations.contains(v) for v in ker)


def quotient_by(ambient: BasedSpace, relations, field: CycloField) -> QuotientSpace:
    for r in relations:
        for k in r:
            if not 0 <= k < ambient.dim:
                raise InputError("relation vector outside ambient space")
    return QuotientSpace(ambient, relations, field)


def solve_linear(m: LinearMap, target: Vec) -> Vec | None:
    """Spec-level entry point; see LinearMap.solve."""
    for k in target:
        if not 0 <= k < m.codomain.dim:
            raise InputError("target vector outside codomain")
    return m.solve(target)


def graded_twist(v: Vec, dim_a: int, dim_b: int, deg_a, deg_b) -> Vec:
    """chi(u (x) w) = (-1)^{deg u * deg w} w (x) u on a two-factor tensor.

    Degrees are per-basis lists for the two factors; on degree-0 data this is
    the plain transposition.
    """
    if deg_a is None or deg_b is None:
        raise InputError("graded twist needs degrees on both factors")
    out: Vec = {}
    for idx, c in v.items():
        i, j = divmod(idx, dim_b)
        if (deg_a[i] * deg_b[j]) % 2:
            c = -c
        out[j * dim_a + i] = c
    return out


def twist_map(a: BasedSpace, b: BasedSpace, deg_a, deg_b, field: CycloField) -> LinearMap:
    dom = tensor_labels(a, b)
    cod = tensor_labels(b, a)
    cols = []
    for i in range(a.dim):
        for j in range(b.dim):
            sign = -field.one if (deg_a[i] * deg_b[j]) % 2 else field.one
            cols.append({j * a.dim + i: sign})
    return LinearMap(dom, cod, cols, field)
