"""Bases of Hom(X, Y) between finitely presented graded modules.

Four routes to the same vector space, given minimal presentations
M: A[R] -> A[G] of X and N: A[R'] -> A[G'] of Y:

* hom_direct      solves Q M = N P over all degree-admissible entries and
                  quotients by null-homotopies (columns of N placed into
                  the generator blocks they can hit).
* hom_restricted  restricts Q to the distinguished generator subsets of Y
                  and P to the distinguished relation subsets of the first
                  syzygy of Y; lifts are then unique and no homotopy
                  quotient is needed.
* hom_mixed       restricts Q only; P stays free; homotopy quotient as in
                  the direct route.
* hom_exact       assembles the block matrix with (r, g) block
                  M_{g,r} * (structure map of Y from deg g to deg r) and
                  reads Hom off its nullspace.

The three equation-based routes share one sparse linear-system builder
that differs only in the variable-admissibility masks, so their reported
system statistics are directly comparable.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .errors import DimensionMismatchError, FieldMismatchError, GradingError
from .graded import (
    ColumnSpan,
    GradedMatrix,
    _axpy,
    column_reduce,
    deg_leq,
    deg_sub,
    nullspace_of_columns,
    submatrix_at_most,
    validate_grading,
)
from .localalg import CokernelCache, restriction_system, structure_map
from .presentations import Presentation, kernel, minimize


@dataclass(frozen=True)
class SolveStats:
    """Shape of the linear system an algorithm solved, plus wall time.

    `solution_dim` counts presentation-morphism solutions before any
    homotopy quotient; `homotopy_killed` how many independent directions
    the quotient removed.
    """

    algorithm: str
    variables: int
    equations: int
    entries: int
    solve_seconds: float
    solution_dim: int
    homotopy_killed: int = 0

    @property
    def avg_entries(self):
        return self.entries / self.equations if self.equations else 0.0


@dataclass(frozen=True)
class HomBasis:
    """Ordered basis of Hom(X, Y) as graded matrices in K^{G' x G}."""

    elements: tuple
    coords: str
    algorithm: str
    stats: SolveStats

    @property
    def dim(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def _require_minimal(pres, name):
    if not isinstance(pres, Presentation):
        raise TypeError(f"{name} must be a Presentation")
    if not pres.minimal:
        raise ValueError(
            f"{name} must be a minimal presentation; call minimize() first"
        )


def _check_pair(xp, yp):
    _require_minimal(xp, "domain")
    _require_minimal(yp, "target")
    if xp.field != yp.field:
        raise FieldMismatchError("presentations over different fields")
    dx, dy = xp.matrix.dim, yp.matrix.dim
    if dx and dy and dx != dy:
        raise DimensionMismatchError("presentations graded over different posets")


class LinearSystem:
    """The sparse system Q M = N P with pluggable admissibility masks.

    Variables are the admissible entries of Q and P; there is one
    equation per pair (g', r) with deg(g') <= deg(r).  Masks map a
    generator (relation) index of X to the tuple of allowed Y-side row
    indices; `None` means every degree-admissible index is allowed.
    """

    def __init__(self, xp, yp, q_mask=None, p_mask=None):
        m, n = xp.matrix, yp.matrix
        self.field = m.field
        self.m = m
        self.n = n
        p = self.field.p

        self.q_vars = []
        q_pos = {}
        for g, gdeg in enumerate(m.rows):
            allowed = (
                q_mask[g]
                if q_mask is not None
                else [
                    gp
                    for gp, gpdeg in enumerate(n.rows)
                    if deg_leq(gpdeg, gdeg)
                ]
            )
            for gp in allowed:
                q_pos[(gp, g)] = len(self.q_vars)
                self.q_vars.append((gp, g))
        self.p_vars = []
        p_pos = {}
        for r, rdeg in enumerate(m.cols):
            allowed = (
                p_mask[r]
                if p_mask is not None
                else [
                    rp
                    for rp, rpdeg in enumerate(n.cols)
                    if deg_leq(rpdeg, rdeg)
                ]
            )
            for rp in allowed:
                p_pos[(rp, r)] = len(self.p_vars)
                self.p_vars.append((rp, r))

        self.equations = []
        eq_pos = {}
        for r, rdeg in enumerate(m.cols):
            for gp, gpdeg in enumerate(n.rows):
                if deg_leq(gpdeg, rdeg):
                    eq_pos[(gp, r)] = len(self.equations)
                    self.equations.append((gp, r))

        nq = len(self.q_vars)
        columns = [[] for _ in range(nq + len(self.p_vars))]
        # Q-variable (g', g) hits equation (g', r) with coefficient M_{g,r}.
        for r in range(m.ncols):
            for g, mv in m.columns[r]:
                for gp, gpdeg in enumerate(n.rows):
                    k = q_pos.get((gp, g))
                    if k is not None and (gp, r) in eq_pos:
                        columns[k].append((eq_pos[(gp, r)], mv))
        # P-variable (r', r) hits equation (g', r) with coefficient -N_{g',r'}.
        for (rp, r), k in p_pos.items():
            for gp, nv in n.columns[rp]:
                eq = eq_pos.get((gp, r))
                if eq is not None:
                    columns[nq + k].append((eq, (-nv) % p))
        self.columns = [tuple(sorted(col)) for col in columns]
        self.entries = sum(len(c) for c in self.columns)

    @property
    def n_variables(self):
        return len(self.q_vars) + len(self.p_vars)

    @property
    def n_equations(self):
        return len(self.equations)

    def solve(self):
        """Basis of the solution space as (Q entries, P entries) dicts."""
        combos = nullspace_of_columns(self.columns, self.field)
        nq = len(self.q_vars)
        solutions = []
        for combo in combos:
            q_entries = {}
            p_entries = {}
            for k, v in combo.items():
                if k < nq:
                    gp, g = self.q_vars[k]
                    q_entries[(gp, g)] = v
                else:
                    rp, r = self.p_vars[k - nq]
                    p_entries[(rp, r)] = v
            solutions.append((q_entries, p_entries))
        return solutions


def _q_matrix(entries, m, n):
    cols = [[] for _ in range(m.nrows)]
    for (gp, g), v in entries.items():
        cols[g].append((gp, v))
    return GradedMatrix(
        m.field,
        n.rows,
        m.rows,
        [tuple(sorted(c)) for c in cols],
        validate=False,
    )


def _flat_index(q_rows, q_cols):
    """Order on the admissible Q entries {(g, g') : deg g' <= deg g}."""
    index = {}
    for g, gdeg in enumerate(q_cols):
        for gp, gpdeg in enumerate(q_rows):
            if deg_leq(gpdeg, gdeg):
                index[(g, gp)] = len(index)
    return index


def _flatten_q(qmat, index):
    col = []
    for g, entries in enumerate(qmat.columns):
        for gp, v in entries:
            col.append((index[(g, gp)], v))
    return tuple(sorted(col))


def _unflatten_q(col, index, q_rows, q_cols, fld):
    rev = {}
    for (g, gp), k in index.items():
        rev[k] = (g, gp)
    cols = [[] for _ in range(len(q_cols))]
    for k, v in col:
        g, gp = rev[k]
        cols[g].append((gp, v))
    return GradedMatrix(
        fld, q_rows, q_cols, [tuple(sorted(c)) for c in cols], validate=False
    )


def _homotopy_columns(n, q_cols, index):
    """Flattened columns of N placed into each generator block they reach.

    One column per pair (r', g) with deg(r') <= deg(g): the g-block holds
    the r'-th column of N, every other block is zero.  These span exactly
    the flattened null-homotopies N H.
    """
    cols = []
    for g, gdeg in enumerate(q_cols):
        for rp, rpdeg in enumerate(n.cols):
            if deg_leq(rpdeg, gdeg):
                col = tuple(
                    (index[(g, gp)], v) for gp, v in n.columns[rp]
                )
                cols.append(tuple(sorted(col)))
    return cols


def homotopy_reduce(qs, yp):
    """Quotient a family of Q matrices by null-homotopies.

    Column-reduces [N-bar | flattened Qs] and returns the surviving,
    reduced Q columns as graded matrices.  Idempotent: the survivors have
    pivots distinct from the homotopy columns and from each other, so a
    second pass returns them unchanged.
    """
    if not qs:
        return []
    n = yp.matrix if isinstance(yp, Presentation) else yp
    fld = n.field
    q_rows, q_cols = qs[0].rows, qs[0].cols
    for q in qs:
        if q.rows != q_rows or q.cols != q_cols:
            raise DimensionMismatchError("Q matrices with mixed decorations")
    index = _flat_index(q_rows, q_cols)
    hcols = _homotopy_columns(n, q_cols, index)
    span = ColumnSpan(fld)
    for col in hcols:
        span.insert(col, source=-1)
    survivors = []
    for j, q in enumerate(qs):
        entry = span.insert(_flatten_q(q, index), source=j)
        if entry is not None:
            survivors.append(
                _unflatten_q(entry.column, index, q_rows, q_cols, fld)
            )
    return survivors


def _column_reduce_qs(qs, fld):
    """Plain column reduction of flattened Q matrices; drops dependents."""
    if not qs:
        return []
    q_rows, q_cols = qs[0].rows, qs[0].cols
    index = _flat_index(q_rows, q_cols)
    span = ColumnSpan(fld)
    out = []
    for j, q in enumerate(qs):
        entry = span.insert(_flatten_q(q, index), source=j)
        if entry is not None:
            out.append(_unflatten_q(entry.column, index, q_rows, q_cols, fld))
    return out


def verify_hom(q, xp, yp, cache=None):
    """Does Q descend to a homomorphism coker M -> coker N?

    True iff every column of Q M lies in the column span of N at the
    corresponding relation degree (so that some P with Q M = N P exists).
    """
    m = xp.matrix if isinstance(xp, Presentation) else xp
    n = yp.matrix if isinstance(yp, Presentation) else yp
    fld = n.field
    p = fld.p
    spans = cache if cache is not None else {}
    for r in range(m.ncols):
        rdeg = m.cols[r]
        product = []
        for g, mv in m.columns[r]:
            product = _axpy(product, q.columns[g], mv, p)
        if not product:
            continue
        span = spans.get(rdeg)
        if span is None:
            sub, row_idx, _ = submatrix_at_most(n, rdeg)
            lifted = [
                tuple((row_idx[i], v) for i, v in col) for col in sub.columns
            ]
            span = column_reduce(lifted, fld)
            spans[rdeg] = span
        if not span.contains(product):
            return False
    return True


def _audit(basis_elements, xp, yp, algorithm):
    cache = {}
    for q in basis_elements:
        if not validate_grading(q):
            raise GradingError(
                f"{algorithm}: returned matrix violates the grading"
            )
        if not verify_hom(q, xp, yp, cache):
            raise GradingError(
                f"{algorithm}: returned matrix fails the homomorphism test"
            )


def _free_domain_basis(xp, yp, cache):
    """Hom(free X, Y): one basis element per generator g and per element
    of the distinguished subset of Y at deg(g)."""
    m, n = xp.matrix, yp.matrix
    elements = []
    for g, gdeg in enumerate(m.rows):
        for gp in cache.at(gdeg).subset:
            elements.append(
                GradedMatrix(
                    m.field,
                    n.rows,
                    m.rows,
                    [((gp, 1),) if k == g else () for k in range(m.nrows)],
                    validate=False,
                )
            )
    return elements


def _empty_basis(algorithm, coords="generators"):
    stats = SolveStats(algorithm, 0, 0, 0, 0.0, 0)
    return HomBasis((), coords, algorithm, stats)


def hom_direct(xp, yp):
    """Direct computation: full system, then the homotopy quotient."""
    _check_pair(xp, yp)
    if xp.is_zero_module() or yp.is_zero_module():
        return _empty_basis("direct")
    system = LinearSystem(xp, yp)
    t0 = time.perf_counter()
    solutions = system.solve()
    elapsed = time.perf_counter() - t0
    qs = [_q_matrix(qe, xp.matrix, yp.matrix) for qe, _ in solutions]
    survivors = homotopy_reduce(qs, yp)
    pre_rank = _rank_of_qs(qs, xp, yp)
    stats = SolveStats(
        "direct",
        system.n_variables,
        system.n_equations,
        system.entries,
        elapsed,
        solution_dim=len(solutions),
        homotopy_killed=pre_rank - len(survivors),
    )
    basis = HomBasis(tuple(survivors), "generators", "direct", stats)
    _audit(basis.elements, xp, yp, "direct")
    return basis


def _rank_of_qs(qs, xp, yp):
    if not qs:
        return 0
    index = _flat_index(yp.matrix.rows, xp.matrix.rows)
    span = ColumnSpan(xp.field)
    for q in qs:
        span.insert(_flatten_q(q, index))
    return span.rank


def hom_restricted(xp, yp):
    """Algorithm A: sharp restriction systems at both stages.

    Q entries live only on the distinguished generator subsets of Y at
    the generator degrees of X; P entries only on the distinguished
    relation subsets of the first syzygy of Y at the relation degrees of
    X.  Lifts are unique, so the solution space maps isomorphically onto
    Hom(X, Y) and only a plain column reduction is applied.
    """
    _check_pair(xp, yp)
    if xp.is_zero_module() or yp.is_zero_module():
        return _empty_basis("a")
    cache = CokernelCache(yp.matrix)
    if xp.n_relations == 0:
        elements = _free_domain_basis(xp, yp, cache)
        stats = SolveStats("a", len(elements), 0, 0, 0.0, len(elements))
        basis = HomBasis(tuple(elements), "generators", "a", stats)
        _audit(basis.elements, xp, yp, "a")
        return basis
    rs0 = restriction_system(xp.matrix, yp.matrix, 0, cache)
    syzygy = kernel(yp.matrix)
    rs1 = restriction_system(xp.matrix, syzygy, 1)
    q_mask = [rs0.subset(gdeg) for gdeg in xp.matrix.rows]
    p_mask = [rs1.subset(rdeg) for rdeg in xp.matrix.cols]
    system = LinearSystem(xp, yp, q_mask=q_mask, p_mask=p_mask)
    t0 = time.perf_counter()
    solutions = system.solve()
    elapsed = time.perf_counter() - t0
    qs = [_q_matrix(qe, xp.matrix, yp.matrix) for qe, _ in solutions]
    survivors = _column_reduce_qs(qs, xp.field)
    stats = SolveStats(
        "a",
        system.n_variables,
        system.n_equations,
        system.entries,
        elapsed,
        solution_dim=len(solutions),
    )
    basis = HomBasis(tuple(survivors), "generators", "a", stats)
    _audit(basis.elements, xp, yp, "a")
    return basis


def hom_mixed(xp, yp):
    """Algorithm A-1/2: restrict Q only, keep P free, quotient at the end."""
    _check_pair(xp, yp)
    if xp.is_zero_module() or yp.is_zero_module():
        return _empty_basis("mixed")
    cache = CokernelCache(yp.matrix)
    if xp.n_relations == 0:
        elements = _free_domain_basis(xp, yp, cache)
        stats = SolveStats("mixed", len(elements), 0, 0, 0.0, len(elements))
        basis = HomBasis(tuple(elements), "generators", "mixed", stats)
        _audit(basis.elements, xp, yp, "mixed")
        return basis
    rs0 = restriction_system(xp.matrix, yp.matrix, 0, cache)
    q_mask = [rs0.subset(gdeg) for gdeg in xp.matrix.rows]
    system = LinearSystem(xp, yp, q_mask=q_mask)
    t0 = time.perf_counter()
    solutions = system.solve()
    elapsed = time.perf_counter() - t0
    qs = [_q_matrix(qe, xp.matrix, yp.matrix) for qe, _ in solutions]
    survivors = homotopy_reduce(qs, yp)
    pre_rank = _rank_of_qs(qs, xp, yp)
    stats = SolveStats(
        "mixed",
        system.n_variables,
        system.n_equations,
        system.entries,
        elapsed,
        solution_dim=len(solutions),
        homotopy_killed=pre_rank - len(survivors),
    )
    basis = HomBasis(tuple(survivors), "generators", "mixed", stats)
    _audit(basis.elements, xp, yp, "mixed")
    return basis


def hom_exact(xp, yp):
    """Algorithm B: nullspace of the tensored presentation matrix.

    Builds the block matrix from ⊕_g Y_{deg g} to ⊕_r Y_{deg r} whose
    (r, g) block is M_{g,r} times the structure map of Y, computes its
    nullspace with the sparse engine, and re-expresses each nullvector's
    g-component as column g of a graded matrix via the distinguished
    generator subsets.
    """
    _check_pair(xp, yp)
    if xp.is_zero_module() or yp.is_zero_module():
        return _empty_basis("b")
    m, n = xp.matrix, yp.matrix
    fld = m.field
    p = fld.p
    cache = CokernelCache(n)
    col_offsets = []
    total = 0
    for gdeg in m.rows:
        col_offsets.append(total)
        total += cache.at(gdeg).dim
    row_offsets = []
    rows_total = 0
    for rdeg in m.cols:
        row_offsets.append(rows_total)
        rows_total += cache.at(rdeg).dim
    columns = [[] for _ in range(total)]
    entries = 0
    for r, rdeg in enumerate(m.cols):
        dim_r = cache.at(rdeg).dim
        if dim_r == 0:
            continue
        for g, mv in m.columns[r]:
            gdeg = m.rows[g]
            block = structure_map(n, gdeg, rdeg, cache)
            dim_g = cache.at(gdeg).dim
            for s in range(dim_g):
                col = columns[col_offsets[g] + s]
                for t in range(dim_r):
                    val = (mv * block[t][s]) % p
                    if val:
                        col.append((row_offsets[r] + t, val))
                        entries += 1
    sys_columns = [tuple(sorted(c)) for c in columns]
    t0 = time.perf_counter()
    combos = nullspace_of_columns(sys_columns, fld)
    elapsed = time.perf_counter() - t0
    # Re-express nullvectors as graded matrices.
    var_info = []
    for g, gdeg in enumerate(m.rows):
        for s, gp in enumerate(cache.at(gdeg).subset):
            var_info.append((g, gp))
    elements = []
    for combo in combos:
        cols = [[] for _ in range(m.nrows)]
        for k, v in combo.items():
            g, gp = var_info[k]
            cols[g].append((gp, v))
        elements.append(
            GradedMatrix(
                fld,
                n.rows,
                m.rows,
                [tuple(sorted(c)) for c in cols],
                validate=False,
            )
        )
    stats = SolveStats(
        "b", total, rows_total, entries, elapsed, solution_dim=len(combos)
    )
    basis = HomBasis(tuple(elements), "generators", "b", stats)
    _audit(basis.elements, xp, yp, "b")
    return basis


def _block_diagonal(n, shifts, fld):
    """Presentation of ⊕_k Y[shift_k]: one copy of N per shift, with all
    degrees translated down by the shift.  Returns (rows, cols, columns)
    where basis indices are (k, original index) pairs flattened k-major."""
    rows, cols, columns = [], [], []
    for k, shift in enumerate(shifts):
        row_base = len(rows)
        for gdeg in n.rows:
            rows.append(deg_sub(gdeg, shift))
        for rdeg, col in zip(n.cols, n.columns):
            cols.append(deg_sub(rdeg, shift))
            columns.append(tuple((row_base + i, v) for i, v in col))
    return rows, cols, columns


def hom_module_presentation(xp, yp):
    """Presentation of the graded module Hom(X, Y).

    The Hilbert value at alpha is dim Hom(X, Y[alpha]); at the origin it
    is dim Hom(X, Y).  Built from the left-exact sequence
    0 -> Hom(X, Y) -> ⊕_g Y[deg g] -> ⊕_r Y[deg r]: the block map is
    lifted to the free covers, its preimage of the relation submodule is
    generated by a kernel computation, and a second kernel yields the
    relations among those generators.
    """
    _check_pair(xp, yp)
    fld = xp.field
    m, n = xp.matrix, yp.matrix
    if xp.is_zero_module() or yp.is_zero_module():
        return Presentation(
            GradedMatrix(fld, [], [], [], validate=False), minimal=True
        )
    # Free cover of ⊕_g Y[deg g] and its relation columns.
    f1_rows, n1_cols, n1_columns = _block_diagonal(n, m.rows, fld)
    f2_rows, n2_cols, n2_columns = _block_diagonal(n, m.cols, fld)
    ng = n.nrows
    # Lift of the block map: block (r, g) is M_{g,r} times the identity.
    row_hits = [[] for _ in range(m.nrows)]
    for r in range(m.ncols):
        for g, mv in m.columns[r]:
            row_hits[g].append((r, mv))
    qhat_columns = []
    for g in range(m.nrows):
        for gp in range(ng):
            col = [(r * ng + gp, mv) for r, mv in row_hits[g]]
            qhat_columns.append(tuple(sorted(col)))
    combined = GradedMatrix(
        fld,
        f2_rows,
        list(f1_rows) + list(n2_cols),
        list(qhat_columns) + list(n2_columns),
        validate=False,
    )
    k1 = kernel(combined)
    nf1 = len(f1_rows)
    cover_cols, cover_degs = [], []
    for j in range(k1.ncols):
        vpart = tuple((i, v) for i, v in k1.columns[j] if i < nf1)
        if vpart:
            cover_cols.append(vpart)
            cover_degs.append(k1.cols[j])
    second = GradedMatrix(
        fld,
        f1_rows,
        list(cover_degs) + list(n1_cols),
        list(cover_cols) + list(n1_columns),
        validate=False,
    )
    k2 = kernel(second)
    ns = len(cover_degs)
    rel_cols, rel_degs = [], []
    for j in range(k2.ncols):
        spart = tuple((i, v) for i, v in k2.columns[j] if i < ns)
        rel_cols.append(spart)
        rel_degs.append(k2.cols[j])
    raw = GradedMatrix(fld, cover_degs, rel_degs, rel_cols, validate=False)
    return minimize(Presentation(raw, minimal=False, label="hom-module"))
