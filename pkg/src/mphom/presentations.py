"""Operations on presentations of graded modules.

A presentation is a graded matrix M: A[R] -> A[G] whose cokernel is the
module; it is minimal when no entry connects a row and a column of equal
degree (so nothing cancels) and no column lies in the span of the shifts
of the others at its own degree (so no relation is redundant).

The kernel routine works degree by degree over the join closure of the
column degrees: at each degree, nullspace vectors of the column slice that
are not generated by earlier kernel elements become new generators.  For
d = 2 this produces the usual length-<=2 resolutions; for higher d it is
correct but makes no complexity claim.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatchError, GradingError
from .graded import (
    ColumnSpan,
    GradedMatrix,
    column_reduce,
    deg_add,
    deg_join,
    deg_leq,
    deg_neg,
    matmul,
    nullspace_of_columns,
)
from .localalg import local_cokernel


@dataclass(frozen=True)
class Presentation:
    """A graded matrix presenting the module coker(matrix)."""

    matrix: GradedMatrix
    minimal: bool = False
    label: str | None = None

    @property
    def field(self):
        return self.matrix.field

    @property
    def n_generators(self):
        return self.matrix.nrows

    @property
    def n_relations(self):
        return self.matrix.ncols

    @property
    def dim(self):
        return self.matrix.dim

    def is_zero_module(self):
        return self.matrix.nrows == 0


def _degree_sort_key(deg):
    # Linear extension of the coordinate-wise order: strictly smaller
    # degrees have strictly smaller coordinate sums.
    return (sum(deg), deg)


def _has_equal_degree_unit(matrix):
    for j, col in enumerate(matrix.columns):
        cdeg = matrix.cols[j]
        for i, _ in col:
            if matrix.rows[i] == cdeg:
                return i, j
    return None


def minimize(presentation):
    """Minimal presentation of an isomorphic module.

    Alternates two sweeps to a fixpoint: cancel (row, column) pairs joined
    by an entry at equal degree, and drop columns that the shifts of the
    other columns already span at their own degree.  The Hilbert function
    of the cokernel is unchanged.
    """
    matrix = presentation.matrix
    fld = matrix.field
    p = fld.p
    rows = list(matrix.rows)
    cols = list(matrix.cols)
    columns = [list(c) for c in matrix.columns]

    def cancel_units():
        changed = False
        while True:
            hit = None
            for j, col in enumerate(columns):
                for i, v in col:
                    if rows[i] == cols[j]:
                        hit = (i, j, v)
                        break
                if hit:
                    break
            if hit is None:
                return changed
            i, j, v = hit
            inv = fld.inv(v)
            pivot_col = columns[j]
            for k, col in enumerate(columns):
                if k == j:
                    continue
                coeff = 0
                for r, w in col:
                    if r == i:
                        coeff = w
                        break
                if coeff:
                    scale = (-coeff * inv) % p
                    merged = {}
                    for r, w in col:
                        merged[r] = w
                    for r, w in pivot_col:
                        nv = (merged.get(r, 0) + scale * w) % p
                        if nv:
                            merged[r] = nv
                        else:
                            merged.pop(r, None)
                    columns[k] = sorted(merged.items())
            # Drop row i and column j, renumbering entries above i.
            del columns[j]
            del cols[j]
            del rows[i]
            for k, col in enumerate(columns):
                columns[k] = [
                    (r - 1 if r > i else r, w) for r, w in col if r != i
                ]
            changed = True

    def drop_redundant():
        changed = False
        order = sorted(range(len(cols)), key=lambda j: _degree_sort_key(cols[j]))
        keep = []
        kept_flags = [False] * len(cols)
        for j in order:
            usable = [k for k in keep if deg_leq(cols[k], cols[j])]
            span = column_reduce([tuple(columns[k]) for k in usable], fld)
            if not columns[j] or span.contains(columns[j]):
                changed = True
                continue
            keep.append(j)
            kept_flags[j] = True
        if changed:
            survivors = [j for j in range(len(cols)) if kept_flags[j]]
            cols[:] = [cols[j] for j in survivors]
            columns[:] = [columns[j] for j in survivors]
        return changed

    while True:
        c1 = cancel_units()
        c2 = drop_redundant()
        if not (c1 or c2):
            break

    out = GradedMatrix(
        fld,
        rows,
        cols,
        [tuple(c) for c in columns],
        validate=False,
    )
    return Presentation(out, minimal=True, label=presentation.label)


def _join_closure(degrees):
    """Closure of a degree set under pairwise joins."""
    closure = {tuple(d) for d in degrees}
    frontier = set(closure)
    while frontier:
        new = set()
        for a in frontier:
            for b in closure:
                j = deg_join(a, b)
                if j not in closure:
                    new.add(j)
        closure |= new
        frontier = new
    return sorted(closure, key=_degree_sort_key)


def kernel(matrix):
    """Graded matrix whose columns generate ker(M: A[R] -> A[G]).

    At each degree alpha in the join closure of the column degrees, the
    degree-alpha slice of the kernel is the nullspace of the columns of
    degree <= alpha; generators are the nullspace vectors not spanned by
    shifts of generators found at earlier degrees.  New generators carry
    no unit entry at an equal-degree column when the input presentation
    is minimal, so resolutions built from this kernel stay minimal.
    """
    fld = matrix.field
    n = matrix.ncols
    if n == 0:
        return GradedMatrix(fld, matrix.cols, [], [], validate=False)
    generators = []  # (degree, sparse column over the column indices of M)
    for alpha in _join_closure(matrix.cols):
        cols_le = [j for j in range(n) if deg_leq(matrix.cols[j], alpha)]
        if not cols_le:
            continue
        combos = nullspace_of_columns(
            [matrix.columns[j] for j in cols_le], fld
        )
        if not combos:
            continue
        span = ColumnSpan(fld)
        for gdeg, gcol in generators:
            if deg_leq(gdeg, alpha):
                span.insert(gcol)
        for combo in combos:
            vec = tuple(sorted((cols_le[k], v) for k, v in combo.items()))
            residual = span.reduce_vector(vec)
            if residual:
                residual = tuple(residual)
                generators.append((alpha, residual))
                span.insert(residual)
    return GradedMatrix(
        fld,
        matrix.cols,
        [deg for deg, _ in generators],
        [col for _, col in generators],
        validate=False,
    )


@dataclass(frozen=True)
class Resolution:
    """A chain of graded matrices d_1, d_2, ... with d_k d_{k+1} = 0."""

    differentials: tuple

    def __post_init__(self):
        diffs = self.differentials
        for k in range(len(diffs) - 1):
            if diffs[k].cols != diffs[k + 1].rows:
                raise DimensionMismatchError(
                    f"stage {k + 1}: rows of d_{k + 2} differ from cols of d_{k + 1}"
                )
            product = matmul(diffs[k], diffs[k + 1])
            if product.nnz():
                raise GradingError(f"d_{k + 1} * d_{k + 2} != 0")

    @property
    def length(self):
        return len(self.differentials)

    @property
    def last(self):
        return self.differentials[-1]


def free_resolution(presentation, length=None):
    """Minimal free resolution d_1 = M, d_{k+1} = kernel(d_k).

    Stops early when a kernel vanishes; `length` caps the number of
    differentials (default d + 1, which the Hilbert syzygy theorem makes
    unreachable for minimal inputs).
    """
    pres = presentation if presentation.minimal else minimize(presentation)
    d = pres.matrix.dim
    diffs = [pres.matrix]
    while True:
        if length is not None and len(diffs) >= length:
            break
        nxt = kernel(diffs[-1])
        if nxt.ncols == 0:
            break
        if length is None and len(diffs) >= max(d, 1):
            raise GradingError(
                f"resolution does not terminate at the syzygy bound {d}"
            )
        diffs.append(nxt)
    return Resolution(tuple(diffs))


def truncation_bound(*presentations):
    """Shared truncation degree: coordinate-wise max of all generator and
    relation degrees of the operands, plus one on every axis."""
    join = None
    for pres in presentations:
        m = getattr(pres, "matrix", pres)
        for deg in m.rows + m.cols:
            join = deg if join is None else deg_join(join, deg)
    if join is None:
        raise ValueError("cannot bound a family of empty presentations")
    return tuple(c + 1 for c in join)


def truncate(presentation, omega):
    """Presentation of the module cut off above omega.

    Adds, for each generator g and each axis i, a relation killing g at
    the degree obtained from deg(g) by replacing coordinate i with
    omega_i; the result is minimized.  Requires omega to dominate every
    degree of the presentation.
    """
    matrix = presentation.matrix
    omega = tuple(omega)
    if matrix.dim and len(omega) != matrix.dim:
        raise DimensionMismatchError("truncation bound has wrong arity")
    for deg in matrix.rows + matrix.cols:
        if not deg_leq(deg, omega):
            raise GradingError(
                f"truncation bound {omega} does not dominate degree {deg}"
            )
    cols = list(matrix.cols)
    columns = [list(c) for c in matrix.columns]
    for g, gdeg in enumerate(matrix.rows):
        for axis in range(len(omega)):
            rho = tuple(
                omega[axis] if k == axis else gdeg[k]
                for k in range(len(omega))
            )
            cols.append(rho)
            columns.append([(g, 1)])
    widened = GradedMatrix(matrix.field, matrix.rows, cols, columns)
    return minimize(
        Presentation(widened, minimal=False, label=presentation.label)
    )


def matlis_transpose_shift(matrix):
    """Transpose with all degrees negated and shifted by the all-ones vector.

    Rows and columns swap roles; applying the operation twice returns the
    original matrix.  Used to turn the last stage of a projective
    resolution into a presentation of the Matlis dual.
    """
    ones = (1,) * matrix.dim if matrix.dim else ()
    new_rows = [deg_add(deg_neg(c), ones) for c in matrix.cols]
    new_cols = [deg_add(deg_neg(r), ones) for r in matrix.rows]
    transposed = [[] for _ in new_cols]
    for j, col in enumerate(matrix.columns):
        for i, v in col:
            transposed[i].append((j, v))
    for col in transposed:
        col.sort()
    return GradedMatrix(matrix.field, new_rows, new_cols, transposed)


def sparsify(presentation):
    """Re-express relations so every column has <= thick(X) + 1 entries.

    Works batch by batch over equal-degree groups of relations: the batch
    classes are lifted to coordinates in a basis of the local slice built
    from generators of strictly smaller degree (they span everything the
    batch can hit), brought to reduced column echelon form, and written
    back.  Batches already inside the bound are left untouched.  The
    module, its Hilbert function, and minimality are preserved.
    """
    if not presentation.minimal:
        presentation = minimize(presentation)
    matrix = presentation.matrix
    fld = matrix.field
    p = fld.p
    columns = [list(c) for c in matrix.columns]
    cols = list(matrix.cols)
    groups = {}
    for j, deg in enumerate(cols):
        groups.setdefault(deg, []).append(j)

    for omega in sorted(groups, key=_degree_sort_key):
        batch = groups[omega]
        k = len(batch)
        others = [j for j in range(len(cols)) if j not in set(batch)]
        rest = GradedMatrix(
            fld,
            matrix.rows,
            [cols[j] for j in others],
            [tuple(columns[j]) for j in others],
            validate=False,
        )
        ck = local_cokernel(rest, omega, fld)
        dim_before = ck.dim
        dim_x = dim_before - k
        if all(len(columns[j]) <= dim_x + 1 for j in batch):
            continue
        # Basis of the strictly-lower-generator span of the local slice.
        lower = [
            g for g in ck.rows_le
            if deg_leq(matrix.rows[g], omega) and matrix.rows[g] != omega
        ]
        span = ColumnSpan(fld)
        basis_rows = []
        for g in lower:
            coords = ck.coordinates([(g, 1)])
            col = tuple((t, v) for t, v in enumerate(coords) if v)
            if span.insert(col) is not None:
                basis_rows.append(g)
        # Express the batch classes in that basis.
        basis_span = column_reduce(
            [
                tuple(
                    (t, v)
                    for t, v in enumerate(ck.coordinates([(g, 1)]))
                    if v
                )
                for g in basis_rows
            ],
            fld,
            record=True,
        )
        lifted = []
        for j in batch:
            coords = ck.coordinates(columns[j])
            vec = tuple((t, v) for t, v in enumerate(coords) if v)
            entry = basis_span.insert(vec, source=-2, record=True)
            if entry is not None:
                raise GradingError(
                    "batch relation class escapes the lower-generator span"
                )
            combo = basis_span.zeroed.pop()[1]
            combo.pop(-2, None)
            lifted.append(
                sorted((idx, (-v) % p) for idx, v in combo.items())
            )
        # Reduced column echelon form of the lifted block.
        echelon = _reduced_column_echelon(lifted, fld)
        for slot, j in enumerate(batch):
            if not echelon[slot]:
                raise GradingError(
                    "dependent relation batch; presentation was not minimal"
                )
            columns[j] = [
                (basis_rows[idx], v) for idx, v in echelon[slot]
            ]
            if len(columns[j]) > dim_x + 1:
                raise GradingError("sparsification exceeded the entry bound")
    out = GradedMatrix(
        fld,
        matrix.rows,
        cols,
        [tuple(sorted(c)) for c in columns],
        validate=False,
    )
    return Presentation(out, minimal=True, label=presentation.label)


def _reduced_column_echelon(columns, fld):
    """Reduced column echelon form: unit pivots, pivot rows cleared."""
    p = fld.p
    work = [dict(col) for col in columns]
    pivots = {}
    for j, col in enumerate(work):
        while col:
            piv = max(col)
            if piv not in pivots:
                inv = fld.inv(col[piv])
                if inv != 1:
                    for r in list(col):
                        col[r] = (col[r] * inv) % p
                pivots[piv] = j
                break
            other = work[pivots[piv]]
            scale = (-col[piv]) % p
            for r, v in other.items():
                nv = (col.get(r, 0) + scale * v) % p
                if nv:
                    col[r] = nv
                else:
                    col.pop(r, None)
    # Clear pivot rows across the other columns.
    for piv, j in pivots.items():
        for k, col in enumerate(work):
            if k == j:
                continue
            coeff = col.get(piv)
            if coeff:
                scale = (-coeff) % p
                for r, v in work[j].items():
                    nv = (col.get(r, 0) + scale * v) % p
                    if nv:
                        col[r] = nv
                    else:
                        col.pop(r, None)
    return [sorted(col.items()) for col in work]
