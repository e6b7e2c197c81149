"""Degree-local linear algebra on presentations.

For a presentation N of a module Y and a degree alpha, the slice Y_alpha is
the cokernel of the vector-space map given by the submatrix N_{<=alpha}.
This module computes those local cokernels together with a distinguished
subset of generators whose images form a basis, the structure maps
Y_alpha -> Y_beta, the Hilbert function, and thickness (the maximum
pointwise dimension).

Pivot convention: columns of N_{<=alpha} are reduced left to right with
lowest-row pivots (largest row index); the distinguished subset collects
the pivot-free rows in their original order.  Any valid subset would do;
fixing the sweep makes results deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import DimensionMismatchError
from .graded import column_reduce, deg_leq, submatrix_at_most


def _matrix_of(obj):
    """Accept either a GradedMatrix or anything with a .matrix attribute."""
    return getattr(obj, "matrix", obj)


@dataclass(frozen=True)
class LocalCokernel:
    """Cokernel of N_{<=alpha} with a distinguished generator subset.

    Attributes
    ----------
    degree: the evaluation degree alpha.
    rows_le: original indices of the generators of degree <= alpha.
    subset: original indices of the pivot-free generators; their images
        form a basis of Y_alpha, so dim Y_alpha == len(subset).
    matrix: the cokernel map K^{rows_le} -> Y_alpha as a dense list of
        rows (one per subset element), expressed so that the columns at
        subset positions form the identity.
    """

    degree: tuple
    rows_le: tuple
    subset: tuple
    matrix: tuple
    p: int

    @property
    def dim(self):
        return len(self.subset)

    def coordinates(self, column):
        """Coordinates in the subset basis of a sparse vector over rows_le.

        The vector indexes rows by their *original* row numbers.
        """
        pos = {r: k for k, r in enumerate(self.rows_le)}
        out = [0] * self.dim
        for r, v in column:
            local = pos[r]
            for t in range(self.dim):
                out[t] += self.matrix[t][local] * v
        return [v % self.p for v in out]


def local_cokernel(matrix, alpha, field=None):
    """Local cokernel of a presentation at a degree (Algorithm 1).

    Reduces the columns of N_{<=alpha}; pivot-free rows become the
    distinguished subset G_alpha, and the cokernel matrix d_alpha is the
    unique solution of d_alpha * N_{<=alpha} = 0 normalized so that its
    columns at G_alpha are the identity.
    """
    matrix = _matrix_of(matrix)
    fld = field or matrix.field
    p = fld.p
    sub, row_idx, _ = submatrix_at_most(matrix, alpha)
    span = column_reduce(sub.columns, fld)
    pivot_of = {}
    for entry in span.reduced:
        pivot_of[entry.pivot] = entry.column
    m = len(row_idx)
    free_local = [k for k in range(m) if k not in pivot_of]
    free_pos = {k: t for t, k in enumerate(free_local)}
    dim = len(free_local)
    # Forward substitution in increasing row order: a reduced column has
    # its pivot as last entry, so the pivot coordinate only depends on
    # rows already processed.
    cols = []
    for r in range(m):
        if r in free_pos:
            col = [0] * dim
            col[free_pos[r]] = 1
        else:
            pcol = pivot_of[r]
            lead_inv = fld.inv(pcol[-1][1])
            col = [0] * dim
            for i, v in pcol[:-1]:
                scale = (-v * lead_inv) % p
                prev = cols[i]
                for t in range(dim):
                    col[t] = (col[t] + scale * prev[t]) % p
        cols.append(col)
    rows = tuple(
        tuple(cols[r][t] for r in range(m)) for t in range(dim)
    )
    return LocalCokernel(
        degree=tuple(alpha),
        rows_le=tuple(row_idx),
        subset=tuple(row_idx[k] for k in free_local),
        matrix=rows,
        p=p,
    )


class CokernelCache:
    """Memoizes local cokernels of one presentation per distinct degree.

    The cache is scoped to a single computation context; contexts are
    independent and may run in parallel.
    """

    def __init__(self, matrix, field=None):
        self.matrix = _matrix_of(matrix)
        self.field = field or self.matrix.field
        self._memo = {}

    def at(self, alpha):
        alpha = tuple(alpha)
        hit = self._memo.get(alpha)
        if hit is None:
            hit = local_cokernel(self.matrix, alpha, self.field)
            self._memo[alpha] = hit
        return hit


@dataclass(frozen=True)
class RestrictionSystem:
    """Distinguished target subsets per degree of a basis of the source.

    `subsets` maps each relevant degree alpha to the ordered tuple of
    row indices of the target presentation (stage 0) or of its kernel
    (stage 1) whose images form a basis of the local slice; subset sizes
    equal the local dimensions, so the induced lift is unique.
    """

    stage: int
    subsets: dict

    def subset(self, alpha):
        return self.subsets[tuple(alpha)]


def restriction_system(source, stage_matrix, stage, cache=None):
    """Restriction system for the generators (stage 0) or relations
    (stage 1) of `source`, through `stage_matrix`.

    Stage 0 passes the target presentation N itself (slices of Y); stage 1
    passes O = kernel(N) (slices of the first syzygy module of Y).
    """
    if stage not in (0, 1):
        raise ValueError("stage must be 0 or 1")
    source = _matrix_of(source)
    degrees = source.rows if stage == 0 else source.cols
    cache = cache or CokernelCache(stage_matrix)
    subsets = {}
    for alpha in degrees:
        alpha = tuple(alpha)
        if alpha not in subsets:
            subsets[alpha] = cache.at(alpha).subset
    return RestrictionSystem(stage=stage, subsets=subsets)


def structure_map(matrix, alpha, beta, cache=None):
    """Matrix of Y_alpha -> Y_beta in the distinguished subset bases.

    The columns are the subset-of-alpha indexed columns of the cokernel
    at beta, expressed in the subset basis at beta.  Requires alpha <= beta.
    """
    alpha, beta = tuple(alpha), tuple(beta)
    if not deg_leq(alpha, beta):
        raise DimensionMismatchError(f"{alpha} is not <= {beta}")
    cache = cache or CokernelCache(matrix)
    ck_a = cache.at(alpha)
    ck_b = cache.at(beta)
    pos_b = {r: k for k, r in enumerate(ck_b.rows_le)}
    out = []
    for t in range(ck_b.dim):
        row_t = ck_b.matrix[t]
        out.append(tuple(row_t[pos_b[g]] for g in ck_a.subset))
    return tuple(out)


def hilbert_at(presentation, alpha, cache=None):
    """dim Y_alpha, read off the local cokernel."""
    cache = cache or CokernelCache(_matrix_of(presentation))
    return cache.at(alpha).dim


def evaluation_grid(*objs):
    """Product grid of the per-axis coordinate values of all degrees.

    The Hilbert function of each module involved is constant on the cells
    this grid induces, so maxima over the grid are global maxima.
    """
    axes = None
    for obj in objs:
        m = _matrix_of(obj)
        for deg in m.rows + m.cols:
            if axes is None:
                axes = [set() for _ in deg]
            if len(deg) != len(axes):
                raise DimensionMismatchError("mixed arities in grid build")
            for k, c in enumerate(deg):
                axes[k].add(c)
    if axes is None:
        return ()
    return tuple(tuple(sorted(a)) for a in axes)


def grid_points(axes):
    return itertools.product(*axes) if axes else iter(())


def thickness(presentation, cache=None):
    """Maximum pointwise dimension over the evaluation grid."""
    matrix = _matrix_of(presentation)
    axes = evaluation_grid(matrix)
    if not axes:
        return 0
    cache = cache or CokernelCache(matrix)
    return max(cache.at(alpha).dim for alpha in grid_points(axes))


def thickness_at_degrees(presentation, degrees, cache=None):
    """Maximum of the Hilbert function over an explicit degree set.

    Used for the Betti-restricted variant, where `degrees` are the
    generator/relation degrees of the other operand.
    """
    degrees = {tuple(d) for d in degrees}
    if not degrees:
        return 0
    cache = cache or CokernelCache(_matrix_of(presentation))
    return max(cache.at(alpha).dim for alpha in degrees)
