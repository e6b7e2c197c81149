"""Brute-force oracle: modules as explicit functors on a finite grid.

A presentation is realized as vector spaces and structure maps on the
product grid of its degree coordinates; Hom(X, Y) is then computed as the
space of natural transformations by solving one global dense linear
system, one equation block per grid edge.

Everything here is deliberately redundant with the sparse engine: ranks
and nullspaces come from an independent dense row-echelon routine on
numpy arrays (leftmost-pivot convention), so a bug in the sparse column
reduction cannot confirm itself.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

from .errors import (
    CheckMismatchError,
    DimensionMismatchError,
    ResourceCapError,
)

import numpy as np

GRID_CAP_DEFAULT = 10_000


def _inverse_table(p):
    return [0] + [pow(a, p - 2, p) for a in range(1, p)]


def rref(matrix, p):
    """Reduced row echelon form over GF(p) with leftmost pivots.

    Returns (R, pivot_cols); R is a fresh int64 array.
    """
    r = np.array(matrix, dtype=np.int64) % p
    n_rows, n_cols = r.shape
    inv = _inverse_table(p)
    pivot_cols = []
    row = 0
    for col in range(n_cols):
        if row >= n_rows:
            break
        hits = np.nonzero(r[row:, col])[0]
        if hits.size == 0:
            continue
        first = row + hits[0]
        if first != row:
            r[[row, first]] = r[[first, row]]
        r[row] = (r[row] * inv[int(r[row, col])]) % p
        others = np.nonzero(r[:, col])[0]
        for i in others:
            if i != row:
                r[i] = (r[i] - r[i, col] * r[row]) % p
        pivot_cols.append(col)
        row += 1
    return r, pivot_cols


def rank(matrix, p):
    a = np.asarray(matrix, dtype=np.int64)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace_with_free(matrix, p):
    """Nullspace basis plus the free-column indices that label it.

    Columns of the returned basis solve matrix @ x = 0 mod p; basis
    vector k carries a 1 at free column k and 0 at the other free
    columns.
    """
    a = np.asarray(matrix, dtype=np.int64)
    n_cols = a.shape[1]
    if a.size == 0:
        return np.eye(n_cols, dtype=np.int64), list(range(n_cols))
    r, pivot_cols = rref(a, p)
    free = [c for c in range(n_cols) if c not in set(pivot_cols)]
    basis = np.zeros((n_cols, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        basis[f, k] = 1
        for row, pc in enumerate(pivot_cols):
            basis[pc, k] = (-r[row, f]) % p
    return basis, free


def nullspace(matrix, p):
    """Columns form a basis of {x : matrix @ x = 0 mod p}."""
    return nullspace_with_free(matrix, p)[0]


def _matrix_of(obj):
    return getattr(obj, "matrix", obj)


def _dense_slice(matrix, point):
    """Dense N_{<=alpha} plus the original row indices it keeps."""
    rows = [
        i
        for i, r in enumerate(matrix.rows)
        if all(a <= b for a, b in zip(r, point))
    ]
    cols = [
        j
        for j, c in enumerate(matrix.cols)
        if all(a <= b for a, b in zip(c, point))
    ]
    pos = {i: k for k, i in enumerate(rows)}
    dense = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for k, j in enumerate(cols):
        for i, v in matrix.columns[j]:
            dense[pos[i], k] = v
    return dense, rows


@dataclass
class GridModule:
    """A module realized pointwise on a finite product grid.

    The basis of the slice at each point consists of the classes of the
    unit vectors at `free_rows[point]` (original generator indices, the
    "basis provenance"); `functionals[point]` evaluates a coefficient
    vector over the local generators in that basis.  maps[(point, axis)]
    is the dense matrix of the structure map from `point` to its
    successor along `axis`; square-commutativity of the grid diagram is
    validated at construction.
    """

    p: int
    axes: tuple
    dims: dict
    gen_rows: dict
    free_rows: dict
    functionals: dict
    maps: dict

    def points(self):
        return itertools.product(*self.axes)

    def dimension_at(self, point):
        return self.dims[tuple(point)]


def realize_grid(presentation, axes=None, cap=GRID_CAP_DEFAULT):
    """Realize coker(N) as spaces and maps on a product grid.

    `axes` defaults to the per-axis sorted coordinate values of the
    presentation's own degrees; Hom computations pass the combined axes
    of both operands.  Raises ResourceCapError when the grid has more
    than `cap` points.
    """
    matrix = _matrix_of(presentation)
    p = matrix.field.p
    if axes is None:
        axes = grid_axes(matrix)
    axes = tuple(tuple(sorted(set(a))) for a in axes)
    n_points = 1
    for a in axes:
        n_points *= max(len(a), 1)
    if n_points > cap:
        raise ResourceCapError(
            f"oracle grid has {n_points} points, cap is {cap}"
        )
    dims, gen_rows, free_rows, functionals = {}, {}, {}, {}
    for point in itertools.product(*axes):
        dense, rows = _dense_slice(matrix, point)
        if rows:
            w, free = nullspace_with_free(dense.T, p)
        else:
            w, free = np.zeros((0, 0), dtype=np.int64), []
        dims[point] = w.shape[1]
        gen_rows[point] = tuple(rows)
        free_rows[point] = tuple(rows[k] for k in free)
        functionals[point] = w.T  # one row of functionals per basis element
    maps = {}
    for point in itertools.product(*axes):
        for axis, coords in enumerate(axes):
            k = coords.index(point[axis])
            if k + 1 >= len(coords):
                continue
            succ = tuple(
                coords[k + 1] if a == axis else point[a]
                for a in range(len(axes))
            )
            maps[(point, axis)] = _edge_map(
                p, gen_rows, free_rows, functionals, point, succ
            )
    module = GridModule(p, axes, dims, gen_rows, free_rows, functionals, maps)
    _validate_squares(module)
    return module


def grid_axes(*matrices):
    """Per-axis sorted unique coordinates across all degree decorations."""
    axes = None
    for obj in matrices:
        m = _matrix_of(obj)
        for deg in m.rows + m.cols:
            if axes is None:
                axes = [set() for _ in deg]
            if len(deg) != len(axes):
                raise DimensionMismatchError("mixed arities in oracle axes")
            for k, c in enumerate(deg):
                axes[k].add(c)
    if axes is None:
        return ()
    return tuple(tuple(sorted(a)) for a in axes)


def _edge_map(p, gen_rows, free_rows, functionals, point, succ):
    """Matrix of the structure map between two comparable grid points.

    The basis vector k at `point` is the class of the unit vector at the
    generator free_rows[point][k]; its coordinate inclusion into the
    successor slice is evaluated by the successor's functionals, so the
    edge map consists of the successor functional columns at those
    generators.
    """
    w_b = functionals[succ]
    dim_a = len(free_rows[point])
    dim_b = w_b.shape[0]
    if dim_a == 0 or dim_b == 0:
        return np.zeros((dim_b, dim_a), dtype=np.int64)
    pos_b = {r: k for k, r in enumerate(gen_rows[succ])}
    out = np.zeros((dim_b, dim_a), dtype=np.int64)
    for k, r in enumerate(free_rows[point]):
        out[:, k] = w_b[:, pos_b[r]]
    return out % p


def _validate_squares(module):
    axes = module.axes
    for point in module.points():
        for ax1 in range(len(axes)):
            for ax2 in range(ax1 + 1, len(axes)):
                e1 = module.maps.get((point, ax1))
                e2 = module.maps.get((point, ax2))
                if e1 is None or e2 is None:
                    continue
                succ1 = _successor(axes, point, ax1)
                succ2 = _successor(axes, point, ax2)
                top = module.maps[(succ1, ax2)]
                right = module.maps[(succ2, ax1)]
                if ((top @ e1) % module.p != (right @ e2) % module.p).any():
                    raise CheckMismatchError(
                        f"grid square at {point} does not commute"
                    )


def _successor(axes, point, axis):
    coords = axes[axis]
    k = coords.index(point[axis])
    return tuple(
        coords[k + 1] if a == axis else point[a] for a in range(len(axes))
    )


@dataclass(frozen=True)
class OracleResult:
    dim: int
    vectors: tuple
    variables: int
    equations: int
    solve_seconds: float
    var_layout: tuple


def hom_oracle(gx, gy):
    """Dimension and basis of the natural transformations X|grid -> Y|grid.

    One variable per matrix entry of f_alpha wherever both modules are
    nonzero; one equation block per grid edge enforcing
    f_beta . X_edge = Y_edge . f_alpha.
    """
    if gx.axes != gy.axes:
        raise DimensionMismatchError("oracle modules live on different grids")
    p = gx.p
    layout = []
    offsets = {}
    total = 0
    for point in gx.points():
        dx, dy = gx.dims[point], gy.dims[point]
        if dx and dy:
            offsets[point] = total
            layout.append((point, dy, dx))
            total += dx * dy
    n_eqs = 0
    blocks = []
    for point in gx.points():
        for axis in range(len(gx.axes)):
            if (point, axis) not in gx.maps:
                continue
            succ = _successor(gx.axes, point, axis)
            dxa, dya = gx.dims[point], gy.dims[point]
            dxb, dyb = gx.dims[succ], gy.dims[succ]
            if dxa == 0 or dyb == 0:
                continue
            blocks.append((point, succ, axis, dxa, dyb))
            n_eqs += dxa * dyb
    a = np.zeros((n_eqs, total), dtype=np.int64)
    eq = 0
    for point, succ, axis, dxa, dyb in blocks:
        xmap = gx.maps[(point, axis)]  # dxb x dxa
        ymap = gy.maps[(point, axis)]  # dyb x dya
        dxb = gx.dims[succ]
        dya = gy.dims[point]
        for t in range(dyb):
            for s in range(dxa):
                row = eq
                # f_succ entries: coefficient X_edge[s', s] at var (succ, t, s')
                if succ in offsets and dxb:
                    base = offsets[succ]
                    for sp in range(dxb):
                        if xmap[sp, s]:
                            a[row, base + t * dxb + sp] = (
                                a[row, base + t * dxb + sp] + xmap[sp, s]
                            ) % p
                # -Y_edge . f_point entries: coefficient -Y[t, t'] at (point, t', s)
                if point in offsets and dya:
                    base = offsets[point]
                    for tp in range(dya):
                        if ymap[t, tp]:
                            a[row, base + tp * dxa + s] = (
                                a[row, base + tp * dxa + s] - ymap[t, tp]
                            ) % p
                eq += 1
    t0 = time.perf_counter()
    basis = nullspace(a, p) if total else np.zeros((0, 0), dtype=np.int64)
    elapsed = time.perf_counter() - t0
    vectors = tuple(tuple(int(v) for v in basis[:, k]) for k in range(basis.shape[1]))
    return OracleResult(
        dim=basis.shape[1] if total else 0,
        vectors=vectors,
        variables=total,
        equations=n_eqs,
        solve_seconds=elapsed,
        var_layout=tuple(layout),
    )


def push_to_grid(q, gx, gy):
    """Evaluate a graded matrix Q: A[G] -> A[G'] pointwise on the grid.

    Returns {point: dense dy x dx matrix} mapping the oracle basis of
    X_alpha to the oracle basis of Y_alpha.
    """
    p = gx.p
    out = {}
    for point in gx.points():
        dx, dy = gx.dims[point], gy.dims[point]
        rows_y = gy.gen_rows[point]
        if dx == 0 or dy == 0:
            out[point] = np.zeros((dy, dx), dtype=np.int64)
            continue
        # Column k: image of the unit vector at the k-th free generator.
        q_dense = np.zeros((len(rows_y), dx), dtype=np.int64)
        pos_y = {r: k for k, r in enumerate(rows_y)}
        for k, g in enumerate(gx.free_rows[point]):
            for gp, v in q.columns[g]:
                q_dense[pos_y[gp], k] = v
        out[point] = (gy.functionals[point] @ q_dense) % p
    return out


def naturality_residual(q, gx, gy):
    """Maximum absolute residual of the pushed map over all grid edges."""
    p = gx.p
    f = push_to_grid(q, gx, gy)
    worst = 0
    for (point, axis), xmap in gx.maps.items():
        succ = _successor(gx.axes, point, axis)
        ymap = gy.maps[(point, axis)]
        lhs = (f[succ] @ xmap) % p
        rhs = (ymap @ f[point]) % p
        if lhs.size:
            worst = max(worst, int(np.abs(lhs - rhs).max()))
    return worst
