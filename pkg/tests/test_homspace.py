"""The four Hom algorithms, the homotopy quotient, verification, and the
enriched Hom-module presentation."""

import pytest

from mphom import (
    CokernelCache,
    ColumnSpan,
    GradedMatrix,
    Presentation,
    PrimeField,
    deg_sub,
    graded_matrix_from_entries,
    hilbert_at,
    hom_direct,
    hom_exact,
    hom_mixed,
    hom_module_presentation,
    hom_restricted,
    homotopy_reduce,
    minimize,
    thickness,
    thickness_at_degrees,
    verify_hom,
)
from mphom.gridoracle import grid_axes, hom_oracle, realize_grid
from mphom.generators import random_pair
from mphom.homspace import _flat_index, _flatten_q, _homotopy_columns

from conftest import free_module, red_blue, staircase_pair, zero_module

ALGORITHMS = (hom_direct, hom_restricted, hom_mixed, hom_exact)


def oracle_dim(xp, yp):
    axes = grid_axes(xp.matrix, yp.matrix)
    gx = realize_grid(xp, axes)
    gy = realize_grid(yp, axes)
    return hom_oracle(gx, gy).dim


def quotient_rank(qs, yp, xp):
    """Rank of the flattened family mod null-homotopies."""
    if not qs:
        return 0
    index = _flat_index(yp.matrix.rows, xp.matrix.rows)
    span = ColumnSpan(xp.field)
    for col in _homotopy_columns(yp.matrix, xp.matrix.rows, index):
        span.insert(col)
    base = span.rank
    for q in qs:
        span.insert(_flatten_q(q, index))
    return span.rank - base


def test_running_example_all_algorithms(fig_pair):
    x, y = fig_pair
    for algorithm in ALGORITHMS:
        basis = algorithm(x, y)
        assert basis.dim == 1, algorithm.__name__
        assert basis.coords == "generators"
    assert oracle_dim(x, y) == 1


def test_running_example_direct_diagnostics(fig_pair):
    x, y = fig_pair
    basis = hom_direct(x, y)
    assert basis.stats.solution_dim == 3
    assert basis.stats.homotopy_killed == 1
    # The reduced representative spans the same class as [1, 0]^t.
    assert basis.elements[0].to_dense() == [[1], [0]]


def test_running_example_mixed_diagnostics(fig_pair):
    # Restricting only Q leaves a two-dimensional solution space (two
    # lifts of the same homomorphism with different P parts); their Q
    # parts coincide, so plain dependence, not a null-homotopy, removes
    # the duplicate.
    x, y = fig_pair
    basis = hom_mixed(x, y)
    assert basis.stats.solution_dim == 2
    assert basis.stats.homotopy_killed == 0
    assert basis.dim == 1


def test_running_example_over_other_fields():
    for p in (2, 5):
        x, y = red_blue(p)
        dims = {algorithm(x, y).dim for algorithm in ALGORITHMS}
        assert dims == {1}


def test_restriction_honesty(fig_pair):
    x, y = fig_pair
    basis = hom_restricted(x, y)
    cache = CokernelCache(y.matrix)
    for q in basis:
        for g, gdeg in enumerate(q.cols):
            allowed = set(cache.at(gdeg).subset)
            for gp, _ in q.columns[g]:
                assert gp in allowed
    # The forced zeros of the running example: Q has no entry at the
    # second generator, the solution is found without any quotient.
    assert basis.stats.variables == 3
    assert basis.stats.solution_dim == basis.dim == 1


def test_hom_into_zero_module(fig_pair):
    x, _ = fig_pair
    z = zero_module()
    assert hom_direct(x, z).dim == 0
    assert hom_restricted(z, x).dim == 0
    assert hom_exact(x, z).dim == 0


def test_hom_from_free_rank_one_matches_hilbert(fig_pair):
    _, y = fig_pair
    for alpha in ((0, 0), (1, 1), (2, 2), (5, 1)):
        x = free_module([alpha])
        expected = hilbert_at(y, alpha)
        for algorithm in ALGORITHMS:
            assert algorithm(x, y).dim == expected, (algorithm.__name__, alpha)


def test_hom_from_free_module_dimension_sum(fig_pair):
    _, y = fig_pair
    x = free_module([(1, 1), (2, 2)])
    expected = hilbert_at(y, (1, 1)) + hilbert_at(y, (2, 2))
    for algorithm in ALGORITHMS:
        assert algorithm(x, y).dim == expected


def test_staircase_pair_agreement():
    x, y = staircase_pair()
    dims = {algorithm(x, y).dim for algorithm in ALGORITHMS}
    dims.add(oracle_dim(x, y))
    assert len(dims) == 1


def test_homotopy_reduce_running_example(fig_pair):
    x, y = fig_pair
    fld = x.field
    qs = [
        graded_matrix_from_entries(fld, y.matrix.rows, x.matrix.rows, e)
        for e in ({(0, 0): 1, (1, 0): -1}, {(1, 0): 1}, {(0, 0): 1})
    ]
    out = homotopy_reduce(qs, y)
    assert len(out) == 1
    assert out[0].to_dense() == [[1], [0]]


def test_homotopy_reduce_zero_input(fig_pair):
    x, y = fig_pair
    fld = x.field
    zero = graded_matrix_from_entries(fld, y.matrix.rows, x.matrix.rows, {})
    assert homotopy_reduce([zero, zero], y) == []


def test_homotopy_reduce_preserves_independent_families(fig_pair):
    x, y = fig_pair
    basis = hom_direct(x, y)
    again = homotopy_reduce(list(basis.elements), y)
    assert [q.columns for q in again] == [q.columns for q in basis.elements]
    assert quotient_rank(list(basis.elements), y, x) == basis.dim


def test_verify_hom_on_running_example(fig_pair):
    x, y = fig_pair
    fld = x.field
    good = graded_matrix_from_entries(
        fld, y.matrix.rows, x.matrix.rows, {(0, 0): 1}
    )
    assert verify_hom(good, x, y)
    # [0, 1]^t also descends: Q*M lands in the full column span at (6,2).
    other = graded_matrix_from_entries(
        fld, y.matrix.rows, x.matrix.rows, {(1, 0): 1}
    )
    assert verify_hom(other, x, y)
    zero = graded_matrix_from_entries(fld, y.matrix.rows, x.matrix.rows, {})
    assert verify_hom(zero, x, y)


def test_verify_hom_rejects_non_homomorphism():
    # X free-ish target with a relation the image cannot satisfy:
    # X = coker([x^2]: gen (0,0), rel (2,0)); Y free on (0,0).
    fld = PrimeField(2)
    x = minimize(Presentation(graded_matrix_from_entries(
        fld, [(0, 0)], [(2, 0)], {(0, 0): 1})))
    y = free_module([(0, 0)], p=2)
    q = graded_matrix_from_entries(fld, y.matrix.rows, x.matrix.rows,
                                   {(0, 0): 1})
    assert not verify_hom(q, x, y)
    for algorithm in ALGORITHMS:
        assert algorithm(x, y).dim == 0


def test_end_contains_identity(fig_pair):
    _, y = fig_pair
    basis = hom_restricted(y, y)
    identity = graded_matrix_from_entries(
        y.field, y.matrix.rows, y.matrix.rows,
        {(i, i): 1 for i in range(y.matrix.nrows)},
    )
    with_id = quotient_rank(list(basis.elements) + [identity], y, y)
    assert with_id == basis.dim  # identity already in the span mod homotopy


def test_linear_system_statistics(fig_pair):
    x, y = fig_pair
    direct = hom_direct(x, y).stats
    assert direct.variables == 5  # two Q entries + three P entries
    assert direct.equations == 2
    restricted = hom_restricted(x, y).stats
    assert restricted.variables == 3
    mixed = hom_mixed(x, y).stats
    assert mixed.variables == 4
    exact = hom_exact(x, y).stats
    assert exact.variables == 1
    assert exact.equations == 0
    assert exact.variables < restricted.variables < mixed.variables \
        < direct.variables


def test_dimension_bound_chain(fig_pair):
    x, y = fig_pair
    dim = hom_direct(x, y).dim
    cache = CokernelCache(y.matrix)
    sum_bound = sum(cache.at(g).dim for g in x.matrix.rows)
    betti = thickness_at_degrees(
        y, set(x.matrix.rows) | set(x.matrix.cols), cache
    )
    assert dim <= sum_bound <= x.n_generators * betti
    assert betti <= thickness(y)


def test_cross_algorithm_random_sample():
    for seed in range(6):
        x, y = random_pair(seed, gens=5, rels=5, coord_range=6, p=2)
        dims = {algorithm(x, y).dim for algorithm in ALGORITHMS}
        assert len(dims) == 1, seed
        assert dims.pop() == oracle_dim(x, y), seed


def test_hom_module_presentation_hilbert_at_origin(fig_pair):
    from mphom import validate_grading

    x, y = fig_pair
    h = hom_module_presentation(x, y)
    assert validate_grading(h.matrix)
    origin = (0,) * x.matrix.dim
    assert hilbert_at(h, origin) == hom_direct(x, y).dim


def test_hom_module_of_free_rank_one_is_shifted_target(fig_pair):
    _, y = fig_pair
    alpha = (1, 1)
    x = free_module([alpha])
    h = hom_module_presentation(x, y)
    # Hom(F(alpha), Y) = Y[alpha]: Hilbert functions match after shifting.
    for beta in ((0, 0), (1, 0), (1, 1), (4, 0), (2, 2)):
        shifted = tuple(a + b for a, b in zip(alpha, beta))
        assert hilbert_at(h, beta) == hilbert_at(y, shifted)


def test_hom_module_shift_consistency(fig_pair):
    x, y = fig_pair
    h = hom_module_presentation(x, y)
    fld = x.field
    n = y.matrix
    for alpha in ((1, 0), (0, 1), (2, 1)):
        shifted = GradedMatrix(
            fld,
            [deg_sub(r, alpha) for r in n.rows],
            [deg_sub(c, alpha) for c in n.cols],
            n.columns,
        )
        ys = minimize(Presentation(shifted))
        assert hilbert_at(h, alpha) == hom_direct(x, ys).dim, alpha


def test_hom_module_of_endomorphisms_contains_identity(fig_pair):
    _, y = fig_pair
    h = hom_module_presentation(y, y)
    assert hilbert_at(h, (0, 0)) >= 1


def test_requires_minimal_presentations(fig_pair):
    x, y = fig_pair
    raw = Presentation(x.matrix, minimal=False)
    with pytest.raises(ValueError):
        hom_direct(raw, y)


def test_one_parameter_interval_homs():
    # Classical persistence: Hom([a,b), [c,d)) is K iff c <= a < d <= b.
    fld = PrimeField(2)

    def interval(a, b):
        return minimize(Presentation(graded_matrix_from_entries(
            fld, [(a,)], [(b,)], {(0, 0): 1})))

    i13, i02 = interval(1, 3), interval(0, 2)
    for algorithm in ALGORITHMS:
        assert algorithm(i13, i02).dim == 1
        assert algorithm(i02, i13).dim == 0
        assert algorithm(i02, i02).dim == 1


def test_three_parameter_agreement():
    for seed in (1, 2, 3):
        x, y = random_pair(seed, d=3, gens=4, rels=4, coord_range=3, p=2)
        dims = {algorithm(x, y).dim for algorithm in ALGORITHMS}
        dims.add(oracle_dim(x, y))
        assert len(dims) == 1, seed


def test_end_identity_on_random_modules():
    from mphom.generators import random_module

    for seed in (31, 32, 33):
        y = random_module(seed, gens=5, rels=5, coord_range=5, p=3)
        if y.is_zero_module():
            continue
        basis = hom_restricted(y, y)
        identity = graded_matrix_from_entries(
            y.field, y.matrix.rows, y.matrix.rows,
            {(i, i): 1 for i in range(y.matrix.nrows)},
        )
        assert quotient_rank(list(basis.elements) + [identity], y, y) \
            == basis.dim, seed
