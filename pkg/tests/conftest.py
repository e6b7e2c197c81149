"""Shared fixtures: the worked red/blue pair and assorted helpers.

The red module X (one generator at (2,2), one relation at (6,2)) and the
blue module Y (generators (0,1), (1,0); relations (2,2), (5,0), (5,1))
form the running example used throughout; Hom(X, Y) is one-dimensional.
"""

import pytest

from mphom import (
    GradedMatrix,
    Presentation,
    PrimeField,
    graded_matrix_from_entries,
    minimize,
)


def red_blue(p=3):
    """The worked example pair over GF(p): (X red, Y blue)."""
    fld = PrimeField(p)
    mx = graded_matrix_from_entries(fld, [(2, 2)], [(6, 2)], {(0, 0): 1})
    my = graded_matrix_from_entries(
        fld,
        [(0, 1), (1, 0)],
        [(2, 2), (5, 0), (5, 1)],
        {(0, 0): 1, (1, 0): -1, (1, 1): 1, (0, 2): 1},
    )
    return (
        minimize(Presentation(mx, label="red")),
        minimize(Presentation(my, label="blue")),
    )


def staircase_pair(p=2):
    """The thin staircase pair: X has one relation at (4,4) where the
    first syzygy module of Y is two-dimensional (out of six relations)."""
    fld = PrimeField(p)
    mx = graded_matrix_from_entries(fld, [(1, 1)], [(4, 4)], {(0, 0): 1})
    my = graded_matrix_from_entries(
        fld,
        [(1, 0), (0, 1)],
        [(1, 1), (0, 4), (1, 3), (2, 2), (3, 1), (4, 0)],
        {
            (0, 0): 1,
            (1, 0): -1,
            (1, 1): 1,
            (0, 2): 1,
            (0, 3): 1,
            (0, 4): 1,
            (0, 5): 1,
        },
    )
    return (
        minimize(Presentation(mx, label="stair-x")),
        minimize(Presentation(my, label="stair-y")),
    )


def zero_module(p=3):
    fld = PrimeField(p)
    return Presentation(
        GradedMatrix(fld, [], [], [], validate=False), minimal=True
    )


def free_module(degrees, p=3):
    fld = PrimeField(p)
    m = GradedMatrix(fld, list(degrees), [], [], validate=False)
    return Presentation(m, minimal=True)


@pytest.fixture
def fig_pair():
    return red_blue()


@pytest.fixture
def fig_pair_gf2():
    return red_blue(p=2)
