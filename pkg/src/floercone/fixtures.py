"""Canonical example complexes used by the tests and shipped as data files.

UNKNOT      the unknot in the three-sphere: one generator, no differential.
TREFOIL     the right-handed (2,3) torus knot: the three-step staircase.
TREFOIL_L   its mirror: same staircase with the arrows transposed.
Y1SIGMA     an unknot pattern in a homology sphere whose reduced Floer
            homology is one copy of the ground field in grading -1
            (a Brieskorn-sphere-shaped input for the reduced-homology
            obstruction).
FIGURE8     the figure-eight knot: a four-generator box plus an isolated
            generator carrying the homology.

Each constant carries its flip map and passes the validator.  FIGURE8 is
hand-built; the box differential is
    d -> U a + c,   a -> b,   c -> U b
with the flip exchanging a and c, which commutes with the differential and
gives the mod-2 Alexander polynomial T + 1 + T^-1.
"""

from __future__ import annotations

from fractions import Fraction

from floercone.model import DiffTerm, FlipTerm, Generator, KnotComplex

_F = Fraction

UNKNOT = KnotComplex(
    spinc_label="0",
    generators=(Generator("a", 0, _F(0)),),
    differential=(),
    flip=(FlipTerm("a", "a", 0),),
)

TREFOIL = KnotComplex(
    spinc_label="0",
    generators=(
        Generator("a", 1, _F(0)),
        Generator("b", 0, _F(-1)),
        Generator("c", -1, _F(-2)),
    ),
    differential=(
        DiffTerm("b", "a", 1),
        DiffTerm("b", "c", 0),
    ),
    flip=(
        FlipTerm("a", "c", -1),
        FlipTerm("b", "b", 0),
        FlipTerm("c", "a", 1),
    ),
)

TREFOIL_L = KnotComplex(
    spinc_label="0",
    generators=(
        Generator("x", 1, _F(2)),
        Generator("y", 0, _F(1)),
        Generator("z", -1, _F(0)),
    ),
    differential=(
        DiffTerm("x", "y", 0),
        DiffTerm("z", "y", 1),
    ),
    flip=(
        FlipTerm("x", "z", -1),
        FlipTerm("y", "y", 0),
        FlipTerm("z", "x", 1),
    ),
)

Y1SIGMA = KnotComplex(
    spinc_label="0",
    generators=(
        Generator("x", 0, _F(0)),
        Generator("y", 0, _F(-1)),
        Generator("z", 0, _F(0)),
    ),
    differential=(DiffTerm("y", "z", 1),),
    flip=(
        FlipTerm("x", "x", 0),
        FlipTerm("y", "y", 0),
        FlipTerm("z", "z", 0),
    ),
)

FIGURE8 = KnotComplex(
    spinc_label="0",
    generators=(
        Generator("a", 1, _F(1)),
        Generator("b", 0, _F(0)),
        Generator("c", -1, _F(-1)),
        Generator("d", 0, _F(0)),
        Generator("e", 0, _F(0)),
    ),
    differential=(
        DiffTerm("a", "b", 0),
        DiffTerm("c", "b", 1),
        DiffTerm("d", "a", 1),
        DiffTerm("d", "c", 0),
    ),
    flip=(
        FlipTerm("a", "c", -1),
        FlipTerm("b", "b", 0),
        FlipTerm("c", "a", 1),
        FlipTerm("d", "d", 0),
        FlipTerm("e", "e", 0),
    ),
)

ALL_FIXTURES = (UNKNOT, TREFOIL, TREFOIL_L, Y1SIGMA, FIGURE8)
