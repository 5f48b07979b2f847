"""Bundled finite examples exercised by the regression command.

Two setups: a five-element generating sublattice of the square of the
three-element chain, and three generating sublattices (A, B, C) of the
product of two three-element chains with a four-element chain.  The second
family distinguishes compatibility and H-completeness: A and B induce the
same order on the ambient homs while C does not, and only B and C admit no
larger compatible extension.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import FinAlgebra, lukasiewicz_chain, product

_H = Fraction(1, 2)
_T1 = Fraction(1, 3)
_T2 = Fraction(2, 3)
_0 = Fraction(0)
_1 = Fraction(1)


def square_ambient() -> FinAlgebra:
    c = lukasiewicz_chain(2)
    return product([c, c])


def square_sublattice() -> FinAlgebra:
    elems = [(_0, _0), (_0, _H), (_0, _1), (_H, _1), (_1, _1)]
    return FinAlgebra.from_tuples([2, 2], elems, "mvlat")


def cube_ambient() -> FinAlgebra:
    return product([lukasiewicz_chain(2), lukasiewicz_chain(2), lukasiewicz_chain(3)])


_CUBE_A = [
    (_0, _0, _0), (_0, _H, _0), (_0, _1, _0), (_H, _1, _0), (_1, _1, _0),
    (_0, _H, _T1), (_0, _1, _T1), (_H, _1, _T1), (_1, _1, _T1),
    (_0, _1, _T2), (_H, _1, _T2), (_1, _1, _T2),
    (_0, _1, _1), (_H, _1, _1), (_1, _1, _1),
]

_CUBE_B = _CUBE_A + [(_H, _H, _0), (_H, _H, _T1)]

_CUBE_C = _CUBE_B + [
    (_0, _0, _T1), (_0, _0, _T2), (_H, _H, _T2), (_0, _H, _T2),
    (_0, _0, _1), (_0, _H, _1), (_H, _H, _1),
]


def cube_sublattices() -> dict[str, FinAlgebra]:
    return {
        "A": FinAlgebra.from_tuples([2, 2, 3], _CUBE_A, "mvlat"),
        "B": FinAlgebra.from_tuples([2, 2, 3], _CUBE_B, "mvlat"),
        "C": FinAlgebra.from_tuples([2, 2, 3], _CUBE_C, "mvlat"),
    }


def coordinate_restriction(sub: FinAlgebra, coord: int) -> tuple:
    """Value vector of the coordinate projection restricted to the carrier."""
    return tuple(e[coord] for e in sub.elements)
