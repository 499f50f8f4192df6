"""Shared test oracles and generators.

The oracles here are deliberately primitive (cofactor expansion, direct
products of differences, brute-force grids) and independent of the
library's computation paths, so agreement between the two is evidence,
not tautology.
"""

from __future__ import annotations

from fractions import Fraction
from random import Random

from tnngrass import (
    AmplituhedronSetup,
    RationalMatrix,
    build_setup,
)

# (k, m) pairs exercised by the fiber acceptance criteria.
FIBER_CONFIGS = [(1, 2), (2, 2), (2, 1), (3, 2)]
Z0_CONFIGS = [(1, 2), (2, 2), (3, 2), (2, 4)]


def cofactor_det(rows: list[list[Fraction]]) -> Fraction:
    """Naive Laplace expansion along the first row."""
    n = len(rows)
    assert all(len(r) == n for r in rows)
    if n == 1:
        return rows[0][0]
    total = Fraction(0)
    sign = 1
    for j in range(n):
        if rows[0][j] != 0:
            sub = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += sign * rows[0][j] * cofactor_det(sub)
        sign = -sign
    return total


def det2(a: Fraction, b: Fraction, c: Fraction, d: Fraction) -> Fraction:
    """The ad - bc oracle for 2 x 2 blocks."""
    return a * d - b * c


def vandermonde_det(nodes: list[Fraction]) -> Fraction:
    """Product of differences: determinant of the square Vandermonde matrix."""
    total = Fraction(1)
    for i in range(len(nodes)):
        for j in range(i + 1, len(nodes)):
            total *= nodes[j] - nodes[i]
    return total


def random_fraction(rng: Random, lo: int = -9, hi: int = 9, max_den: int = 4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def random_matrix(rng: Random, rows: int, cols: int, **kw) -> RationalMatrix:
    return RationalMatrix(
        [[random_fraction(rng, **kw) for _ in range(cols)] for _ in range(rows)]
    )


def random_invertible(rng: Random, n: int) -> RationalMatrix:
    from tnngrass import det

    while True:
        m = random_matrix(rng, n, n)
        if det(m) != 0:
            return m


def random_positive_det(rng: Random, n: int) -> RationalMatrix:
    from tnngrass import det

    while True:
        m = random_matrix(rng, n, n)
        if det(m) > 0:
            return m


def draw_nodes(rng: Random, count: int, lo: int = 1, hi: int = 12) -> list[Fraction]:
    """Distinct increasing positive rationals on a coarse grid."""
    picks: set[Fraction] = set()
    while len(picks) < count:
        picks.add(Fraction(rng.randint(4 * lo, 4 * hi), 4))
    return sorted(picks)


def vandermonde_setup(k: int, m: int, nodes: list[Fraction]) -> AmplituhedronSetup:
    """Totally positive setup built from a Vandermonde matrix."""
    z = RationalMatrix([[x ** i for x in nodes] for i in range(k + m)])
    return build_setup(k, m, z)


def random_corank_one_setup(rng: Random, k: int, m: int) -> AmplituhedronSetup:
    return vandermonde_setup(k, m, draw_nodes(rng, k + m + 1))


def scaled_vandermonde_point(rng: Random, k: int, n: int):
    """Totally positive point: Vandermonde with positive column scales."""
    from tnngrass import TNNPoint

    nodes = draw_nodes(rng, n)
    scales = [Fraction(rng.randint(1, 12), rng.randint(1, 12)) for _ in range(n)]
    matrix = RationalMatrix(
        [[s * (x ** i) for s, x in zip(scales, nodes)] for i in range(k)]
    )
    return TNNPoint.from_matrix(matrix)
