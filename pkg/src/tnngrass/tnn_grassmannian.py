"""Totally nonnegative points, positivity tests, and positroid cell specs.

A k x n matrix of rank k represents a point of the nonnegative part of
the Grassmannian when all of its maximal minors are nonnegative.  Cells
are specified by the k-subsets whose minors are required to vanish
(nonbases); the top cell has an empty nonbasis set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping, Sequence

from .errors import DegeneracyError, DimensionError, DomainError
from .exact_linalg import (
    IndexSubset,
    RationalMatrix,
    all_maximal_minors,
    as_rational,
    binomial,
    rational_to_string,
)

__all__ = [
    "TNNWitnessReport",
    "TNNPoint",
    "PositroidCellSpec",
    "check_tnn",
    "check_totally_positive",
    "matroid_of",
    "in_closed_cell",
    "sample_top_cell",
    "zero_columns",
]


@dataclass(frozen=True)
class TNNWitnessReport:
    """Outcome of a total-nonnegativity check, with a witness on failure.

    ``first_violation`` is the colexicographically least column subset
    whose minor is negative, together with that minor.  ``is_tnn`` holds
    exactly when the rank is full and no violation exists.
    """

    is_tnn: bool
    rank_ok: bool
    first_violation: tuple[IndexSubset, Fraction] | None = None

    def __post_init__(self) -> None:
        expected = self.rank_ok and self.first_violation is None
        if self.is_tnn != expected:
            raise DomainError("inconsistent witness report")

    def to_json_dict(self) -> dict:
        violation = None
        if self.first_violation is not None:
            subset, value = self.first_violation
            violation = {"cols": list(subset.members), "minor": rational_to_string(value)}
        return {"isTNN": self.is_tnn, "rankOK": self.rank_ok, "firstViolation": violation}


def _scan_minors(minors: Mapping[IndexSubset, Fraction]) -> TNNWitnessReport:
    rank_ok = False
    violation: tuple[IndexSubset, Fraction] | None = None
    for subset, value in minors.items():  # colexicographic iteration order
        if value != 0:
            rank_ok = True
        if value < 0 and violation is None:
            violation = (subset, value)
    return TNNWitnessReport(
        is_tnn=rank_ok and violation is None,
        rank_ok=rank_ok,
        first_violation=violation,
    )


def check_tnn(matrix: RationalMatrix) -> TNNWitnessReport:
    """Full-rank plus all-maximal-minors-nonnegative test for a wide matrix.

    Rank fullness is equivalent to some maximal minor being nonzero, so a
    single minor sweep decides everything.
    """
    if matrix.rows > matrix.cols:
        raise DimensionError(f"wide matrix required, got {matrix.rows}x{matrix.cols}")
    return _scan_minors(all_maximal_minors(matrix))


def check_totally_positive(matrix: RationalMatrix) -> bool:
    """True iff every maximal minor is strictly positive."""
    if matrix.rows > matrix.cols:
        raise DimensionError(f"wide matrix required, got {matrix.rows}x{matrix.cols}")
    return all(v > 0 for v in all_maximal_minors(matrix).values())


@dataclass(frozen=True)
class TNNPoint:
    """A validated representative of a totally nonnegative point.

    Carries the full maximal-minor table computed during validation, so
    downstream cell and matroid queries never recompute determinants.
    """

    matrix: RationalMatrix
    minors: Mapping[IndexSubset, Fraction] = field(compare=False, repr=False, hash=False)

    @classmethod
    def from_matrix(cls, matrix: RationalMatrix) -> "TNNPoint":
        minors = all_maximal_minors(matrix)
        report = _scan_minors(minors)
        if not report.rank_ok:
            raise DegeneracyError(f"matrix has rank below {matrix.rows}")
        if report.first_violation is not None:
            subset, value = report.first_violation
            raise DomainError(
                f"minor on columns {list(subset.members)} is negative: {rational_to_string(value)}"
            )
        return cls(matrix=matrix, minors=MappingProxyType(minors))

    @property
    def k(self) -> int:
        return self.matrix.rows

    @property
    def n(self) -> int:
        return self.matrix.cols


@dataclass(frozen=True)
class PositroidCellSpec:
    """A closed cell given by the k-subsets whose minors must vanish."""

    k: int
    n: int
    nonbases: frozenset[IndexSubset]

    def __post_init__(self) -> None:
        object.__setattr__(self, "nonbases", frozenset(self.nonbases))
        if self.k < 1 or self.n < self.k:
            raise DimensionError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        for subset in self.nonbases:
            if len(subset) != self.k:
                raise DimensionError(f"nonbasis {list(subset.members)} does not have size {self.k}")
            subset.check_bounds(self.n)
        if len(self.nonbases) >= binomial(self.n, self.k):
            raise DomainError("every subset declared dependent; no bases remain")

    @classmethod
    def top_cell(cls, k: int, n: int) -> "PositroidCellSpec":
        return cls(k=k, n=n, nonbases=frozenset())

    @property
    def is_top(self) -> bool:
        return not self.nonbases

    def to_json_dict(self) -> dict:
        subsets = sorted(self.nonbases, key=lambda s: tuple(reversed(s.members)))
        return {"k": self.k, "n": self.n, "nonbases": [list(s.members) for s in subsets]}

    @classmethod
    def from_json_dict(cls, obj: Mapping) -> "PositroidCellSpec":
        nonbases = frozenset(IndexSubset(tuple(s)) for s in obj["nonbases"])
        return cls(k=int(obj["k"]), n=int(obj["n"]), nonbases=nonbases)


def matroid_of(point: TNNPoint) -> PositroidCellSpec:
    """Cell spec of the unique open cell containing the point's span.

    Nonbases are exactly the column subsets with vanishing minor.
    """
    nonbases = frozenset(s for s, v in point.minors.items() if v == 0)
    return PositroidCellSpec(k=point.k, n=point.n, nonbases=nonbases)


def in_closed_cell(matrix: RationalMatrix | TNNPoint, cell: PositroidCellSpec) -> bool:
    """Membership of a representative in the closed cell.

    True iff the matrix is totally nonnegative of full rank and every
    declared nonbasis minor vanishes exactly.
    """
    if isinstance(matrix, TNNPoint):
        minors: Mapping[IndexSubset, Fraction] = matrix.minors
        k, n = matrix.k, matrix.n
    else:
        if matrix.rows > matrix.cols:
            raise DimensionError(f"wide matrix required, got {matrix.rows}x{matrix.cols}")
        k, n = matrix.rows, matrix.cols
        minors = all_maximal_minors(matrix)
    if (k, n) != (cell.k, cell.n):
        raise DimensionError(
            f"matrix is {k}x{n} but cell expects {cell.k}x{cell.n}"
        )
    report = _scan_minors(minors)
    if not report.is_tnn:
        return False
    return all(minors[s] == 0 for s in cell.nonbases)


def sample_top_cell(
    k: int, n: int, nodes: Sequence[int | str | Fraction]
) -> TNNPoint:
    """Vandermonde representative with all maximal minors strictly positive.

    Row i holds the (i-1)-th powers of the nodes; any k columns then form
    a Vandermonde matrix in distinct positive nodes, whose determinant is
    a product of positive differences.
    """
    if k < 1 or n < k:
        raise DimensionError(f"need 1 <= k <= n, got k={k}, n={n}")
    vals = [as_rational(x) for x in nodes]
    if len(vals) != n:
        raise DimensionError(f"expected {n} nodes, got {len(vals)}")
    if any(x <= 0 for x in vals):
        raise DomainError("nodes must be strictly positive")
    if any(a >= b for a, b in zip(vals, vals[1:])):
        raise DomainError("nodes must be strictly increasing")
    matrix = RationalMatrix([[x ** i for x in vals] for i in range(k)])
    return TNNPoint.from_matrix(matrix)


def zero_columns(point: TNNPoint, cols: IndexSubset) -> RationalMatrix:
    """Copy of the representative with the given columns zeroed.

    Minors avoiding the zeroed columns are unchanged and all others
    vanish, so the result stays totally nonnegative; it is rejected when
    the rank would drop below k.
    """
    cols.check_bounds(point.n)
    result = point.matrix.with_zeroed_columns(cols)
    dead = set(cols)
    survives = any(
        value != 0
        for subset, value in point.minors.items()
        if not dead.intersection(subset.members)
    )
    if not survives:
        raise DegeneracyError(
            f"zeroing columns {sorted(dead)} drops the rank below {point.k}"
        )
    return result
