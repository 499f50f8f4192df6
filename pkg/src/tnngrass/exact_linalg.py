"""Exact rational linear algebra: matrices, determinants, minors, kernels.

Everything here is computed over ``fractions.Fraction`` with no rounding
anywhere.  Determinant-like kernels clear denominators row by row and run
integer fraction-free (Bareiss) elimination, so intermediate entries are
minors of the scaled matrix and never blow up the way naive cross
multiplication of fractions does.

Column subsets are 1-based throughout and enumerated in colexicographic
order (compare largest member first); every subset-keyed result in the
package shares that convention.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    DimensionError,
    InconsistentSystemError,
    RankError,
)

Rational = Fraction
RowVector = tuple[Fraction, ...]

__all__ = [
    "Rational",
    "RowVector",
    "IndexSubset",
    "RationalMatrix",
    "as_rational",
    "rational_to_string",
    "subsets_colex",
    "colex_key",
    "det",
    "minor",
    "all_maximal_minors",
    "rank",
    "kernel_basis",
    "solve_for_left_factor",
    "invert",
    "outer_product",
    "vec_add",
    "vec_sub",
    "vec_scale",
]


def as_rational(value: int | str | Fraction) -> Fraction:
    """Coerce to an exact rational.  Floats are rejected, not rounded."""
    if isinstance(value, bool):
        raise TypeError("bool is not a rational scalar")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"exact rational expected, got {type(value).__name__}")


def rational_to_string(q: Fraction) -> str:
    """Render as ``p/q``, or just ``p`` for integers."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, order=False)
class IndexSubset:
    """A strictly increasing tuple of 1-based column (or row) indices."""

    members: tuple[int, ...]

    def __post_init__(self) -> None:
        mem = tuple(int(i) for i in self.members)
        object.__setattr__(self, "members", mem)
        if any(i < 1 for i in mem):
            raise DimensionError(f"indices must be >= 1, got {mem}")
        if any(a >= b for a, b in zip(mem, mem[1:])):
            raise DimensionError(f"indices must be strictly increasing, got {mem}")

    @classmethod
    def of(cls, indices: Iterable[int]) -> "IndexSubset":
        return cls(tuple(sorted(set(int(i) for i in indices))))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, item: int) -> bool:
        return item in self.members

    def __repr__(self) -> str:
        return f"IndexSubset({list(self.members)})"

    def check_bounds(self, n: int) -> None:
        if self.members and self.members[-1] > n:
            raise DimensionError(f"index {self.members[-1]} out of range 1..{n}")


def colex_key(subset: IndexSubset) -> tuple[int, ...]:
    """Sort key realizing colexicographic order: compare largest entry first."""
    return tuple(reversed(subset.members))


def subsets_colex(n: int, k: int) -> list[IndexSubset]:
    """All k-subsets of {1..n} in colexicographic order."""
    if k < 0 or n < 0:
        raise DimensionError("subset parameters must be nonnegative")
    combos = itertools.combinations(range(1, n + 1), k)
    return [IndexSubset(c) for c in sorted(combos, key=lambda c: tuple(reversed(c)))]


class RationalMatrix:
    """Immutable dense matrix of exact rationals.

    Equality is entrywise exact equality.  All arithmetic returns new
    matrices; instances are safe to share between threads.
    """

    __slots__ = ("_data", "_hash")

    def __init__(self, rows: Iterable[Iterable[int | str | Fraction]]):
        data = tuple(tuple(as_rational(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise DimensionError("ragged rows")
            if width == 0:
                raise DimensionError("rows must be nonempty")
        else:
            raise DimensionError("matrix must have at least one row")
        object.__setattr__(self, "_data", data)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("RationalMatrix is immutable")

    # -- shape and access -------------------------------------------------

    @property
    def rows(self) -> int:
        return len(self._data)

    @property
    def cols(self) -> int:
        return len(self._data[0])

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def entry(self, i: int, j: int) -> Fraction:
        """Entry in row i, column j (0-based)."""
        return self._data[i][j]

    def row(self, i: int) -> RowVector:
        return self._data[i]

    def column(self, j: int) -> RowVector:
        return tuple(r[j] for r in self._data)

    def row_tuples(self) -> tuple[RowVector, ...]:
        return self._data

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls([[Fraction(0)] * cols for _ in range(rows)])

    @classmethod
    def diagonal(cls, entries: Sequence[int | str | Fraction]) -> "RationalMatrix":
        vals = [as_rational(x) for x in entries]
        n = len(vals)
        return cls([[vals[i] if i == j else Fraction(0) for j in range(n)] for i in range(n)])

    @classmethod
    def from_row_vector(cls, vec: Sequence[int | str | Fraction]) -> "RationalMatrix":
        return cls([list(vec)])

    # -- arithmetic --------------------------------------------------------

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(zip(*self._data))

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._require_same_shape(other)
        return RationalMatrix(
            tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self._data, other._data)
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._require_same_shape(other)
        return RationalMatrix(
            tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(self._data, other._data)
        )

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix(tuple(-a for a in row) for row in self._data)

    def scale(self, c: int | str | Fraction) -> "RationalMatrix":
        cq = as_rational(c)
        return RationalMatrix(tuple(cq * a for a in row) for row in self._data)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise DimensionError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        cols_of_other = tuple(zip(*other._data))
        return RationalMatrix(
            tuple(sum(a * b for a, b in zip(row, col)) for col in cols_of_other)
            for row in self._data
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self._data))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(
            " ".join(rational_to_string(x) for x in row) for row in self._data
        )
        return f"RationalMatrix[{self.rows}x{self.cols}: {body}]"

    # -- slicing -----------------------------------------------------------

    def submatrix(self, row_subset: IndexSubset, col_subset: IndexSubset) -> "RationalMatrix":
        """Submatrix on 1-based row and column subsets."""
        row_subset.check_bounds(self.rows)
        col_subset.check_bounds(self.cols)
        return RationalMatrix(
            tuple(self._data[i - 1][j - 1] for j in col_subset) for i in row_subset
        )

    def with_zeroed_columns(self, cols: IndexSubset) -> "RationalMatrix":
        cols.check_bounds(self.cols)
        dead = set(cols)
        return RationalMatrix(
            tuple(Fraction(0) if (j + 1) in dead else x for j, x in enumerate(row))
            for row in self._data
        )

    def stack_below(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.cols:
            raise DimensionError("column counts differ")
        return RationalMatrix(self._data + other._data)

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[rational_to_string(x) for x in row] for row in self._data],
        }

    @classmethod
    def from_json_dict(cls, obj: Mapping) -> "RationalMatrix":
        entries = obj["entries"]
        mat = cls(entries)
        if mat.rows != int(obj["rows"]) or mat.cols != int(obj["cols"]):
            raise DimensionError("declared shape does not match entries")
        return mat

    # -- internal ----------------------------------------------------------

    def _require_same_shape(self, other: "RationalMatrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def _int_rows_and_scale(self) -> tuple[list[list[int]], int]:
        """Clear denominators row by row.

        Returns integer rows plus the product of the per-row multipliers;
        every maximal minor of the original equals the integer minor
        divided by that product (each row contributes its factor exactly
        once to any maximal minor).
        """
        int_rows: list[list[int]] = []
        scale = 1
        for row in self._data:
            mult = lcm(*(x.denominator for x in row))
            scale *= mult
            int_rows.append([int(x * mult) for x in row])
        return int_rows, scale


# -- vector helpers ---------------------------------------------------------


def vec_add(u: Sequence[Fraction], v: Sequence[Fraction]) -> RowVector:
    if len(u) != len(v):
        raise DimensionError("vector lengths differ")
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> RowVector:
    if len(u) != len(v):
        raise DimensionError("vector lengths differ")
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c: Fraction, v: Sequence[Fraction]) -> RowVector:
    return tuple(c * a for a in v)


def outer_product(col: Sequence[Fraction], row: Sequence[Fraction]) -> RationalMatrix:
    """Rank-one matrix col^T * row (col indexes rows of the result)."""
    return RationalMatrix(tuple(c * r for r in row) for c in col)


# -- integer kernels --------------------------------------------------------


def _det_int(a: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix (destroys ``a``)."""
    n = len(a)
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    if n == 3:
        return (
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        )
    sign = 1
    prev = 1
    for t in range(n - 1):
        if a[t][t] == 0:
            for j in range(t + 1, n):
                if a[j][t] != 0:
                    a[t], a[j] = a[j], a[t]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[t][t]
        for j in range(t + 1, n):
            ajt = a[j][t]
            row_j = a[j]
            row_t = a[t]
            for c in range(t + 1, n):
                row_j[c] = (row_j[c] * piv - ajt * row_t[c]) // prev
            row_j[t] = 0
        prev = piv
    return sign * a[n - 1][n - 1]


def _rank_int(a: list[list[int]]) -> int:
    """Rank via fraction-free elimination with column skipping (destroys ``a``)."""
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    r = 0
    prev = 1
    for c in range(ncols):
        pivot_row = next((j for j in range(r, nrows) if a[j][c] != 0), None)
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        piv = a[r][c]
        for j in range(r + 1, nrows):
            ajc = a[j][c]
            row_j = a[j]
            row_r = a[r]
            for cc in range(c + 1, ncols):
                row_j[cc] = (row_j[cc] * piv - ajc * row_r[cc]) // prev
            row_j[c] = 0
        prev = piv
        r += 1
        if r == nrows:
            break
    return r


# -- public operations -------------------------------------------------------


def det(m: RationalMatrix) -> Fraction:
    """Exact determinant via row denominator clearing plus integer Bareiss."""
    if not m.is_square:
        raise DimensionError(f"determinant needs a square matrix, got {m.rows}x{m.cols}")
    int_rows, scale = m._int_rows_and_scale()
    return Fraction(_det_int(int_rows), scale)


def minor(m: RationalMatrix, row_subset: IndexSubset, col_subset: IndexSubset) -> Fraction:
    """Determinant of the submatrix selected by 1-based index subsets."""
    if len(row_subset) != len(col_subset):
        raise DimensionError(
            f"subset sizes differ: {len(row_subset)} rows vs {len(col_subset)} cols"
        )
    if len(row_subset) == 0:
        return Fraction(1)
    return det(m.submatrix(row_subset, col_subset))


def all_maximal_minors(m: RationalMatrix) -> dict[IndexSubset, Fraction]:
    """Every k x k minor of a k x n matrix, keyed by column subset.

    Iteration order of the returned dict is colexicographic, and results
    are independent of evaluation strategy.
    """
    k, n = m.rows, m.cols
    if k > n:
        raise DimensionError(f"wide matrix required, got {k}x{n}")
    int_rows, scale = m._int_rows_and_scale()
    out: dict[IndexSubset, Fraction] = {}
    for subset in subsets_colex(n, k):
        sub = [[row[j - 1] for j in subset.members] for row in int_rows]
        out[subset] = Fraction(_det_int(sub), scale)
    return out


def rank(m: RationalMatrix) -> int:
    """Exact rank over the rationals."""
    int_rows, _ = m._int_rows_and_scale()
    return _rank_int(int_rows)


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Fraction; returns (rows, pivot columns)."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((j for j in range(r, nrows) if rows[j][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for j in range(nrows):
            if j != r and rows[j][c] != 0:
                f = rows[j][c]
                rows[j] = [x - f * y for x, y in zip(rows[j], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def kernel_basis(m: RationalMatrix) -> list[RowVector]:
    """Basis of {v : v * M^T = 0}, i.e. the right null space as row vectors.

    The basis is canonical: vectors are ordered by their free column and
    scaled so the first nonzero entry is +1.  Its length is always
    cols - rank.
    """
    rows = [list(r) for r in m.row_tuples()]
    rref_rows, pivots = _rref(rows)
    n = m.cols
    pivot_set = set(pivots)
    basis: list[RowVector] = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for r_idx, p_col in enumerate(pivots):
            v[p_col] = -rref_rows[r_idx][free]
        lead = next(x for x in v if x != 0)
        basis.append(tuple(x / lead for x in v))
    return basis


def solve_for_left_factor(k_image: RationalMatrix, w: RationalMatrix) -> RationalMatrix:
    """The unique square C with ``k_image = C @ w`` for full-row-rank w.

    Raises RankError when w has deficient row rank and
    InconsistentSystemError when no exact solution exists.
    """
    if k_image.rows != w.rows or k_image.cols != w.cols:
        raise DimensionError("left-factor solve needs equally shaped matrices")
    r = w.rows
    if rank(w) < r:
        raise RankError(f"target has row rank < {r}; left factor is not determined")
    # Solve W^T C^T = K^T by row reducing the augmented matrix [W^T | K^T].
    wt = w.transpose().row_tuples()
    kt = k_image.transpose().row_tuples()
    aug = [list(a) + list(b) for a, b in zip(wt, kt)]
    rref_rows, pivots = _rref(aug)
    if any(p >= r for p in pivots):
        # A pivot inside the right block means some row of k_image is not
        # a combination of w's rows.
        raise InconsistentSystemError("no exact left factor exists")
    if pivots != list(range(r)):
        raise RankError("target has row rank < rows; left factor is not determined")
    ct = [row[r:] for row in rref_rows[:r]]
    return RationalMatrix(ct).transpose()


def invert(m: RationalMatrix) -> RationalMatrix:
    """Exact inverse of a square matrix; raises RankError when singular."""
    if not m.is_square:
        raise DimensionError("inverse needs a square matrix")
    n = m.rows
    aug = [
        list(row) + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(m.row_tuples())
    ]
    rref_rows, pivots = _rref(aug)
    if pivots != list(range(n)):
        raise RankError("matrix is singular")
    return RationalMatrix([row[n:] for row in rref_rows])


def binomial(n: int, k: int) -> int:
    """Number of k-subsets of an n-set."""
    return comb(n, k)
