"""Fiber convexity certificates and the section witness for the map on spans.

With n = k+m+1 the kernel of v -> v Z^T is spanned by a single vector a,
so two representatives in the same fiber differ by x^T a for a unique
row vector x.  Along the segment U + lambda x^T a every maximal minor is
an affine function of lambda; a certificate stores those per-minor
coefficients (fitted at lambda = 0, 1 and independently confirmed at
lambda = 2) and its verdict proves that every convex combination stays
inside the closed cell.

The section witness realizes the inverse direction: given a spanning
representative K of a fiber point and the target image W, the unique C
with K Z^T = C W has positive determinant and C^{-1} K is the canonical
representative mapping exactly onto W.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Sequence

from .amplituhedron_map import AmplituhedronSetup
from .errors import (
    DimensionError,
    FiberMismatchError,
    InternalConsistencyError,
    NotInCellError,
    RankError,
    UnsupportedParameterError,
)
from .exact_linalg import (
    IndexSubset,
    RationalMatrix,
    RowVector,
    all_maximal_minors,
    det,
    invert,
    minor,
    outer_product,
    rank,
    rational_to_string,
    solve_for_left_factor,
    subsets_colex,
)
from .tnn_grassmannian import (
    PositroidCellSpec,
    TNNPoint,
    check_tnn,
    in_closed_cell,
)

__all__ = [
    "FiberPair",
    "FiberConvexityCertificate",
    "SectionWitness",
    "fiber_displacement",
    "make_fiber_pair",
    "minor_affine_coeffs",
    "convexity_certificate",
    "section_witness",
    "sample_fiber_partner",
]


def _require_corank_one(setup: AmplituhedronSetup) -> RowVector:
    if setup.n != setup.k + setup.m + 1 or setup.kernel_gen is None:
        raise UnsupportedParameterError(
            f"fiber operations need n = k+m+1, got n={setup.n}, k+m={setup.k + setup.m}"
        )
    return setup.kernel_gen


def _same_fiber(setup: AmplituhedronSetup, u: RationalMatrix, v: RationalMatrix) -> bool:
    zt = setup.Z.transpose()
    return u @ zt == v @ zt


def fiber_displacement(
    setup: AmplituhedronSetup, u: RationalMatrix, v: RationalMatrix
) -> RowVector:
    """The unique row vector x with V - U = x^T a, for same-fiber U, V."""
    a = _require_corank_one(setup)
    if u.rows != setup.k or u.cols != setup.n or v.rows != setup.k or v.cols != setup.n:
        raise DimensionError(f"representatives must be {setup.k}x{setup.n}")
    if not _same_fiber(setup, u, v):
        raise FiberMismatchError("U and V have different images under V -> V Z^T")
    pivot = next(j for j, entry in enumerate(a) if entry != 0)
    delta = v - u
    x = tuple(delta.entry(i, pivot) / a[pivot] for i in range(setup.k))
    if delta != outer_product(x, a):
        # Same image forces every row of V - U into span(a); reaching this
        # would contradict the kernel computation itself.
        raise InternalConsistencyError("same-fiber difference is not a multiple of the kernel")
    return x


@dataclass(frozen=True)
class FiberPair:
    """Two same-fiber representatives with their displacement vector."""

    setup: AmplituhedronSetup
    u: RationalMatrix
    v: RationalMatrix
    x: RowVector


def make_fiber_pair(
    setup: AmplituhedronSetup, u: RationalMatrix, v: RationalMatrix
) -> FiberPair:
    """Validate a pair and record its displacement."""
    x = fiber_displacement(setup, u, v)
    return FiberPair(setup=setup, u=u, v=v, x=x)


def minor_affine_coeffs(
    u: RationalMatrix,
    x: Sequence[Fraction],
    a: Sequence[Fraction],
    cols: IndexSubset,
) -> tuple[Fraction, Fraction]:
    """Coefficients (alpha, beta) with minor(U + lambda x^T a, cols) = alpha + beta*lambda.

    Fitted from lambda = 0 and 1; the value at lambda = 2 is computed
    independently and must land on the same line, which rules out any
    higher-degree behavior.
    """
    if len(x) != u.rows or len(a) != u.cols:
        raise DimensionError("displacement and kernel vector sizes must match the matrix")
    step = outer_product(tuple(x), tuple(a))
    rows_all = IndexSubset(tuple(range(1, u.rows + 1)))
    m0 = minor(u, rows_all, cols)
    m1 = minor(u + step, rows_all, cols)
    m2 = minor(u + step + step, rows_all, cols)
    alpha, beta = m0, m1 - m0
    if m2 != alpha + 2 * beta:
        raise InternalConsistencyError(
            f"minor on columns {list(cols.members)} is not affine along the fiber line"
        )
    return alpha, beta


@dataclass(frozen=True)
class FiberConvexityCertificate:
    """Per-minor affine coefficients proving a fiber segment stays in a cell.

    The verdict is true iff every minor is nonnegative at both endpoints
    and every nonbasis minor is the zero polynomial; by affineness in
    lambda this covers all convex combinations at once.
    """

    cell: PositroidCellSpec
    per_minor: tuple[tuple[IndexSubset, Fraction, Fraction], ...]
    verdict: bool

    def coefficients(self, cols: IndexSubset) -> tuple[Fraction, Fraction]:
        for subset, alpha, beta in self.per_minor:
            if subset == cols:
                return alpha, beta
        raise KeyError(f"no coefficients for columns {list(cols.members)}")

    def to_json_dict(self) -> dict:
        return {
            "cell": self.cell.to_json_dict(),
            "minors": [
                {
                    "cols": list(subset.members),
                    "alpha": rational_to_string(alpha),
                    "beta": rational_to_string(beta),
                }
                for subset, alpha, beta in self.per_minor
            ],
            "verdict": self.verdict,
        }


def convexity_certificate(
    setup: AmplituhedronSetup,
    cell: PositroidCellSpec,
    u: RationalMatrix,
    v: RationalMatrix,
) -> FiberConvexityCertificate:
    """Certificate that the segment from U to V stays in the closed cell.

    Preconditions are reported distinctly: both endpoints must lie in
    the cell, and both must have the same image.
    """
    a = _require_corank_one(setup)
    if (cell.k, cell.n) != (setup.k, setup.n):
        raise DimensionError(
            f"cell is for {cell.k}x{cell.n}, setup is {setup.k}x{setup.n}"
        )
    for name, mat in (("U", u), ("V", v)):
        if not in_closed_cell(mat, cell):
            raise NotInCellError(f"{name} is not in the closed cell")
    x = fiber_displacement(setup, u, v)

    step = outer_product(x, a)
    minors0 = all_maximal_minors(u)
    minors1 = all_maximal_minors(u + step)
    minors2 = all_maximal_minors(u + step + step)

    entries: list[tuple[IndexSubset, Fraction, Fraction]] = []
    verdict = True
    for subset in subsets_colex(setup.n, setup.k):
        alpha = minors0[subset]
        beta = minors1[subset] - alpha
        if minors2[subset] != alpha + 2 * beta:
            raise InternalConsistencyError(
                f"minor on columns {list(subset.members)} is not affine along the fiber line"
            )
        entries.append((subset, alpha, beta))
        if alpha < 0 or alpha + beta < 0:
            verdict = False
        if subset in cell.nonbases and (alpha != 0 or beta != 0):
            verdict = False
    return FiberConvexityCertificate(cell=cell, per_minor=tuple(entries), verdict=verdict)


@dataclass(frozen=True)
class SectionWitness:
    """Exact data of the section: K, the factor C, and C^{-1} K."""

    k_rep: RationalMatrix
    c: RationalMatrix
    result: RationalMatrix
    det_c: Fraction


def section_witness(
    setup: AmplituhedronSetup, k_rep: RationalMatrix, w: RationalMatrix
) -> SectionWitness:
    """Solve K Z^T = C W and return the section value C^{-1} K.

    W must be the image of a totally nonnegative representative of the
    same fiber point (the hypothesis under which det(C) > 0 is a proved
    fact; it is not independently decidable here).  A nonpositive det(C)
    with totally nonnegative K is therefore reported as an internal
    inconsistency.
    """
    if k_rep.rows != setup.k or k_rep.cols != setup.n:
        raise DimensionError(f"K must be {setup.k}x{setup.n}")
    if w.rows != setup.k or w.cols != setup.k + setup.m:
        raise DimensionError(f"W must be {setup.k}x{setup.k + setup.m}")
    if rank(k_rep) < setup.k:
        raise RankError("K must have full row rank")
    if rank(w) < setup.k:
        raise RankError("W must have full row rank")
    k_image = k_rep @ setup.Z.transpose()
    if rank(k_image.stack_below(w)) != setup.k:
        raise FiberMismatchError("span(K Z^T) differs from span(W)")
    c = solve_for_left_factor(k_image, w)
    det_c = det(c)
    if det_c == 0:
        raise InternalConsistencyError("left factor between equal spans is singular")
    if det_c < 0 and check_tnn(k_rep).is_tnn:
        raise InternalConsistencyError(
            f"det(C) = {rational_to_string(det_c)} <= 0 for a TNN representative"
        )
    result = invert(c) @ k_rep
    if result @ setup.Z.transpose() != w:
        raise InternalConsistencyError("section value does not map exactly onto W")
    return SectionWitness(k_rep=k_rep, c=c, result=result, det_c=det_c)


def sample_fiber_partner(
    setup: AmplituhedronSetup,
    cell: PositroidCellSpec,
    point: TNNPoint,
    rng: Random,
    scale: Fraction = Fraction(1, 8),
    max_shrink: int = 40,
    stats: dict[str, int] | None = None,
) -> FiberPair:
    """Draw V = U + x^T a with V still in the closed cell.

    Candidate displacements are drawn at geometrically shrinking scales
    and rejected until the partner passes the exact cell membership
    test.  When no nonzero displacement is admissible (cells cut out by
    zeroed columns admit only the trivial one, since the kernel vector
    has no zero entries there), the pair degenerates to V = U.

    When ``stats`` is given, its "accepted" and "rejected" counters are
    incremented, so campaigns can report their rejection rate.
    """
    a = _require_corank_one(setup)
    u = point.matrix
    if not in_closed_cell(point, cell):
        raise NotInCellError("sample point is not in the closed cell")

    def bump(key: str) -> None:
        if stats is not None:
            stats[key] = stats.get(key, 0) + 1

    for shrink in range(max_shrink):
        factor = scale / (2 ** shrink)
        x = tuple(
            factor * Fraction(rng.randint(-3, 3), rng.randint(1, 4))
            for _ in range(setup.k)
        )
        if all(entry == 0 for entry in x):
            continue
        v = u + outer_product(x, a)
        if in_closed_cell(v, cell):
            bump("accepted")
            return FiberPair(setup=setup, u=u, v=v, x=x)
        bump("rejected")
    bump("accepted")
    zero = tuple(Fraction(0) for _ in range(setup.k))
    return FiberPair(setup=setup, u=u, v=u, x=zero)
