"""Validated map setups, the induced linear maps, and the cyclic matrix.

A setup bundles counts (k, m, n) with a full-rank (k+m) x n matrix Z.
Representatives V map to V Z^T; when n = k+m+1 the kernel of v -> v Z^T
is one-dimensional and its canonical generator is cached, since the
fiber and equivalence machinery is built on it.

The cyclically symmetric matrix is constructed from the closed-form
trigonometric eigenbasis of S + S^T, where S is the cyclic shift that
twists the wrap-around entry by (-1)^(k-1).  Floating point appears only
in the initial entry estimates; the rationalized matrix must then pass
exact positivity and sign-alternation verification, with the precision
doubled on failure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .errors import (
    ConstructionError,
    DimensionError,
    InternalConsistencyError,
    RankError,
    UnsupportedParameterError,
)
from .exact_linalg import (
    IndexSubset,
    RationalMatrix,
    RowVector,
    all_maximal_minors,
    kernel_basis,
    minor,
    rank,
    rational_to_string,
)
from .tnn_grassmannian import TNNPoint, TNNWitnessReport, _scan_minors

__all__ = [
    "AmplituhedronSetup",
    "MappedPoint",
    "WellDefinednessReport",
    "signs_alternate",
    "build_setup",
    "hat_map",
    "check_well_defined_on_samples",
    "build_z0",
]

_PRECISION_CEILING = 640


def signs_alternate(vec: Sequence[Fraction]) -> bool:
    """True iff all entries are nonzero and adjacent entries have opposite sign."""
    if any(x == 0 for x in vec):
        return False
    return all(a * b < 0 for a, b in zip(vec, vec[1:]))


@dataclass(frozen=True)
class AmplituhedronSetup:
    """A validated (k, m, n, Z) bundle.

    ``kernel_gen`` is populated exactly when n = k+m+1; it spans the
    kernel of v -> v Z^T and is scaled so its first nonzero entry is +1.
    ``kernel_alternating`` records the exact sign pattern check; for a Z
    with all maximal minors positive it is guaranteed true and a failure
    is reported as an internal inconsistency at build time.
    """

    k: int
    m: int
    n: int
    Z: RationalMatrix
    kernel_gen: RowVector | None
    positivity: TNNWitnessReport
    all_minors_positive: bool
    kernel_alternating: bool | None

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "m": self.m,
            "n": self.n,
            "Z": self.Z.to_json_dict(),
            "kernel": None
            if self.kernel_gen is None
            else [rational_to_string(x) for x in self.kernel_gen],
            "allMinorsPositive": self.all_minors_positive,
        }


def build_setup(k: int, m: int, Z: RationalMatrix) -> AmplituhedronSetup:
    """Validate Z and cache its positivity report and kernel generator.

    Raises RankError when Z does not have full row rank k+m.
    """
    if k < 1 or m < 0:
        raise UnsupportedParameterError(f"need k >= 1 and m >= 0, got k={k}, m={m}")
    if Z.rows != k + m:
        raise DimensionError(f"Z must have {k + m} rows, got {Z.rows}")
    n = Z.cols
    if n < k + m:
        raise DimensionError(f"Z must have at least {k + m} columns, got {n}")
    minors = all_maximal_minors(Z)
    positivity = _scan_minors(minors)
    if not positivity.rank_ok:
        raise RankError(f"Z has rank below {k + m}")
    all_positive = all(v > 0 for v in minors.values())

    kernel_gen: RowVector | None = None
    alternating: bool | None = None
    if n == k + m + 1:
        basis = kernel_basis(Z)
        if len(basis) != 1:
            raise InternalConsistencyError(
                f"corank-one setup produced a {len(basis)}-dimensional kernel"
            )
        kernel_gen = basis[0]
        alternating = signs_alternate(kernel_gen)
        if all_positive and not alternating:
            raise InternalConsistencyError(
                "kernel of a positive-minor Z failed strict sign alternation: "
                f"{[rational_to_string(x) for x in kernel_gen]}"
            )
    return AmplituhedronSetup(
        k=k,
        m=m,
        n=n,
        Z=Z,
        kernel_gen=kernel_gen,
        positivity=positivity,
        all_minors_positive=all_positive,
        kernel_alternating=alternating,
    )


@dataclass(frozen=True)
class MappedPoint:
    """Image V Z^T of a representative, with source and image ranks."""

    image: RationalMatrix
    source_rank: int
    image_rank: int

    def to_json_dict(self) -> dict:
        return {
            "image": self.image.to_json_dict(),
            "sourceRank": self.source_rank,
            "imageRank": self.image_rank,
        }


def hat_map(setup: AmplituhedronSetup, v: RationalMatrix | TNNPoint) -> MappedPoint:
    """The linear map V -> V Z^T on representatives."""
    matrix = v.matrix if isinstance(v, TNNPoint) else v
    if matrix.cols != setup.n:
        raise DimensionError(f"representative must have {setup.n} columns, got {matrix.cols}")
    if matrix.rows != setup.k:
        raise DimensionError(f"representative must have {setup.k} rows, got {matrix.rows}")
    image = matrix @ setup.Z.transpose()
    return MappedPoint(
        image=image,
        source_rank=rank(matrix),
        image_rank=rank(image),
    )


@dataclass(frozen=True)
class WellDefinednessReport:
    """Sample-based falsification result for the induced map on spans."""

    ok: bool
    worst_rank: int | None = None
    witness: TNNPoint | None = None


def check_well_defined_on_samples(
    setup: AmplituhedronSetup, samples: Sequence[TNNPoint]
) -> WellDefinednessReport:
    """Check image rank = k on every sample; a falsifier, not a decision.

    For a Z with all maximal minors positive the map is known to be well
    defined, so any failure there is raised as an internal inconsistency
    instead of being reported.
    """
    worst_rank: int | None = None
    witness: TNNPoint | None = None
    for point in samples:
        mapped = hat_map(setup, point)
        if worst_rank is None or mapped.image_rank < worst_rank:
            worst_rank = mapped.image_rank
            witness = point
    ok = worst_rank is None or worst_rank == setup.k
    if not ok and setup.all_minors_positive:
        raise InternalConsistencyError(
            f"positive-minor setup dropped image rank to {worst_rank} on a TNN sample"
        )
    return WellDefinednessReport(
        ok=ok,
        worst_rank=worst_rank,
        witness=None if ok else witness,
    )


# -- cyclically symmetric construction ---------------------------------------


def _trig_rows(k: int, m: int, n: int, digits: int) -> list[list[Fraction]]:
    """Entry estimates for the top eigenvectors of the twisted shift sum.

    The twisted circulant S + S^T has eigenvector (w^0, ..., w^(n-1)) with
    eigenvalue 2 cos(arg w) for every w with w^n = (-1)^(k-1).  Sorting
    eigenvalues descending and taking the real cosine/sine pair for each
    frequency yields: for odd k the all-ones row plus pairs at angles
    2*pi*t/n, and for even k pairs at angles (2t+1)*pi/n.  The lowest
    eigenvalue is always the alternating vector, which is why it spans
    the kernel of the result.
    """
    with mpmath.workdps(digits + 15):
        scale = mpmath.mpf(10) ** digits

        def rounded(x: mpmath.mpf) -> Fraction:
            return Fraction(int(mpmath.nint(x * scale)), 10 ** digits)

        rows: list[list[Fraction]] = []
        if k % 2 == 1:
            rows.append([Fraction(1)] * n)
            pair_count = (k + m - 1) // 2
            angles = [2 * mpmath.pi * t / n for t in range(1, pair_count + 1)]
        else:
            pair_count = (k + m) // 2
            angles = [(2 * t + 1) * mpmath.pi / n for t in range(pair_count)]
        for theta in angles:
            rows.append([rounded(mpmath.cos(theta * i)) for i in range(n)])
            rows.append([rounded(mpmath.sin(theta * i)) for i in range(n)])
    return rows


def build_z0(k: int, m: int, precision_digits: int = 12) -> AmplituhedronSetup:
    """Rationalized cyclically symmetric setup with n = k+m+1, verified exactly.

    The construction retries with doubled precision until the rational
    matrix passes strict minor positivity and kernel sign alternation;
    positivity is an open condition, so sufficient precision always
    succeeds.  Only even m is supported.
    """
    if m < 0 or m % 2 != 0:
        raise UnsupportedParameterError(f"m must be an even nonnegative integer, got {m}")
    if k < 1:
        raise UnsupportedParameterError(f"k must be positive, got {k}")
    if precision_digits < 8:
        raise UnsupportedParameterError(
            f"precision_digits must be at least 8, got {precision_digits}"
        )
    n = k + m + 1
    digits = precision_digits
    while digits <= _PRECISION_CEILING:
        rows = _trig_rows(k, m, n, digits)
        candidate = RationalMatrix(rows)
        # Any row basis of the eigenspace has uniformly signed maximal
        # minors; flip one row if the leading minor says we built the
        # negatively oriented basis.
        lead = minor(
            candidate,
            IndexSubset(tuple(range(1, k + m + 1))),
            IndexSubset(tuple(range(1, k + m + 1))),
        )
        if lead < 0:
            flipped = [[-x for x in rows[0]]] + rows[1:]
            candidate = RationalMatrix(flipped)
        elif lead == 0:
            digits *= 2
            continue
        try:
            setup = build_setup(k, m, candidate)
        except RankError:
            digits *= 2
            continue
        if setup.all_minors_positive and setup.kernel_alternating:
            return setup
        digits *= 2
    raise ConstructionError(
        f"no rationalization up to {_PRECISION_CEILING} digits passed verification"
    )
