"""Projective equivalence certificates between corank-one positive setups.

For two setups with n = k+m+1 whose maximal minors are all positive,
the kernels of Z and Z' are spanned by sign-alternating vectors a and b
normalized to the same leading sign.  The diagonal matrix
D = diag(a_i / b_i) then has positive diagonal, Z D and Z' share their
kernel and hence their row span, and the unique C with Z' = C Z D has
positive determinant.  The triple (C, D, det C) is an exact certificate
that the two image bodies are projectively equivalent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .amplituhedron_map import AmplituhedronSetup
from .errors import (
    ChartError,
    DimensionError,
    DomainError,
    InconsistentSystemError,
    InternalConsistencyError,
    RankError,
    UnsupportedParameterError,
)
from .exact_linalg import (
    RationalMatrix,
    RowVector,
    det,
    rank,
    rational_to_string,
    solve_for_left_factor,
    subsets_colex,
)
from .tnn_grassmannian import TNNPoint, check_tnn

__all__ = [
    "EquivalenceCertificate",
    "ProjectiveMap",
    "construct_equivalence",
    "apply_projective_map",
    "equivalence_transport_check",
    "cyclic_polytope_vertices",
]


@dataclass(frozen=True)
class EquivalenceCertificate:
    """Matrices with Z' = C Z D exactly, positive D diagonal and det C > 0."""

    z: RationalMatrix
    z_prime: RationalMatrix
    d_diag: RowVector
    c: RationalMatrix
    det_c: Fraction

    @property
    def d_matrix(self) -> RationalMatrix:
        return RationalMatrix.diagonal(self.d_diag)

    def to_json_dict(self) -> dict:
        return {
            "Z": self.z.to_json_dict(),
            "Zprime": self.z_prime.to_json_dict(),
            "D_diag": [rational_to_string(x) for x in self.d_diag],
            "C": self.c.to_json_dict(),
            "detC": rational_to_string(self.det_c),
        }


def construct_equivalence(
    setup_a: AmplituhedronSetup, setup_b: AmplituhedronSetup
) -> EquivalenceCertificate:
    """Exact certificate carrying setup A's matrix onto setup B's.

    Both setups must have n = k+m+1 and strictly positive maximal
    minors, which makes the kernel generators sign-alternating with no
    zero entries.
    """
    if (setup_a.k, setup_a.m) != (setup_b.k, setup_b.m):
        raise DimensionError(
            f"setups have different parameters: ({setup_a.k},{setup_a.m}) vs ({setup_b.k},{setup_b.m})"
        )
    for name, setup in (("A", setup_a), ("B", setup_b)):
        if setup.n != setup.k + setup.m + 1:
            raise UnsupportedParameterError(f"setup {name} needs n = k+m+1, got n={setup.n}")
        if not setup.all_minors_positive:
            raise DomainError(f"setup {name} does not have all maximal minors positive")
        if not setup.kernel_alternating:
            raise DomainError(f"setup {name} has a kernel with zero or non-alternating entries")
    a = setup_a.kernel_gen
    b = setup_b.kernel_gen
    assert a is not None and b is not None
    # Both generators lead with +1, so entries agree in sign position by
    # position and the ratios are positive.
    d_diag = tuple(ai / bi for ai, bi in zip(a, b))
    if any(x <= 0 for x in d_diag):
        raise InternalConsistencyError("diagonal ratio of aligned alternating kernels is not positive")
    zd = setup_a.Z @ RationalMatrix.diagonal(d_diag)
    try:
        c = solve_for_left_factor(setup_b.Z, zd)
    except (RankError, InconsistentSystemError) as exc:
        # Equal kernels force equal row spans, so the solve cannot fail.
        raise InternalConsistencyError(
            f"no exact left factor although kernels agree: {exc}"
        ) from exc
    det_c = det(c)
    if det_c <= 0:
        raise InternalConsistencyError(f"det(C) = {rational_to_string(det_c)} is not positive")
    if c @ zd != setup_b.Z:
        raise InternalConsistencyError("certificate identity Z' = C Z D failed entrywise")
    return EquivalenceCertificate(
        z=setup_a.Z, z_prime=setup_b.Z, d_diag=d_diag, c=c, det_c=det_c
    )


@dataclass(frozen=True)
class ProjectiveMap:
    """An invertible ambient matrix acting on image representatives."""

    matrix: RationalMatrix

    def __post_init__(self) -> None:
        if not self.matrix.is_square:
            raise DimensionError("projective map needs a square matrix")
        if det(self.matrix) == 0:
            raise RankError("projective map must be invertible")


def apply_projective_map(pm: ProjectiveMap, p: RationalMatrix) -> RationalMatrix:
    """Right action P -> P M^T on full-rank image representatives."""
    if p.cols != pm.matrix.rows:
        raise DimensionError(
            f"representative has {p.cols} columns, map acts on {pm.matrix.rows}"
        )
    if rank(p) < p.rows:
        raise RankError("representative must have full row rank")
    return p @ pm.matrix.transpose()


def equivalence_transport_check(cert: EquivalenceCertificate, point: TNNPoint) -> bool:
    """Exact commutativity of the transport square on one representative.

    Checks (V D) Z^T C^T = V Z'^T entrywise and that V D is still
    totally nonnegative (positive column scaling preserves the sign of
    every maximal minor).
    """
    v = point.matrix
    if v.cols != len(cert.d_diag):
        raise DimensionError(f"representative must have {len(cert.d_diag)} columns")
    vd = v @ cert.d_matrix
    lhs = vd @ cert.z.transpose() @ cert.c.transpose()
    rhs = v @ cert.z_prime.transpose()
    return lhs == rhs and check_tnn(vd).is_tnn


def cyclic_polytope_vertices(setup: AmplituhedronSetup) -> list[RowVector]:
    """Vertex representatives for a k = 1 positive setup: the columns of Z.

    For m <= 2 the convex position of the vertices is verified exactly in
    the affine chart where the first coordinate is 1: after dividing each
    column by its first entry, every (m+1)-subset of points in column
    order must have a strictly positive orientation determinant, up to a
    single global orientation flip.  Columns with vanishing first entry
    cannot be charted and are rejected.
    """
    if setup.k != 1:
        raise UnsupportedParameterError(f"vertex extraction needs k = 1, got k={setup.k}")
    if not setup.all_minors_positive:
        raise DomainError("setup does not have all maximal minors positive")
    m, n = setup.m, setup.n
    columns = [setup.Z.column(j) for j in range(n)]
    if m > 2:
        return columns

    if m >= 1:
        for j, col in enumerate(columns):
            if col[0] == 0:
                raise ChartError(f"column {j + 1} has first coordinate 0; cannot normalize")
        charted = [tuple(x / col[0] for x in col) for col in columns]
        signs: set[int] = set()
        for subset in subsets_colex(n, m + 1):
            orientation = det(RationalMatrix([charted[j - 1] for j in subset]))
            if orientation == 0:
                raise InternalConsistencyError(
                    f"charted columns {list(subset.members)} are affinely dependent"
                )
            signs.add(1 if orientation > 0 else -1)
        if len(signs) > 1:
            raise InternalConsistencyError(
                "orientation determinants changed sign; vertices are not in convex position"
            )
    return columns
