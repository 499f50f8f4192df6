"""Command-line front end: JSON in, certificates and reports out.

Exit codes: 0 when every verdict in the report is true, 1 when a verdict
is false, 2 for usage and input errors, 3 when an exactly-checked
invariant was falsified.  Certificate and report files are canonical
JSON, so identical inputs (including the seed) produce byte-identical
output files.  Set AMP_LOG=INFO or DEBUG for progress logging.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from random import Random
from typing import Mapping, Sequence

from .amplituhedron_map import (
    AmplituhedronSetup,
    build_setup,
    build_z0,
    hat_map,
)
from .embeddings import embed_point
from .equivalence import construct_equivalence, equivalence_transport_check
from .errors import InternalConsistencyError, UserInputError
from .exact_linalg import (
    IndexSubset,
    RationalMatrix,
    as_rational,
    rational_to_string,
)
from .fiber import convexity_certificate, sample_fiber_partner
from .tnn_grassmannian import (
    PositroidCellSpec,
    TNNPoint,
    check_tnn,
    in_closed_cell,
    matroid_of,
    sample_top_cell,
    zero_columns,
)

log = logging.getLogger("tnngrass")

EXIT_OK = 0
EXIT_FALSE_VERDICT = 1
EXIT_USAGE = 2
EXIT_FALSIFIED = 3


@dataclass(frozen=True)
class CampaignConfig:
    """Reproducible fiber-campaign parameters; same config, same bytes out."""

    seed: int
    trials: int
    k: int
    m: int
    node_lo: Fraction
    node_hi: Fraction
    zero_cols: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise UserInputError("trials must be >= 1")
        if self.node_lo <= 0 or self.node_hi <= self.node_lo:
            raise UserInputError("node range must satisfy 0 < lo < hi")

    @property
    def n(self) -> int:
        return self.k + self.m + 1

    def to_json_dict(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "k": self.k,
            "m": self.m,
            "nodeRange": [rational_to_string(self.node_lo), rational_to_string(self.node_hi)],
            "zeroCols": list(self.zero_cols),
        }


@dataclass
class Report:
    """Named verdicts plus counters; the exit code is derived from it."""

    command: str
    inputs_digest: str
    verdicts: list[tuple[str, bool]]
    counters: dict[str, int] = field(default_factory=dict)
    artifacts: list[str] = field(default_factory=list)

    @property
    def all_ok(self) -> bool:
        return bool(self.verdicts) and all(ok for _, ok in self.verdicts)

    def to_json_dict(self) -> dict:
        return {
            "command": self.command,
            "inputsDigest": self.inputs_digest,
            "verdicts": [{"name": name, "ok": ok} for name, ok in self.verdicts],
            "counters": dict(sorted(self.counters.items())),
            "artifacts": list(self.artifacts),
        }

    def print_human(self) -> None:
        print(f"command:  {self.command}")
        print(f"inputs:   sha256:{self.inputs_digest[:16]}...")
        for name, ok in self.verdicts:
            print(f"  [{'PASS' if ok else 'FAIL'}] {name}")
        for name, value in sorted(self.counters.items()):
            print(f"  {name} = {value}")
        for path in self.artifacts:
            print(f"  wrote {path}")


# -- JSON plumbing -----------------------------------------------------------


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def digest_of(obj) -> str:
    return hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()


def write_json(path: Path, obj) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(canonical_json(obj), encoding="utf-8")


def load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UserInputError(f"cannot read JSON from {path}: {exc}") from exc
    if not isinstance(obj, dict):
        raise UserInputError(f"{path}: top-level JSON object expected")
    return obj


def load_matrix(path: str) -> RationalMatrix:
    obj = load_json(path)
    try:
        return RationalMatrix.from_json_dict(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise UserInputError(f"{path}: not a valid matrix file: {exc}") from exc


def load_cell(path: str) -> PositroidCellSpec:
    obj = load_json(path)
    try:
        return PositroidCellSpec.from_json_dict(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise UserInputError(f"{path}: not a valid cell file: {exc}") from exc


def load_setup(path: str) -> AmplituhedronSetup:
    """Rebuild a setup from file, re-running all exact validation."""
    obj = load_json(path)
    try:
        z = RationalMatrix.from_json_dict(obj["Z"])
        setup = build_setup(int(obj["k"]), int(obj["m"]), z)
    except (KeyError, TypeError, ValueError) as exc:
        raise UserInputError(f"{path}: not a valid setup file: {exc}") from exc
    stored_kernel = obj.get("kernel")
    if stored_kernel is not None:
        stated = tuple(as_rational(s) for s in stored_kernel)
        if setup.kernel_gen is None or stated != setup.kernel_gen:
            raise UserInputError(f"{path}: stored kernel does not match the matrix")
    if "allMinorsPositive" in obj and bool(obj["allMinorsPositive"]) != setup.all_minors_positive:
        raise UserInputError(f"{path}: stored positivity flag does not match the matrix")
    return setup


# -- deterministic sampling helpers ------------------------------------------


def trial_rng(seed: int, trial: int) -> Random:
    return Random(seed * 1_000_003 + trial + 1)


def draw_nodes(rng: Random, count: int, lo: Fraction, hi: Fraction) -> list[Fraction]:
    """Distinct increasing rationals in [lo, hi] on a fixed 64-step grid."""
    if count > 65:
        raise UserInputError(f"cannot draw {count} distinct nodes from a 65-point grid")
    span = hi - lo
    picks: set[Fraction] = set()
    while len(picks) < count:
        picks.add(lo + span * Fraction(rng.randint(0, 64), 64))
    return sorted(picks)


def random_positive_setup(
    rng: Random, k: int, m: int, n: int, lo: Fraction, hi: Fraction
) -> AmplituhedronSetup:
    """Setup whose Z is a Vandermonde matrix at random increasing nodes."""
    nodes = draw_nodes(rng, n, lo, hi)
    z = RationalMatrix([[x ** i for x in nodes] for i in range(k + m)])
    return build_setup(k, m, z)


def random_top_cell_point(
    rng: Random, k: int, n: int, lo: Fraction, hi: Fraction
) -> TNNPoint:
    """Random totally positive representative: scaled Vandermonde columns.

    Positive column scales keep every maximal minor strictly positive,
    so the point stays in the top cell while varying more than the nodes
    alone allow (for k = 1 the bare Vandermonde row is constant).
    """
    nodes = draw_nodes(rng, n, lo, hi)
    scales = [Fraction(rng.randint(1, 12), rng.randint(1, 12)) for _ in range(n)]
    matrix = RationalMatrix(
        [[s * (x ** i) for s, x in zip(scales, nodes)] for i in range(k)]
    )
    return TNNPoint.from_matrix(matrix)


# -- subcommands --------------------------------------------------------------


def _emit(report: Report, out: str | None) -> int:
    if out:
        write_json(Path(out), report.to_json_dict())
    report.print_human()
    return EXIT_OK if report.all_ok else EXIT_FALSE_VERDICT


def cmd_check_tnn(args: argparse.Namespace) -> int:
    matrix = load_matrix(args.matrix)
    result = check_tnn(matrix)
    report = Report(
        command="check-tnn",
        inputs_digest=digest_of(matrix.to_json_dict()),
        verdicts=[("totally_nonnegative", result.is_tnn)],
        counters={"rows": matrix.rows, "cols": matrix.cols},
    )
    if result.first_violation is not None:
        subset, value = result.first_violation
        print(
            f"violation: minor on columns {list(subset.members)} = {rational_to_string(value)}"
        )
    if args.out:
        payload = report.to_json_dict()
        payload["tnnReport"] = result.to_json_dict()
        write_json(Path(args.out), payload)
    report.print_human()
    return EXIT_OK if report.all_ok else EXIT_FALSE_VERDICT


def cmd_cell_member(args: argparse.Namespace) -> int:
    matrix = load_matrix(args.matrix)
    cell = load_cell(args.cell)
    member = in_closed_cell(matrix, cell)
    report = Report(
        command="cell-member",
        inputs_digest=digest_of([matrix.to_json_dict(), cell.to_json_dict()]),
        verdicts=[("in_closed_cell", member)],
    )
    return _emit(report, args.out)


def cmd_sample(args: argparse.Namespace) -> int:
    if args.nodes:
        nodes = [as_rational(tok) for tok in args.nodes.split(",")]
    else:
        nodes = [Fraction(i) for i in range(1, args.n + 1)]
    point = sample_top_cell(args.k, args.n, nodes)
    payload = point.matrix.to_json_dict()
    if args.out:
        write_json(Path(args.out), payload)
    else:
        sys.stdout.write(canonical_json(payload))
    report = Report(
        command="sample",
        inputs_digest=digest_of({"k": args.k, "n": args.n, "nodes": [rational_to_string(x) for x in nodes]}),
        verdicts=[("sampled_point_totally_positive", all(v > 0 for v in point.minors.values()))],
        artifacts=[args.out] if args.out else [],
    )
    report.print_human()
    return EXIT_OK if report.all_ok else EXIT_FALSE_VERDICT


def cmd_map(args: argparse.Namespace) -> int:
    setup = load_setup(args.setup)
    matrix = load_matrix(args.matrix)
    mapped = hat_map(setup, matrix)
    payload = mapped.to_json_dict()
    if args.out:
        write_json(Path(args.out), payload)
    else:
        sys.stdout.write(canonical_json(payload))
    report = Report(
        command="map",
        inputs_digest=digest_of([setup.to_json_dict(), matrix.to_json_dict()]),
        verdicts=[("image_rank_full", mapped.image_rank == setup.k)],
        counters={"imageRank": mapped.image_rank, "sourceRank": mapped.source_rank},
        artifacts=[args.out] if args.out else [],
    )
    report.print_human()
    return EXIT_OK if report.all_ok else EXIT_FALSE_VERDICT


def cmd_fiber_check(args: argparse.Namespace) -> int:
    setup = load_setup(args.setup)
    u = load_matrix(args.u)
    v = load_matrix(args.v)
    cell = load_cell(args.cell) if args.cell else PositroidCellSpec.top_cell(setup.k, setup.n)
    cert = convexity_certificate(setup, cell, u, v)
    payload = cert.to_json_dict()
    if args.out:
        write_json(Path(args.out), payload)
    else:
        sys.stdout.write(canonical_json(payload))
    report = Report(
        command="fiber-check",
        inputs_digest=digest_of(
            [setup.to_json_dict(), u.to_json_dict(), v.to_json_dict(), cell.to_json_dict()]
        ),
        verdicts=[("convexity_certificate_valid", cert.verdict)],
        artifacts=[args.out] if args.out else [],
    )
    report.print_human()
    if not cert.verdict:
        raise InternalConsistencyError(
            "convexity certificate verdict is false for same-cell, same-fiber inputs"
        )
    return EXIT_OK


def cmd_fiber_campaign(args: argparse.Namespace) -> int:
    if args.n is not None and args.n != args.k + args.m + 1:
        raise UserInputError(
            f"fiber campaigns need n = k+m+1 = {args.k + args.m + 1}, got n={args.n}"
        )
    config = CampaignConfig(
        seed=args.seed,
        trials=args.trials,
        k=args.k,
        m=args.m,
        node_lo=as_rational(args.node_lo),
        node_hi=as_rational(args.node_hi),
        zero_cols=tuple(sorted(set(args.zero_col or []))),
    )
    out_dir = Path(args.out_dir) if args.out_dir else None
    setup_rng = trial_rng(config.seed, -1)
    setup = random_positive_setup(
        setup_rng, config.k, config.m, config.n, config.node_lo, config.node_hi
    )
    artifacts: list[str] = []
    counters = {
        "trials": config.trials,
        "nontrivial_pairs": 0,
        "degenerate_pairs": 0,
        "accepted": 0,
        "rejected": 0,
    }
    all_true = True
    for t in range(config.trials):
        rng = trial_rng(config.seed, t)
        point = random_top_cell_point(rng, config.k, config.n, config.node_lo, config.node_hi)
        if config.zero_cols:
            zeroed = zero_columns(point, IndexSubset(config.zero_cols))
            point = TNNPoint.from_matrix(zeroed)
            cell = matroid_of(point)
        else:
            cell = PositroidCellSpec.top_cell(config.k, config.n)
        pair = sample_fiber_partner(setup, cell, point, rng, stats=counters)
        cert = convexity_certificate(setup, cell, pair.u, pair.v)
        if any(entry != 0 for entry in pair.x):
            counters["nontrivial_pairs"] += 1
        else:
            counters["degenerate_pairs"] += 1
        all_true = all_true and cert.verdict
        if out_dir is not None:
            name = f"certificate_{t:05d}.json"
            write_json(out_dir / name, cert.to_json_dict())
            # recorded relative to out_dir so identical configs give
            # byte-identical reports regardless of where they are written
            artifacts.append(name)
        if not cert.verdict:
            raise InternalConsistencyError(f"trial {t}: convexity certificate verdict false")
        if (t + 1) % 100 == 0:
            log.info("fiber campaign: %d/%d trials done", t + 1, config.trials)
    report = Report(
        command="fiber-campaign",
        inputs_digest=digest_of(config.to_json_dict()),
        verdicts=[("all_certificates_valid", all_true)],
        counters=counters,
        artifacts=artifacts,
    )
    if out_dir is not None:
        write_json(out_dir / "report.json", report.to_json_dict())
        print(f"artifacts in {out_dir}")
    report.print_human()
    return EXIT_OK if report.all_ok else EXIT_FALSE_VERDICT


def cmd_z0(args: argparse.Namespace) -> int:
    setup = build_z0(args.k, args.m, precision_digits=args.precision)
    payload = setup.to_json_dict()
    if args.out:
        write_json(Path(args.out), payload)
    else:
        sys.stdout.write(canonical_json(payload))
    report = Report(
        command="z0",
        inputs_digest=digest_of({"k": args.k, "m": args.m, "precision": args.precision}),
        verdicts=[
            ("all_minors_positive", setup.all_minors_positive),
            ("kernel_sign_alternating", bool(setup.kernel_alternating)),
        ],
        artifacts=[args.out] if args.out else [],
    )
    report.print_human()
    return EXIT_OK if report.all_ok else EXIT_FALSE_VERDICT


def cmd_embed(args: argparse.Namespace) -> int:
    setup = load_setup(args.setup)
    matrix = load_matrix(args.matrix)
    projection = embed_point(setup, matrix)
    payload = projection.entries.to_json_dict()
    if args.out:
        write_json(Path(args.out), payload)
    else:
        sys.stdout.write(canonical_json(payload))
    report = Report(
        command="embed",
        inputs_digest=digest_of([setup.to_json_dict(), matrix.to_json_dict()]),
        verdicts=[("embedding_computed", True)],
        counters={"d": projection.entries.rows},
        artifacts=[args.out] if args.out else [],
    )
    report.print_human()
    return EXIT_OK


def cmd_equivalence(args: argparse.Namespace) -> int:
    setup_a = load_setup(args.setup_a)
    setup_b = load_setup(args.setup_b)
    cert = construct_equivalence(setup_a, setup_b)
    payload = cert.to_json_dict()
    if args.out:
        write_json(Path(args.out), payload)
    else:
        sys.stdout.write(canonical_json(payload))
    rng = trial_rng(args.seed, 0)
    transports_ok = True
    for _ in range(args.spot_checks):
        point = random_top_cell_point(rng, setup_a.k, setup_a.n, Fraction(1), Fraction(10))
        transports_ok = transports_ok and equivalence_transport_check(cert, point)
    report = Report(
        command="equivalence",
        inputs_digest=digest_of([setup_a.to_json_dict(), setup_b.to_json_dict()]),
        verdicts=[
            ("certificate_exact", cert.z_prime == cert.c @ cert.z @ cert.d_matrix),
            ("det_C_positive", cert.det_c > 0),
            ("D_diagonal_positive", all(x > 0 for x in cert.d_diag)),
            ("transport_spot_checks", transports_ok),
        ],
        counters={"spotChecks": args.spot_checks},
        artifacts=[args.out] if args.out else [],
    )
    report.print_human()
    return EXIT_OK if report.all_ok else EXIT_FALSE_VERDICT


def _recheck_fiber_certificate(obj: Mapping) -> list[tuple[str, bool]]:
    """Recompute a stored convexity verdict from its own coefficients."""
    cell = PositroidCellSpec.from_json_dict(obj["cell"])
    nonbases = cell.nonbases
    supported = True
    for entry in obj["minors"]:
        alpha = as_rational(entry["alpha"])
        beta = as_rational(entry["beta"])
        subset = IndexSubset(tuple(entry["cols"]))
        if alpha < 0 or alpha + beta < 0:
            supported = False
        if subset in nonbases and (alpha != 0 or beta != 0):
            supported = False
    stored = bool(obj["verdict"])
    return [("verdict", stored), ("coefficients_support_verdict", supported == stored)]


def _recheck_equivalence_certificate(obj: Mapping) -> list[tuple[str, bool]]:
    """Re-verify the identity Z' = C Z D of a stored certificate exactly."""
    z = RationalMatrix.from_json_dict(obj["Z"])
    z_prime = RationalMatrix.from_json_dict(obj["Zprime"])
    c = RationalMatrix.from_json_dict(obj["C"])
    d_diag = [as_rational(s) for s in obj["D_diag"]]
    det_c = as_rational(obj["detC"])
    from .exact_linalg import det as exact_det

    return [
        ("identity_exact", c @ z @ RationalMatrix.diagonal(d_diag) == z_prime),
        ("det_C_matches", exact_det(c) == det_c),
        ("det_C_positive", det_c > 0),
        ("D_diagonal_positive", all(x > 0 for x in d_diag)),
    ]


def cmd_report(args: argparse.Namespace) -> int:
    all_ok = True
    for path in args.files:
        obj = load_json(path)
        if "verdicts" in obj:
            verdicts = [(v["name"], bool(v["ok"])) for v in obj["verdicts"]]
        elif "minors" in obj and "verdict" in obj:
            verdicts = _recheck_fiber_certificate(obj)
        elif "detC" in obj:
            verdicts = _recheck_equivalence_certificate(obj)
        else:
            raise UserInputError(f"{path}: no verdicts found")
        for name, ok in verdicts:
            print(f"{path}: [{'PASS' if ok else 'FAIL'}] {name}")
            all_ok = all_ok and ok
    return EXIT_OK if all_ok else EXIT_FALSE_VERDICT


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tnngrass",
        description="Exact computations with totally nonnegative Grassmannians and their images.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-tnn", help="test all maximal minors for nonnegativity")
    p.add_argument("matrix")
    p.add_argument("--out")
    p.set_defaults(func=cmd_check_tnn)

    p = sub.add_parser("cell-member", help="closed-cell membership of a representative")
    p.add_argument("matrix")
    p.add_argument("cell")
    p.add_argument("--out")
    p.set_defaults(func=cmd_cell_member)

    p = sub.add_parser("sample", help="write a totally positive Vandermonde representative")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--nodes", help="comma-separated rationals, default 1..n")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("map", help="apply V -> V Z^T to a representative")
    p.add_argument("setup")
    p.add_argument("matrix")
    p.add_argument("--out")
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("fiber-check", help="convexity certificate for two same-fiber points")
    p.add_argument("setup")
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("--cell")
    p.add_argument("--out")
    p.set_defaults(func=cmd_fiber_check)

    p = sub.add_parser("fiber-campaign", help="seeded batch of convexity certificates")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, help="must equal k+m+1; present for explicitness")
    p.add_argument("--node-lo", default="1")
    p.add_argument("--node-hi", default="10")
    p.add_argument("--zero-col", type=int, action="append", help="column to zero (repeatable)")
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_fiber_campaign)

    p = sub.add_parser("z0", help="cyclically symmetric setup, exactly verified")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--precision", type=int, default=12)
    p.add_argument("--out")
    p.set_defaults(func=cmd_z0)

    p = sub.add_parser("embed", help="projection-matrix embedding of a mapped point")
    p.add_argument("setup")
    p.add_argument("matrix")
    p.add_argument("--out")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("equivalence", help="projective equivalence certificate of two setups")
    p.add_argument("setup_a")
    p.add_argument("setup_b")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--spot-checks", type=int, default=10)
    p.add_argument("--out")
    p.set_defaults(func=cmd_equivalence)

    p = sub.add_parser("report", help="summarize verdicts of report or certificate files")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(
        level=os.environ.get("AMP_LOG", "WARNING").upper(),
        format="%(levelname)s %(name)s: %(message)s",
    )
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UserInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalConsistencyError as exc:
        print(f"FALSIFICATION: {exc}", file=sys.stderr)
        print(
            "An exactly-checked identity that is mathematically guaranteed came out false.",
            file=sys.stderr,
        )
        return EXIT_FALSIFIED


if __name__ == "__main__":
    sys.exit(main())
