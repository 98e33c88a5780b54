"""Command-line interface.

Subcommands: decode, encode, dist, matrix, neighbors, consolidate,
analyze, embed. All failures print one ``E<category>: message`` line to
stderr and exit nonzero; given the same inputs and seed every subcommand
writes byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from functools import partial
from pathlib import Path

from .codec import TrajectoryDescriptor, build_code, parse_code
from .errors import CliError, MotionCodesError
from .metrics import (
    WeightConfig,
    consolidate,
    distance_matrix,
    hamming,
    nearest,
    weighted_distance,
)
from .registry import bundled_registry, load_registry
from .trajectory import analysis_report, load_trajectory, prismatic_analysis, revolute_analysis
from .embedding import TsneParams, tsne
from .wordvec import (
    cosine_distance_matrix,
    default_substitutions,
    load_substitutions,
    parse_word_vectors,
)


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors match the E-prefix contract."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"Ecli: {message}", file=sys.stderr)
        raise SystemExit(2)


def _emit(text: str, args) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_json(payload, args) -> None:
    _emit(json.dumps(payload, indent=2) + "\n", args)


def _csv_text(header: list[str], rows: list[list]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _check_format(args, supported: tuple[str, ...]) -> str:
    chosen = args.format or supported[0]
    if chosen not in supported:
        raise CliError(
            f"format {chosen!r} is not supported here; choose from {', '.join(supported)}"
        )
    return chosen


def _load_registry(args):
    return load_registry(args.registry) if args.registry else bundled_registry()


def _build_metric(args):
    """Resolve metric flags into (callable, name).

    A preset, explicit weights, or a comparison flag implies the
    weighted metric; the bare weighted metric without any of those is
    rejected so weighting is always explicit.
    """
    weight_options = (
        args.preset is not None
        or args.alpha is not None
        or args.beta is not None
        or args.unit is not None
        or args.alpha_contact_only
        or args.trajectory_bitwise
    )
    name = args.metric or ("weighted" if weight_options else "hamming")
    if name == "hamming":
        if weight_options:
            raise CliError("weight options require --metric weighted")
        return hamming, "hamming"
    if args.preset == "contact":
        weights = WeightConfig.contact_priority()
    elif args.preset == "trajectory":
        weights = WeightConfig.trajectory_priority()
    elif args.alpha is not None or args.beta is not None or args.unit is not None:
        weights = WeightConfig()
    else:
        raise CliError(
            "the weighted metric needs --preset contact|trajectory "
            "or explicit --alpha/--beta/--unit"
        )
    weights = WeightConfig(
        alpha=args.alpha if args.alpha is not None else weights.alpha,
        beta=args.beta if args.beta is not None else weights.beta,
        unit=args.unit if args.unit is not None else weights.unit,
    )
    metric = partial(
        weighted_distance,
        weights=weights,
        alpha_contact_only=args.alpha_contact_only,
        trajectory_bitwise=args.trajectory_bitwise,
    )
    return metric, "weighted"


def _parse_trajectory_flag(text: str, side: str) -> TrajectoryDescriptor:
    if "," in text:
        fields = [field.strip() for field in text.split(",")]
        if len(fields) != 3:
            raise CliError(f"--{side}-trajectory triple needs 3 values, got {len(fields)}")
        try:
            return TrajectoryDescriptor(fields[0] in ("1", "true"), int(fields[1]), int(fields[2]))
        except (ValueError, MotionCodesError) as exc:
            raise CliError(f"--{side}-trajectory: {exc}") from None
    try:
        return TrajectoryDescriptor.from_bits(text)
    except MotionCodesError as exc:
        raise CliError(f"--{side}-trajectory: {exc}") from None


def cmd_decode(args) -> int:
    chosen = _check_format(args, ("text", "json"))
    code = parse_code(args.code)
    rows = code.describe()
    if chosen == "json":
        _emit_json(
            {
                "code": code.bits,
                "attributes": [
                    {"attribute": name, "value": value, "bits": bits} for name, value, bits in rows
                ],
            },
            args,
        )
    else:
        lines = [f"{name}: {value}  [{bits}]" for name, value, bits in rows]
        _emit("\n".join(lines) + "\n", args)
    return 0


def cmd_encode(args) -> int:
    chosen = _check_format(args, ("text", "json"))
    code = build_code(
        contact=args.contact,
        engagement=args.engagement,
        duration=args.duration,
        active_outcome=args.active_outcome,
        passive_outcome=args.passive_outcome,
        active_trajectory=_parse_trajectory_flag(args.active_trajectory, "active"),
        passive_trajectory=_parse_trajectory_flag(args.passive_trajectory, "passive"),
        tool=args.tool,
    )
    if chosen == "json":
        _emit_json({"code": code.bits}, args)
    else:
        _emit(code.bits + "\n", args)
    return 0


def cmd_dist(args) -> int:
    chosen = _check_format(args, ("text", "json"))
    registry = _load_registry(args)
    metric, name = _build_metric(args)
    value = metric(registry.code_for_label(args.label_a), registry.code_for_label(args.label_b))
    if chosen == "json":
        _emit_json(
            {
                "label_a": args.label_a,
                "label_b": args.label_b,
                "metric": name,
                "distance": float(value),
            },
            args,
        )
    else:
        _emit(f"{value:g}\n", args)
    return 0


def cmd_matrix(args) -> int:
    chosen = _check_format(args, ("csv", "json"))
    registry = _load_registry(args)
    metric, _ = _build_metric(args)
    matrix = distance_matrix(registry, metric)
    if chosen == "json":
        _emit_json(
            {"labels": list(matrix.labels), "values": [[float(v) for v in row] for row in matrix.values]},
            args,
        )
    else:
        _emit(matrix.to_csv_text(), args)
    return 0


def cmd_neighbors(args) -> int:
    chosen = _check_format(args, ("text", "csv", "json"))
    registry = _load_registry(args)
    metric, _ = _build_metric(args)
    query = args.query
    if len(query) == 18 and set(query) <= {"0", "1"}:
        query = parse_code(query)
    results = nearest(query, registry, metric, k=args.k)
    if chosen == "json":
        _emit_json([{"label": label, "distance": d} for label, d in results], args)
    elif chosen == "csv":
        _emit(_csv_text(["label", "distance"], [[label, f"{d:g}"] for label, d in results]), args)
    else:
        _emit("".join(f"{label}\t{d:g}\n" for label, d in results), args)
    return 0


def cmd_consolidate(args) -> int:
    chosen = _check_format(args, ("text", "csv", "json"))
    registry = _load_registry(args)
    groups = consolidate(registry)
    coded = [(registry.code_for_label(group[0]).bits, group) for group in groups]
    if chosen == "json":
        _emit_json([{"code": code, "labels": group} for code, group in coded], args)
    elif chosen == "csv":
        rows = [[code, label] for code, group in coded for label in group]
        _emit(_csv_text(["code", "label"], rows), args)
    else:
        _emit("".join(f"{code}  {' | '.join(group)}\n" for code, group in coded), args)
    return 0


def cmd_analyze(args) -> int:
    _check_format(args, ("json",))
    traj = load_trajectory(args.trajectory)
    report = analysis_report(
        traj,
        variance_threshold=args.variance_threshold,
        motion_floor=args.motion_floor,
        rotation_threshold_deg=args.rotation_threshold,
        min_period_count=args.min_period_count,
        autocorr_threshold=args.autocorr_threshold,
    )
    if args.figures:
        from .figures import save_analysis_figures

        prismatic = prismatic_analysis(traj, args.variance_threshold, args.motion_floor)
        revolute = revolute_analysis(traj, args.rotation_threshold)
        save_analysis_figures(traj, prismatic, revolute, args.figures, Path(args.trajectory).stem)
    _emit_json(report, args)
    if args.out:
        sys.stdout.write(f"substring: {report['substring']}\n")
    return 0


def cmd_embed(args) -> int:
    chosen = _check_format(args, ("csv", "svg", "json"))
    registry = _load_registry(args)
    if args.word_vectors:
        metric_flags = (
            args.metric is not None
            or args.preset is not None
            or args.alpha is not None
            or args.beta is not None
            or args.unit is not None
            or args.alpha_contact_only
            or args.trajectory_bitwise
        )
        if metric_flags:
            raise CliError("word-vector embeddings use cosine distances; metric options do not apply")
        table = parse_word_vectors(args.word_vectors)
        if args.no_substitutions:
            substitutions = {}
        elif args.substitutions:
            substitutions = load_substitutions(args.substitutions)
        else:
            substitutions = default_substitutions()
        distances = cosine_distance_matrix(
            table, registry.labels, substitutions, pca_dims=args.pca_dims
        )
    else:
        metric, _ = _build_metric(args)
        distances = distance_matrix(registry, metric)
    params = TsneParams(
        perplexity=args.perplexity,
        early_exaggeration=args.early_exaggeration,
        exaggeration_iters=args.exaggeration_iters,
        total_iters=args.iters,
        learning_rate=args.learning_rate,
        seed=args.seed,
    )
    embedding = tsne(distances, params)
    if chosen == "svg":
        _emit(embedding.to_svg_text(), args)
    elif chosen == "json":
        _emit_json(embedding.to_dict(), args)
    else:
        _emit(embedding.to_csv_text(), args)
    if args.svg:
        Path(args.svg).write_text(embedding.to_svg_text(), encoding="utf-8")
    if args.csv:
        Path(args.csv).write_text(embedding.to_csv_text(), encoding="utf-8")
    if args.figures:
        from .figures import save_embedding_figure

        figures_dir = Path(args.figures)
        figures_dir.mkdir(parents=True, exist_ok=True)
        save_embedding_figure(embedding, figures_dir / "embedding.png")
    return 0


def _add_metric_flags(parser) -> None:
    parser.add_argument("--metric", choices=("hamming", "weighted"), help="distance metric")
    parser.add_argument(
        "--preset", choices=("contact", "trajectory"), help="weighted-metric weight preset"
    )
    parser.add_argument("--alpha", type=float, help="contact/structural bit weight")
    parser.add_argument("--beta", type=float, help="trajectory DOF component weight")
    parser.add_argument("--unit", type=float, help="recurrence/tool bit weight")
    parser.add_argument(
        "--alpha-contact-only",
        action="store_true",
        help="apply alpha to bits 0-2 only; structural bits cost unit",
    )
    parser.add_argument(
        "--trajectory-bitwise",
        action="store_true",
        help="compare DOF fields bit by bit at unit cost",
    )


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--registry", metavar="PATH", help="registry TSV (default: bundled)")
    common.add_argument("--seed", type=int, default=0, metavar="N", help="random seed")
    common.add_argument("--out", metavar="PATH", help="write output to a file instead of stdout")
    common.add_argument("--format", choices=("json", "csv", "svg"), help="output format")

    parser = _Parser(prog="motioncodes", description=__doc__.splitlines()[0])
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    decode = subparsers.add_parser("decode", parents=[common], help="expand a code into attributes")
    decode.add_argument("code", help="18-bit motion code")
    decode.set_defaults(func=cmd_decode)

    encode = subparsers.add_parser("encode", parents=[common], help="build a code from attributes")
    contact_group = encode.add_mutually_exclusive_group(required=True)
    contact_group.add_argument("--contact", dest="contact", action="store_true")
    contact_group.add_argument("--non-contact", dest="contact", action="store_false")
    encode.add_argument("--engagement", choices=("rigid", "soft"))
    encode.add_argument("--duration", choices=("discontinuous", "continuous"))
    encode.add_argument("--active-outcome", choices=("none", "temporary", "permanent"), default="none")
    encode.add_argument("--passive-outcome", choices=("none", "temporary", "permanent"), default="none")
    encode.add_argument(
        "--active-trajectory",
        default="00000",
        metavar="SPEC",
        help="5-bit substring or recurrent,prismatic,revolute triple",
    )
    encode.add_argument("--passive-trajectory", default="00000", metavar="SPEC")
    encode.add_argument("--tool", action="store_true", help="hand with tool")
    encode.set_defaults(func=cmd_encode)

    dist = subparsers.add_parser("dist", parents=[common], help="distance between two labels")
    dist.add_argument("label_a")
    dist.add_argument("label_b")
    _add_metric_flags(dist)
    dist.set_defaults(func=cmd_dist)

    matrix = subparsers.add_parser("matrix", parents=[common], help="pairwise distance matrix")
    _add_metric_flags(matrix)
    matrix.set_defaults(func=cmd_matrix)

    neighbors = subparsers.add_parser("neighbors", parents=[common], help="nearest labels")
    neighbors.add_argument("query", help="registry label or raw 18-bit code")
    neighbors.add_argument("-k", type=int, default=5, help="how many neighbors")
    _add_metric_flags(neighbors)
    neighbors.set_defaults(func=cmd_neighbors)

    consolidate_parser = subparsers.add_parser(
        "consolidate", parents=[common], help="group labels sharing a code"
    )
    consolidate_parser.set_defaults(func=cmd_consolidate)

    analyze = subparsers.add_parser(
        "analyze", parents=[common], help="derive trajectory attributes from a pose CSV"
    )
    analyze.add_argument("trajectory", metavar="CSV")
    analyze.add_argument("--variance-threshold", type=float, default=0.90)
    analyze.add_argument("--motion-floor", type=float, default=1e-3, metavar="METERS")
    analyze.add_argument("--rotation-threshold", type=float, default=30.0, metavar="DEG")
    analyze.add_argument("--min-period-count", type=int, default=2)
    analyze.add_argument("--autocorr-threshold", type=float, default=0.5)
    analyze.add_argument("--figures", metavar="DIR", help="also render figures into DIR")
    analyze.set_defaults(func=cmd_analyze)

    embed = subparsers.add_parser("embed", parents=[common], help="2-D t-SNE embedding")
    _add_metric_flags(embed)
    embed.add_argument("--word-vectors", metavar="PATH", help="embed word vectors instead of codes")
    embed.add_argument("--substitutions", metavar="PATH", help="label substitution TSV")
    embed.add_argument(
        "--no-substitutions", action="store_true", help="look labels up verbatim"
    )
    embed.add_argument("--pca-dims", type=int, default=50, help="PCA target for word vectors")
    embed.add_argument("--perplexity", type=float, default=12.0)
    embed.add_argument("--early-exaggeration", type=float, default=36.0)
    embed.add_argument("--exaggeration-iters", type=int, default=250)
    embed.add_argument("--iters", type=int, default=1000)
    embed.add_argument("--learning-rate", type=float, default=200.0)
    embed.add_argument("--svg", metavar="PATH", help="also write an SVG scatter")
    embed.add_argument("--csv", metavar="PATH", help="also write a CSV layout")
    embed.add_argument("--figures", metavar="DIR", help="also render a figure into DIR")
    embed.set_defaults(func=cmd_embed)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MotionCodesError as exc:
        print(f"E{exc.category}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
