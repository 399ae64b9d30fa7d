# coding: utf-8
"""CLI front end to detect link and node communities, generate planted
benchmarks, score predictions, and export plot data.


CONFIGURE
---------
Detector defaults are read from ~/.config/linkcomm/linkcomm.cfg (or the file
named by $LINKCOMM_CONFIG), INI format:

    [detect]
    step_mode = fixed
    step_cap = 100
    seed_trials = 1
    rng_seed = 0
    min_edges = 2
    mixing_tol = 1e-9

    [spectral]
    tol = 1e-8
    max_iter =
    fallback = yes

    [bench]
    instances = 20
    master_seed = 0

Write this file with ``linkcomm config --init``.  Command-line flags override it.

DETECT
------
Link communities (and the node cover they induce) of an edge list:

    linkcomm detect-links karate.txt --step-mode spectral -o out/karate

writes out/karate.partition, out/karate.cover, out/karate.json and
out/karate.manifest.json.  Without -o the summary is printed.  With --bisect
only the first bipartition is made, as in the benchmark protocol.

Node communities:

    linkcomm detect-nodes lfr.txt --truth lfr.truth

BENCHMARK
---------
    linkcomm gen-bkn --x 475 --y 475 --z 50 --k 12 --seed 1 -o bkn
    linkcomm eval bkn.cover bkn.truth --mode cover
    linkcomm sweep --kind k --values 4 8 12 --x 475 --y 475 --z 50 -o sweep

PLOT DATA
---------
    linkcomm spectral karate.txt
    linkcomm dump-alpha karate.txt --seed-edge 1 2 --steps 16 -o alpha
    linkcomm stats words.txt -o words

REPRODUCE
---------
Every command run with -o records its arguments in PREFIX.manifest.json;
``linkcomm rerun PREFIX.manifest.json`` writes the same outputs again.

Exit status is 0 on success, 1 for usage errors, 2 for unreadable or invalid
input, and 3 when the eigensolver fails and fallback is disabled.
"""
# stdlib imports
import argparse
from argparse import ArgumentParser, _SubParsersAction
import json
import logging
import math
import os
import sys
import time
from typing import Tuple, Sequence, Optional, NamedTuple


# 3rd party imports
import numpy as np


# Local imports
from linkcomm import CONFIG, __version__
from linkcomm.config import CONFIG_PATH
from linkcomm.graph import (
    GraphError,
    EmptyGraph,
    NodeLabelMap,
    load_edge_list,
    write_edge_list,
)
from linkcomm.linkdyn import build_transition, unit_distribution, propagate
from linkcomm.spectral import (
    SpectralError,
    StepMode,
    MarkovGenerator,
    estimate_lambda2,
)
from linkcomm.partition import (
    DetectorConfig,
    uelc,
    bisect,
    node_cover_from_links,
)
from linkcomm.nodecomm import uelc_nodes
from linkcomm.bench import (
    ProtocolError,
    BknConfig,
    SweepKind,
    generate_bkn,
    cover_statistics,
    evaluate_cover,
    evaluate_partition,
    sweep,
    report,
)


#  Exit statuses
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_SPECTRAL = 3


class UsageError(Exception):
    """Exception raised by a command for arguments that don't fit together."""


class RunManifest(NamedTuple):
    """Everything needed to repeat a run.

    Attributes:
        command: subcommand name.
        argv: full argument list, replayed by `rerun`.
        inputs: input file paths.
        config: echo of the detector settings in effect.
        version: linkcomm version.
        wall_time: seconds spent in the command.
    """

    command: str
    argv: Tuple[str, ...]
    inputs: Tuple[str, ...]
    config: dict
    version: str
    wall_time: float


class LinkcommArgumentParser(ArgumentParser):
    """ArgumentParser exiting with status 1 on usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


###############################################################################
# HELPERS
###############################################################################
def _read_graph(path: str):
    with open(path, "rb") as file:
        return load_edge_list(file)


def _detector(args: argparse.Namespace) -> DetectorConfig:
    """DetectorConfig from CONFIG, overridden by CLI flags."""
    overrides = {"mode": StepMode(args.step_mode), "cap": args.step_cap}
    if args.no_fallback:
        overrides["fallback"] = False
    return CONFIG.detector_config(
        policy=CONFIG.step_policy(**overrides),
        rng_seed=args.rng_seed,
        seed_trials=args.seed_trials,
        min_edges_leaf=args.min_edges,
        threads=args.threads,
    )


def _config_echo(detector: DetectorConfig) -> dict:
    policy = detector.policy
    return {
        "step_mode": policy.mode.value,
        "step_cap": policy.cap,
        "tol": policy.tol,
        "max_iter": policy.max_iter,
        "fallback": policy.fallback,
        "seed_trials": detector.seed_trials,
        "rng_seed": detector.rng_seed,
        "min_edges": detector.min_edges_leaf,
        "mixing_tol": detector.mixing_tol,
    }


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(args: argparse.Namespace, suffix: str, text: str) -> None:
    """Write `text` to PREFIX + suffix, or to stdout without --output."""
    if args.output is None:
        sys.stdout.write(text)
        return
    path = args.output + suffix
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", newline="") as file:
        file.write(text)
    logging.info(f"Wrote {path}")


def _write_text(args: argparse.Namespace, suffix: str, writer) -> None:
    """Write through `writer(stream)` to PREFIX + suffix; skipped without --output."""
    if args.output is None:
        return
    path = args.output + suffix
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", newline="") as file:
        writer(file)
    logging.info(f"Wrote {path}")


def _summary(args: argparse.Namespace, summary: dict, text: str) -> None:
    """Summary as PREFIX.json, or printed in --format."""
    if args.output is not None:
        _emit(args, ".json", _dumps(summary))
    elif args.format == "json":
        _emit(args, "", _dumps(summary))
    else:
        _emit(args, "", text)


def _labels_text(labels: NodeLabelMap, nodes) -> str:
    return " ".join(labels.label_of(node) for node in sorted(nodes))


###############################################################################
# COMMANDS
###############################################################################
def detect_links(args: argparse.Namespace) -> dict:
    """Link communities of an edge list, plus the node cover they induce."""
    graph, labels = _read_graph(args.file)
    detector = _detector(args)
    echo = _config_echo(detector)

    if args.bisect:
        cover = bisect(graph, detector)
        _write_text(args, ".cover", lambda f: report.write_cover(cover, labels, f))
        overlap = cover.overlap()
        summary = {
            "sizes": [len(cover.members(c)) for c in cover.communities],
            "overlap": [labels.label_of(node) for node in sorted(overlap)],
            "config": echo,
        }
        text = (
            f"bipartition sizes {summary['sizes']}\n"
            f"overlap ({len(overlap)}): {_labels_text(labels, overlap)}\n"
        )
        _summary(args, summary, text)
        return echo

    partition = uelc(graph, detector)
    cover = node_cover_from_links(graph, partition)
    _write_text(
        args,
        ".partition",
        lambda f: report.write_link_partition(graph, labels, partition.labels, f),
    )
    _write_text(args, ".cover", lambda f: report.write_cover(cover, labels, f))

    summary = report.partition_summary(partition, echo)
    summary["overlap"] = [labels.label_of(node) for node in sorted(cover.overlap())]
    lines = [f"T={partition.count}"]
    lines.extend(
        f"community {c.label}: m={c.edges} n={c.nodes} D={c.density:.6f}"
        for c in partition.communities
    )
    lines.append(
        f"overlap ({len(cover.overlap())}): {_labels_text(labels, cover.overlap())}"
    )
    _summary(args, summary, "\n".join(lines) + "\n")
    return echo


def detect_nodes(args: argparse.Namespace) -> dict:
    """Non-overlapping node communities; scored by NMI if --truth is given."""
    graph, labels = _read_graph(args.file)
    detector = _detector(args)
    echo = _config_echo(detector)

    partition = uelc_nodes(graph, detector)
    _write_text(
        args,
        ".partition",
        lambda f: report.write_node_partition(partition.labels, labels, f),
    )
    summary = report.partition_summary(partition, echo)
    lines = [f"T={partition.count}"]
    lines.extend(
        f"community {c.label}: n={c.nodes} m={c.edges} D={c.density:.6f}"
        for c in partition.communities
    )

    if args.truth:
        with open(args.truth, "rb") as file:
            truth = report.read_assignments(file)
        missing = set(labels.labels) - set(truth)
        if missing:
            raise ProtocolError(f"ground truth misses {len(missing)} node(s)")
        planted = [truth[label] for label in labels.labels]
        summary["nmi"] = evaluate_partition(partition.labels, planted).nmi
        lines.append(f"NMI={summary['nmi']:.6f}")

    _summary(args, summary, "\n".join(lines) + "\n")
    return echo


def gen_bkn(args: argparse.Namespace) -> dict:
    """Planted two-community graph with its ground-truth cover."""
    if args.output is None:
        raise UsageError("gen-bkn writes two files and needs --output PREFIX")
    config = BknConfig(x=args.x, y=args.y, z=args.z, k_expected=args.k, seed=args.seed)
    config.validate()
    graph, truth = generate_bkn(config)
    labels = NodeLabelMap.identity(graph.n)
    _write_text(args, ".edges", lambda f: write_edge_list(graph, labels, f))
    _write_text(args, ".truth", lambda f: report.write_cover(truth, labels, f))
    echo = config._asdict()
    _summary(args, {"n": graph.n, "m": graph.m, "bkn": echo}, "")
    return echo


def evaluate(args: argparse.Namespace) -> dict:
    """Score a prediction file against a ground-truth file."""
    if args.mode == "cover":
        with open(args.pred, "rb") as file:
            pred = report.read_memberships(file)
        with open(args.truth, "rb") as file:
            truth = report.read_memberships(file)
        labels = NodeLabelMap.from_labels(
            list(truth) + [label for label in pred if label not in truth]
        )
        metrics = evaluate_cover(
            report.cover_from_memberships(pred, labels),
            report.cover_from_memberships(truth, labels),
        )
    else:
        with open(args.pred, "rb") as file:
            pred = report.read_assignments(file)
        with open(args.truth, "rb") as file:
            truth = report.read_assignments(file)
        if set(pred) != set(truth):
            raise ProtocolError("prediction and ground truth cover different nodes")
        order = list(truth)
        metrics = evaluate_partition(
            [pred[label] for label in order], [truth[label] for label in order]
        )

    summary = report.metric_summary(metrics)
    text = "".join(
        f"{key}={value}\n" for key, value in summary.items() if value is not None
    )
    _summary(args, summary, text)
    return {"mode": args.mode}


def spectral(args: argparse.Namespace) -> dict:
    """λ₂ of the link walk generator and the mixing time 1/λ₂."""
    graph, _ = _read_graph(args.file)
    if graph.m < 2:
        raise EmptyGraph(f"{args.file}: λ₂ needs at least 2 edges, got {graph.m}")
    tol = args.tol if args.tol is not None else CONFIG["spectral"].getfloat("tol")
    estimate = estimate_lambda2(
        MarkovGenerator(build_transition(graph)), tol=tol, max_iter=args.max_iter
    )
    summary = {
        "m": graph.m,
        "lambda2": estimate.value,
        "mixing_time": estimate.mixing_time,
        "steps": math.ceil(estimate.mixing_time),
        "iterations": estimate.iterations,
    }
    text = (
        f"m={graph.m} lambda2={estimate.value:.10f} "
        f"1/lambda2={estimate.mixing_time:.6f} "
        f"steps={summary['steps']} iterations={estimate.iterations}\n"
    )
    _summary(args, summary, text)
    return {"tol": tol, "max_iter": args.max_iter}


def dump_alpha(args: argparse.Namespace) -> dict:
    """α^l of a walk from one link as CSV, with ε = 1/m for reference."""
    graph, labels = _read_graph(args.file)
    try:
        u, v = sorted(labels.id_of(label) for label in args.seed_edge)
    except KeyError as exc:
        raise ProtocolError(f"unknown node label {exc}")
    matches = np.flatnonzero((graph.edges[:, 0] == u) & (graph.edges[:, 1] == v))
    if matches.size == 0:
        raise ProtocolError(f"no edge {args.seed_edge[0]} {args.seed_edge[1]}")
    if args.steps < 0:
        raise UsageError(f"--steps must be non-negative, got {args.steps}")

    communities = None
    if args.partition:
        with open(args.partition, "rb") as file:
            communities = report.read_link_partition(file, graph, labels)

    alpha = propagate(
        build_transition(graph), unit_distribution(graph.m, int(matches[0])), args.steps
    )
    dataset = report.flatten_alpha(graph, labels, alpha, communities)
    _emit(args, ".alpha.csv", dataset.export("csv"))
    return {"steps": args.steps}


def run_sweep(args: argparse.Namespace) -> dict:
    """FVCC / Jaccard / NMI table over one planted-model parameter."""
    detector = _detector(args)
    bench = CONFIG["bench"]
    instances = args.instances or bench.getint("instances")
    master_seed = (
        args.master_seed if args.master_seed is not None else bench.getint("master_seed")
    )
    base = BknConfig(x=args.x, y=args.y, z=args.z, k_expected=args.k)
    rows = sweep(
        SweepKind(args.kind),
        args.values,
        base,
        instances,
        detector,
        master_seed=master_seed,
        threads=args.threads,
    )
    _emit(args, ".sweep.csv", report.flatten_sweep(rows).export("csv"))
    echo = _config_echo(detector)
    echo.update({"instances": instances, "master_seed": master_seed})
    return echo


def stats(args: argparse.Namespace) -> dict:
    """Cumulative distributions of community size, overlap, membership, degree."""
    graph, _ = _read_graph(args.file)
    detector = _detector(args)
    partition = uelc(graph, detector)
    statistics = cover_statistics(node_cover_from_links(graph, partition), partition)
    for name, distribution in statistics._asdict().items():
        dataset = report.flatten_distribution(distribution)
        if args.output is None:
            sys.stdout.write(f"# {name}\n")
        _emit(args, f".{name}.csv", dataset.export("csv"))
    return _config_echo(detector)


def write_config(args: argparse.Namespace) -> dict:
    """Write the default configuration file."""
    path = args.path or CONFIG_PATH
    if os.path.exists(path) and not args.force:
        raise UsageError(f"{path} exists; pass --force to overwrite it")
    CONFIG.write_default(path)
    print(path)
    return {}


def rerun(args: argparse.Namespace) -> int:
    """Replay the argument list recorded in a run manifest."""
    with open(args.manifest) as file:
        manifest = json.load(file)
    argv = manifest["argv"]
    if argv and argv[0] == "rerun":
        raise UsageError("a manifest can't replay another rerun")
    logging.info(f"Replaying {' '.join(argv)}")
    return main(argv)


###############################################################################
# ARGUMENTS
###############################################################################
def _common_parser() -> ArgumentParser:
    parser = ArgumentParser(add_help=False)
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG"
    )
    parser.add_argument(
        "-o", "--output", default=None, metavar="PREFIX",
        help="Write outputs to files named PREFIX.* (default: print to stdout)",
    )
    parser.add_argument(
        "--format", choices=("text", "json"), default="text",
        help="Summary format on stdout (default: %(default)s)",
    )
    return parser


def _detector_parser() -> ArgumentParser:
    """Detector flags; defaults come from CONFIG."""
    detect = CONFIG["detect"]
    parser = ArgumentParser(add_help=False)
    parser.add_argument(
        "--step-mode", choices=[mode.value for mode in StepMode],
        default=detect["step_mode"], help="Walk length policy (default: %(default)s)",
    )
    parser.add_argument(
        "--step-cap", type=int, default=detect.getint("step_cap"),
        help="Walk length, or its upper bound in spectral mode (default: %(default)s)",
    )
    parser.add_argument(
        "--seed-trials", type=int, default=detect.getint("seed_trials"),
        help="Source links tried per bipartition (default: %(default)s)",
    )
    parser.add_argument(
        "--rng-seed", type=int, default=detect.getint("rng_seed"),
        help="Seed of source link selection (default: %(default)s)",
    )
    parser.add_argument(
        "--min-edges", type=int, default=detect.getint("min_edges"),
        help="Edge sets smaller than this aren't split (default: %(default)s)",
    )
    parser.add_argument(
        "--threads", type=int, default=1,
        help="Worker threads for independent components (default: %(default)s)",
    )
    parser.add_argument(
        "--no-fallback", action="store_true",
        help="Fail (exit 3) instead of using --step-cap when λ₂ can't be computed",
    )
    return parser


def _bkn_arguments(parser: ArgumentParser) -> None:
    parser.add_argument("--x", type=int, default=475, help="Nodes only in community 0")
    parser.add_argument("--y", type=int, default=475, help="Nodes only in community 1")
    parser.add_argument("--z", type=int, default=50, help="Nodes in both communities")
    parser.add_argument("--k", type=float, default=12.0, help="Expected degree <k>")


def make_argparser() -> Tuple[ArgumentParser, _SubParsersAction]:
    """Return subparsers along with the ArgumentParser, so the latter can be extended.
    """
    argparser = LinkcommArgumentParser(
        prog="linkcomm", description="Link community detection by link walk dynamics"
    )
    argparser.add_argument("--version", action="version", version=__version__)
    argparser.set_defaults(func=None)
    subparsers = argparser.add_subparsers(
        dest="command", parser_class=LinkcommArgumentParser
    )
    common, detector = _common_parser(), _detector_parser()

    links_parser = subparsers.add_parser(
        "detect-links", parents=[common, detector], help="Detect link communities"
    )
    links_parser.add_argument("file", help="Edge list")
    links_parser.add_argument(
        "--bisect", action="store_true",
        help="Make only the first bipartition, without the density test",
    )
    links_parser.set_defaults(func=detect_links)

    nodes_parser = subparsers.add_parser(
        "detect-nodes", parents=[common, detector], help="Detect node communities"
    )
    nodes_parser.add_argument("file", help="Edge list")
    nodes_parser.add_argument(
        "--truth", default=None, help="Node partition file to score against (NMI)"
    )
    nodes_parser.set_defaults(func=detect_nodes)

    bkn_parser = subparsers.add_parser(
        "gen-bkn", parents=[common], help="Generate a planted two-community graph"
    )
    _bkn_arguments(bkn_parser)
    bkn_parser.add_argument("--seed", type=int, default=0, help="RNG seed")
    bkn_parser.set_defaults(func=gen_bkn)

    eval_parser = subparsers.add_parser(
        "eval", parents=[common], help="Score a prediction against ground truth"
    )
    eval_parser.add_argument("pred", help="Predicted cover or node partition")
    eval_parser.add_argument("truth", help="Ground-truth cover or node partition")
    eval_parser.add_argument(
        "--mode", choices=("cover", "partition"), default="cover",
        help="cover: FVCC and Jaccard; partition: NMI (default: %(default)s)",
    )
    eval_parser.set_defaults(func=evaluate)

    spectral_parser = subparsers.add_parser(
        "spectral", parents=[common], help="Mixing time 1/λ₂ of the link walk"
    )
    spectral_parser.add_argument("file", help="Edge list")
    spectral_parser.add_argument("--tol", type=float, default=None)
    spectral_parser.add_argument("--max-iter", type=int, default=None)
    spectral_parser.set_defaults(func=spectral)

    alpha_parser = subparsers.add_parser(
        "dump-alpha", parents=[common], help="Dump α^l of one walk as CSV"
    )
    alpha_parser.add_argument("file", help="Edge list")
    alpha_parser.add_argument(
        "--seed-edge", nargs=2, required=True, metavar=("U", "V"),
        help="Node labels of the source link",
    )
    alpha_parser.add_argument("--steps", type=int, required=True, help="Walk length l")
    alpha_parser.add_argument(
        "--partition", default=None, help="Link partition file to label edges with"
    )
    alpha_parser.set_defaults(func=dump_alpha)

    sweep_parser = subparsers.add_parser(
        "sweep", parents=[common, detector], help="Benchmark sweep as CSV"
    )
    sweep_parser.add_argument(
        "--kind", choices=[kind.value for kind in SweepKind], required=True,
        help="k: expected degree; x: larger pure community; z: overlap size",
    )
    sweep_parser.add_argument(
        "--values", nargs="+", type=float, required=True, help="Parameter values"
    )
    _bkn_arguments(sweep_parser)
    sweep_parser.add_argument("--instances", type=int, default=None)
    sweep_parser.add_argument("--master-seed", type=int, default=None)
    sweep_parser.set_defaults(func=run_sweep)

    stats_parser = subparsers.add_parser(
        "stats", parents=[common, detector], help="Cover statistics as CSV"
    )
    stats_parser.add_argument("file", help="Edge list")
    stats_parser.set_defaults(func=stats)

    config_parser = subparsers.add_parser(
        "config", parents=[common], help="Write the default config file"
    )
    config_parser.add_argument("--init", action="store_true", required=True)
    config_parser.add_argument("--path", default=None)
    config_parser.add_argument("--force", action="store_true")
    config_parser.set_defaults(func=write_config)

    rerun_parser = subparsers.add_parser(
        "rerun", parents=[common], help="Repeat the run recorded in a manifest"
    )
    rerun_parser.add_argument("manifest", help="PREFIX.manifest.json")
    rerun_parser.set_defaults(func=rerun)

    return argparser, subparsers


def _inputs(args: argparse.Namespace) -> Tuple[str, ...]:
    names = ("file", "truth", "pred", "partition")
    return tuple(getattr(args, name) for name in names if getattr(args, name, None))


def run(argparser: ArgumentParser, argv: Optional[Sequence[str]] = None) -> int:
    """Parse args, pass them to the indicated function, and map errors to
    exit statuses.

    Args:
        argparser: the ArgumentParser instance returned by make_argparser().
        argv: arguments without the program name (default: sys.argv[1:]).
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    args = argparser.parse_args(argv)
    if not args.func:
        argparser.print_help()
        return EXIT_USAGE

    logging.basicConfig(level=(3 - min(args.verbose, 2)) * 10)
    logging.captureWarnings(True)

    start = time.perf_counter()
    try:
        result = args.func(args)
    except UsageError as exc:
        argparser.error(str(exc))
    except (GraphError, ProtocolError, OSError) as exc:
        print(f"linkcomm: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SpectralError as exc:
        print(f"linkcomm: eigensolver failed: {exc}", file=sys.stderr)
        return EXIT_SPECTRAL
    except ValueError as exc:
        print(f"linkcomm: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.func is rerun:
        return result
    if args.output is not None:
        manifest = RunManifest(
            command=args.command,
            argv=tuple(argv),
            inputs=_inputs(args),
            config=result,
            version=__version__,
            wall_time=time.perf_counter() - start,
        )
        _emit(args, ".manifest.json", _dumps(manifest._asdict()))
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    argparser, subparsers = make_argparser()
    return run(argparser, argv)


if __name__ == "__main__":
    sys.exit(main())
