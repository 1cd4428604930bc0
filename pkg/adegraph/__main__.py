"""Main entry point for adegraph."""
import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from .braids import classify_link, parse_braid
from .certificates import mine_minimal_minors
from .config import CONFIG_FILENAME, DEFAULT_CONFIG, get_config_path, get_platform_config_dir, load_config, save_config
from .errors import (
    AdegraphError,
    BraidSyntaxError,
    GraphFormatError,
    NotPositiveError,
    SearchExhaustedError,
    SizeBoundError,
)
from .graph import format_graph, load_graph, to_dot
from .moves import transcript_from_json, transcript_to_json, verify_transcript
from .oracle import SUITES, run_suite
from .plane import load_plane_graph, reduce_plane, validate_checkerboard
from .policies import MODES
from .reducer import ReductionResult, SearchLimits, classify, reduce_components, summarize_types

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INVARIANT = 3
EXIT_NOT_POSITIVE = 4
EXIT_EXHAUSTED = 5


def exit_code_for(error: BaseException) -> int:
    if isinstance(error, SearchExhaustedError):
        return EXIT_EXHAUSTED
    if isinstance(error, NotPositiveError):
        return EXIT_NOT_POSITIVE
    if isinstance(error, (GraphFormatError, BraidSyntaxError, SizeBoundError, OSError)):
        return EXIT_USAGE
    return EXIT_INVARIANT


def _emit_json(data: Any, config: Dict[str, Any]) -> None:
    indent = config.get("output", {}).get("json_indent", 2)
    print(json.dumps(data, indent=indent, sort_keys=True, ensure_ascii=False))


def _mode(args: argparse.Namespace, config: Dict[str, Any]) -> str:
    return args.mode or config.get("search", {}).get("default_mode", "t")


def _write_dot(path: str, results: List[ReductionResult]) -> None:
    chunks = []
    for i, result in enumerate(results):
        if result.transcript is not None:
            chunks.append(to_dot(result.transcript.start, f"start_{i}"))
            chunks.append(to_dot(result.transcript.end, f"end_{i}"))
    Path(path).write_text("".join(chunks), encoding="utf-8")
    print(f"[OK] DOT written to: {path}", file=sys.stderr)


def _print_result(result: ReductionResult) -> None:
    if not result.success:
        report = result.report
        print(f"[WARN] Not positive ({report.verdict.value}), witness {list(report.witness or ())}")
        if result.minor is not None:
            print(f"[INFO] Forbidden pattern {result.minor.pattern_name} at vertices {list(result.minor.host_vertices())}")
        if result.cycle is not None:
            print(f"[INFO] Non-positive induced cycle {list(result.cycle.cycle)}")
        return
    status = "verified" if result.verified() else "NOT verified"
    print(f"[OK] {result.ade.name} in {len(result.transcript.moves)} moves (certificate {status})")
    for move in result.transcript.moves:
        print(f"  {move}")


def _results_payload(results: List[ReductionResult], emit_certificate: bool) -> Dict[str, Any]:
    if len(results) == 1:
        return results[0].to_dict(include_certificate=emit_certificate)
    return {"components": [r.to_dict(include_certificate=emit_certificate) for r in results]}


def _finish_reduction(args: argparse.Namespace, config: Dict[str, Any], results: List[ReductionResult]) -> int:
    if args.dot:
        _write_dot(args.dot, results)
    if args.json:
        _emit_json(_results_payload(results, args.emit_certificate), config)
    elif args.emit_certificate and len(results) == 1 and results[0].success:
        result = results[0]
        print(transcript_to_json(result.transcript, result.certificate, config["output"]["json_indent"]))
    else:
        for result in results:
            _print_result(result)
    return EXIT_OK if all(r.success for r in results) else EXIT_NOT_POSITIVE


# -- commands --------------------------------------------------------------------


def cmd_classify(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    graph = load_graph(args.file)
    report = classify(graph, _mode(args, config), limits=SearchLimits.from_config(config))
    if args.dot:
        Path(args.dot).write_text(to_dot(graph), encoding="utf-8")
    if args.json:
        _emit_json(report.to_dict(), config)
    else:
        print(f"[INFO] {len(graph)} vertices, {graph.edge_count()} edges, det {report.definiteness.determinant}")
        if report.positive:
            print(f"[OK] Positive definite: {summarize_types(report.types)}")
        else:
            print(f"[WARN] Not positive ({report.definiteness.verdict.value}), witness {list(report.definiteness.witness or ())}")
            if report.minor is not None:
                print(f"[INFO] Forbidden pattern {report.minor.pattern_name} at vertices {list(report.minor.host_vertices())}")
        if report.failing_cycle is not None:
            print(f"[INFO] Non-positive cycle {list(report.failing_cycle.cycle)}")
    return EXIT_OK if report.positive else EXIT_NOT_POSITIVE


def cmd_reduce(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    graph = load_graph(args.file)
    results = reduce_components(graph, _mode(args, config), limits=SearchLimits.from_config(config))
    return _finish_reduction(args, config, results)


def cmd_verify(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    transcript, cert = transcript_from_json(Path(args.file).read_text(encoding="utf-8"))
    replays = transcript.replays()
    verified = replays and verify_transcript(transcript, cert)
    if args.json:
        _emit_json({"moves": len(transcript.moves), "replays": replays, "verified": verified}, config)
    elif verified:
        print(f"[OK] {len(transcript.moves)} moves replay and the certificate verifies")
    else:
        print("[ERR] Transcript does not replay" if not replays else "[ERR] Certificate does not verify")
    return EXIT_OK if verified else EXIT_INVARIANT


def cmd_minors(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    max_n = args.max_n or config["limits"]["miner_max_vertices"]
    catalog = mine_minimal_minors(max_n)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for pattern in catalog.patterns:
            (out / f"{pattern.name}.sg").write_text(format_graph(pattern.graph), encoding="utf-8")
        manifest = json.dumps(catalog.manifest(), indent=config["output"]["json_indent"], sort_keys=True)
        (out / "manifest.json").write_text(manifest + "\n", encoding="utf-8")
        if not args.json:
            print(f"[OK] {len(catalog.patterns)} patterns written to: {out}")
    if args.json:
        _emit_json(catalog.manifest(), config)
    elif not args.out:
        # header lines are comments in the graph text format
        for pattern in catalog.patterns:
            alias = f" ({pattern.alias})" if pattern.alias else ""
            print(f"# {pattern.name}{alias}: {len(pattern.graph)} vertices, kernel {list(pattern.kernel or ())}")
            print(format_graph(pattern.graph), end="")
        print(f"[INFO] {len(catalog.patterns)} patterns; --out DIR writes one file each", file=sys.stderr)
    return EXIT_OK


def cmd_braid_analyze(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    braid = parse_braid(args.word, strands=args.strands)
    result = classify_link(braid, _mode(args, config), reduce=args.reduce, limits=SearchLimits.from_config(config))
    if args.json:
        _emit_json(result.to_dict(), config)
    else:
        print(f"[INFO] {braid} on {braid.strand_count} strands: {result.rank} bricks")
        print(f"[INFO] signature {result.signature}, determinant {result.determinant}")
        if result.maximal_signature:
            print("[OK] Maximal signature")
        else:
            print(f"[WARN] Signature not maximal, witness {list(result.report.witness or ())}")
        if args.reduce and result.maximal_signature:
            print(f"[OK] Type: {summarize_types(result.types)}")
    if args.reduce and not result.maximal_signature:
        return EXIT_NOT_POSITIVE
    return EXIT_OK


def cmd_checkerboard_validate(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    plane = load_plane_graph(args.file)
    report = validate_checkerboard(plane)
    if args.json:
        data = report.to_dict()
        data["faces"] = [list(face.vertices) for face in plane.faces]
        data["outer"] = list(plane.outer_faces)
        _emit_json(data, config)
    elif report.valid:
        print(f"[OK] Checkerboard graph: {len(plane.faces)} faces, {len(plane.bounded_faces)} bounded")
    else:
        violation = report.violation
        where = f"face {violation.face}" if violation.face is not None else f"dual cycle {list(violation.cycle)}"
        print(f"[ERR] Not checkerboard: {violation.kind} ({where})")
    return EXIT_OK if report.valid else EXIT_INVARIANT


def cmd_checkerboard_reduce(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    plane = load_plane_graph(args.file)
    results = reduce_plane(plane, limits=SearchLimits.from_config(config))
    return _finish_reduction(args, config, results)


def cmd_oracle(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    report = run_suite(args.suite, config, args.max_n, quiet=args.json)
    if args.json:
        _emit_json(report.to_dict(), config)
    else:
        for key, value in sorted(report.counts.items()):
            print(f"  {key}: {value}")
        if report.passed:
            print(f"[OK] Suite {report.suite} passed")
        else:
            for failure in report.failures:
                print(f"[ERR] {failure['reason']}")
            print(f"[ERR] Suite {report.suite}: {len(report.failures)} failures")
    return EXIT_OK if report.passed else EXIT_INVARIANT


def cmd_config_init(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    path = Path(args.path) if args.path else get_platform_config_dir() / CONFIG_FILENAME
    if path.exists() and not args.force:
        print(f"[ERR] {path} already exists (use --force to overwrite)", file=sys.stderr)
        return EXIT_USAGE
    save_config(path, DEFAULT_CONFIG)
    return EXIT_OK


def cmd_config_show(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    path = Path(args.config) if args.config else get_config_path()
    if args.json:
        _emit_json({"path": str(path) if path else None, "config": config}, config)
        return EXIT_OK
    print(f"[INFO] Config file: {path if path else 'none (defaults)'}")
    for section, values in config.items():
        if isinstance(values, dict):
            for key, value in values.items():
                print(f"  {section}.{key} = {value!r}")
        else:
            print(f"  {section} = {values!r}")
    return EXIT_OK


# -- parser ----------------------------------------------------------------------


def _add_reduce_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--emit-certificate", action="store_true", help="Include the congruence certificate")
    parser.add_argument("--dot", metavar="FILE", help="Write DOT renderings of the start and end graphs")
    parser.add_argument("--json", action="store_true", help="Machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adegraph",
        description="adegraph - classify positive signed graphs by ADE type with checkable certificates",
    )
    parser.add_argument("--version", action="version", version=f"adegraph {__version__}")
    parser.add_argument("--config", metavar="PATH", help="Explicit adegraph.toml path")
    parser.add_argument("--verbose", action="store_true", help="Report where the configuration was loaded from")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")

    classify_p = commands.add_parser("classify", help="Definiteness, cycle and pattern certificates, ADE types")
    classify_p.add_argument("file", help="Signed graph file")
    classify_p.add_argument("--mode", choices=MODES, help="Move mode used for positive graphs")
    classify_p.add_argument("--dot", metavar="FILE", help="Write a DOT rendering of the graph")
    classify_p.add_argument("--json", action="store_true", help="Machine-readable output")
    classify_p.set_defaults(handler=cmd_classify)

    reduce_p = commands.add_parser("reduce", help="Reduce to an ADE diagram with a transcript")
    reduce_p.add_argument("file", help="Signed graph file")
    reduce_p.add_argument("--mode", choices=MODES, help="Move mode (default from config)")
    _add_reduce_flags(reduce_p)
    reduce_p.set_defaults(handler=cmd_reduce)

    verify_p = commands.add_parser("verify", help="Replay a transcript and check its certificate")
    verify_p.add_argument("file", help="Transcript JSON (or a reduce --json document)")
    verify_p.add_argument("--json", action="store_true", help="Machine-readable output")
    verify_p.set_defaults(handler=cmd_verify)

    minors_p = commands.add_parser("minors", help="Mine minimal non-positive patterns")
    minors_p.add_argument("--max-n", type=int, help="Largest pattern size (default from config)")
    minors_p.add_argument("--out", metavar="DIR", help="Write one graph file per pattern plus manifest.json")
    minors_p.add_argument("--json", action="store_true", help="Machine-readable output")
    minors_p.set_defaults(handler=cmd_minors)

    braid_p = commands.add_parser("braid", help="Positive braid closures")
    braid_commands = braid_p.add_subparsers(dest="braid_command", metavar="ACTION", required=True)
    analyze_p = braid_commands.add_parser("analyze", help="Linking graph, Seifert form and signature")
    analyze_p.add_argument("word", help='Braid word, e.g. "s1 s2 s1 s2"')
    analyze_p.add_argument("--strands", type=int, help="Strand count (default: largest index + 1)")
    analyze_p.add_argument("--reduce", action="store_true", help="Reduce the linking graph to ADE types")
    analyze_p.add_argument("--mode", choices=MODES, help="Move mode used with --reduce")
    analyze_p.add_argument("--json", action="store_true", help="Machine-readable output")
    analyze_p.set_defaults(handler=cmd_braid_analyze)

    board_p = commands.add_parser("checkerboard", help="Plane checkerboard graphs")
    board_commands = board_p.add_subparsers(dest="board_command", metavar="ACTION", required=True)
    validate_p = board_commands.add_parser("validate", help="Check face coherence and dual bipartiteness")
    validate_p.add_argument("file", help="Plane graph file")
    validate_p.add_argument("--json", action="store_true", help="Machine-readable output")
    validate_p.set_defaults(handler=cmd_checkerboard_validate)
    board_reduce_p = board_commands.add_parser("reduce", help="Reduce by checkerboard moves")
    board_reduce_p.add_argument("file", help="Plane graph file")
    _add_reduce_flags(board_reduce_p)
    board_reduce_p.set_defaults(handler=cmd_checkerboard_reduce)

    oracle_p = commands.add_parser("oracle", help="Run a brute-force cross-check suite")
    oracle_p.add_argument("--suite", choices=SUITES, required=True, help="Suite to run")
    oracle_p.add_argument("--max-n", type=int, help="Size bound (default from config)")
    oracle_p.add_argument("--json", action="store_true", help="Machine-readable output")
    oracle_p.set_defaults(handler=cmd_oracle)

    config_p = commands.add_parser("config", help="Write or inspect adegraph.toml")
    config_commands = config_p.add_subparsers(dest="config_command", metavar="ACTION", required=True)
    init_p = config_commands.add_parser("init", help="Write the default configuration")
    init_p.add_argument("--path", metavar="FILE", help="Target file (default: platform config directory)")
    init_p.add_argument("--force", action="store_true", help="Overwrite an existing file")
    init_p.set_defaults(handler=cmd_config_init)
    show_p = config_commands.add_parser("show", help="Print the resolved configuration")
    show_p.add_argument("--json", action="store_true", help="Machine-readable output")
    show_p.set_defaults(handler=cmd_config_show)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, dispatch, and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.command is None:
        parser.print_help()
        return EXIT_USAGE

    config = load_config(Path(args.config) if args.config else None, quiet=not args.verbose or getattr(args, "json", False))
    try:
        return args.handler(args, config)
    except (AdegraphError, OSError) as e:
        print(f"[ERR] {e}", file=sys.stderr)
        return exit_code_for(e)
    except KeyboardInterrupt:
        print("\n[INFO] Interrupted by user", file=sys.stderr)
        return 130


def main() -> None:
    """Main entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
