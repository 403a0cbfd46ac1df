"""Command-line entry points.

Subcommands: ``build`` (emit scene.json / pbis.json / warnings.txt),
``serve`` (HTTP query service, optionally hosting the viewer bundle),
``simulate`` (synthetic Scrum XML for a model) and ``report``
(plain-text locality / remaining-completed tables).

Exit codes: 0 success, 1 usage error, 2 invalid input data, 3 internal
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .city_layout import DEFAULT_PALETTE, Palette, rc_band_color
from .errors import InputDataError, LookupFailure, SchemaError
from .rc_view import RcScope, rc_map
from .scene import warnings_text
from .scrum_data import serialize_scrum_xml, simulate_scrum
from .service import build_snapshot, create_app, load_inputs
from .trace_index import Selection, locality_report

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3


def load_palette(path: str | None) -> Palette:
    """Color overrides from a JSON config file."""
    if path is None:
        return DEFAULT_PALETTE
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}", path) from exc
    allowed = {"loc_colors", "package_base", "method_color", "rc_band_colors"}
    for key in raw:
        if key not in allowed:
            raise SchemaError(f"unknown config key {key!r}", path)
    expected_lengths = {"loc_colors": 6, "rc_band_colors": 4}
    kwargs = {}
    for key, value in raw.items():
        if key in expected_lengths:
            if not isinstance(value, list) or len(value) != expected_lengths[key]:
                raise SchemaError(f"{key} must be a list of {expected_lengths[key]} colors", path)
            kwargs[key] = tuple(value)
        else:
            if not isinstance(value, str):
                raise SchemaError(f"{key} must be a hex color string", path)
            kwargs[key] = value
    return Palette(**kwargs)


def _add_input_args(parser: argparse.ArgumentParser):
    parser.add_argument("--code", required=True, help="code-model JSON file")
    parser.add_argument(
        "--scrum", action="append", default=[], metavar="FILE",
        help="Scrum XML file (repeatable; merged in order)",
    )
    parser.add_argument("--config", default=None, help="JSON color-override config")


def cmd_build(args: argparse.Namespace) -> int:
    palette = load_palette(args.config)
    model, dataset = load_inputs(args.code, args.scrum)
    snapshot = build_snapshot(model, dataset, palette)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "scene.json").write_bytes(snapshot.scene_bytes)
    (out / "pbis.json").write_bytes(snapshot.pbis_bytes)
    (out / "warnings.txt").write_text(warnings_text(snapshot.warnings), encoding="utf-8")
    print(f"wrote scene.json, pbis.json, warnings.txt to {out}")
    if snapshot.warnings:
        print(f"{len(snapshot.warnings)} unresolved reference(s); see warnings.txt", file=sys.stderr)
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    palette = load_palette(args.config)
    model, dataset = load_inputs(args.code, args.scrum)
    snapshot = build_snapshot(model, dataset, palette)
    app = create_app(snapshot, static_dir=args.static)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    from .code_model import ingest_code_model

    with open(args.code, "rb") as fh:
        model = ingest_code_model(fh.read())
    dataset = simulate_scrum(
        model, sprints=args.sprints, features_per_sprint=args.features_per_sprint, seed=args.seed
    )
    Path(args.out).write_bytes(serialize_scrum_xml(dataset))
    print(f"wrote {args.out}")
    return EXIT_OK


def _print_table(rows: list[tuple[str, ...]], header: tuple[str, ...]):
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
    line = "  ".join(h.ljust(w) for h, w in zip(header, widths))
    print(line)
    print("  ".join("-" * w for w in widths))
    for row in rows:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)))


def cmd_report_locality(args: argparse.Namespace) -> int:
    model, dataset = load_inputs(args.code, args.scrum)
    snapshot = build_snapshot(model, dataset, load_palette(args.config))
    report = locality_report(snapshot.index, model, args.feature)
    feature = dataset.feature_index[args.feature]
    print(f"feature   {report.feature_id}  ({feature.title})")
    print(f"classes   {len(report.classes)}")
    print(f"packages  {len(report.packages)}")
    print(f"modules   {report.module_count}")
    print()
    _print_table(
        [(c, c.rsplit(".", 1)[0]) for c in sorted(report.classes)],
        ("class", "package"),
    )
    return EXIT_OK


def cmd_report_rc(args: argparse.Namespace) -> int:
    palette = load_palette(args.config)
    model, dataset = load_inputs(args.code, args.scrum)
    snapshot = build_snapshot(model, dataset, palette)
    scope = RcScope(mode="concept", selection=Selection(args.level, frozenset([args.id])))
    states = rc_map(snapshot.index, dataset, scope)
    rows = [
        (
            q,
            f"{float(s.completed_hours):.2f}",
            f"{float(s.remaining_hours):.2f}",
            f"{s.completed_fraction * 100.0:.1f}%",
            f"band {s.band} {rc_band_color(s.band, palette)}",
        )
        for q, s in states.items()
    ]
    print(f"remaining/completed view — {args.level} {args.id}")
    print()
    if rows:
        _print_table(rows, ("class", "completed", "remaining", "done", "band"))
    else:
        print("no classes touched by this selection")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tracecity",
        description="Scrum-to-code traceability with a deterministic 3D code-city layout",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="emit scene.json, pbis.json and warnings.txt")
    _add_input_args(p_build)
    p_build.add_argument("--out", required=True, help="output directory")
    p_build.set_defaults(func=cmd_build)

    p_serve = sub.add_parser("serve", help="run the JSON/HTTP query service")
    _add_input_args(p_serve)
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--static", default=None, help="viewer bundle directory to host at /")
    p_serve.set_defaults(func=cmd_serve)

    p_sim = sub.add_parser("simulate", help="generate synthetic Scrum XML for a code model")
    p_sim.add_argument("--code", required=True, help="code-model JSON file")
    p_sim.add_argument("--seed", type=int, default=42)
    p_sim.add_argument("--sprints", type=int, default=3)
    p_sim.add_argument("--features-per-sprint", type=int, default=5)
    p_sim.add_argument("--out", required=True, help="output XML file")
    p_sim.set_defaults(func=cmd_simulate)

    p_report = sub.add_parser("report", help="plain-text analysis tables")
    report_sub = p_report.add_subparsers(dest="report_kind", required=True)

    p_loc = report_sub.add_parser("locality", help="class/package/module spread of a feature")
    _add_input_args(p_loc)
    p_loc.add_argument("--feature", required=True, help="feature id")
    p_loc.set_defaults(func=cmd_report_locality)

    p_rc = report_sub.add_parser("rc", help="remaining/completed hours per class")
    _add_input_args(p_rc)
    p_rc.add_argument("--level", required=True, choices=["feature", "sprint", "release"])
    p_rc.add_argument("--id", required=True)
    p_rc.set_defaults(func=cmd_report_rc)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except InputDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (LookupFailure, FileNotFoundError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
