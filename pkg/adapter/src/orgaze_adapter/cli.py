"""Command-line front end for the adapter.

Subcommands:
  run        drive one source through a backend, emit a frame log
  calibrate  schema self-test over an emitted frame log

Exit codes: 0 success; 1 calibrate found violations; 2 undecodable
input (bad video/script, wrong schema version); 3 invalid
configuration or missing model assets.
"""

from __future__ import annotations

import argparse
import json
import sys

from .calibrate import calibrate_schema
from .config import AdapterConfig
from .errors import ModelLoadError, SchemaVersionMismatch, VideoDecodeError
from .run import run_inference


def _cmd_run(args) -> int:
    try:
        config = AdapterConfig(
            video=args.video,
            camera_index=args.camera_index,
            backend=args.backend,
            detector_weights=args.detector_weights,
            landmark_model=args.landmark_model,
            gaze_model=args.gaze_model,
            onfocus_model=args.onfocus_model,
            out_path=args.out,
            fps_override=args.fps,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    try:
        path = run_inference(config)
    except (VideoDecodeError, SchemaVersionMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ModelLoadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    print(f"wrote {path}")
    return 0


def _cmd_calibrate(args) -> int:
    try:
        with open(args.log, "rb") as fh:
            report = calibrate_schema(fh)
    except OSError as exc:
        print(f"error: cannot read {args.log}: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        json.dump(report.to_dict(), sys.stdout, indent=2, sort_keys=True)
        print()
    else:
        print(f"checked {report.n_frames} frame records "
              f"(session {report.session_id!r}, camera {report.camera_id!r})")
        for violation in report.violations:
            print(f"violation: {violation}")
        print("ok" if report.ok else f"{len(report.violations)} violation(s)")
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adapter",
        description="Run vision inference (or its mock) and emit "
                    "schema-version-1 frame logs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="emit a frame log for one source")
    p.add_argument("--video", default=None,
                   help="video file (real) or truth script (mock)")
    p.add_argument("--camera-index", type=int, default=None,
                   help="live camera index (real backend only)")
    p.add_argument("--backend", choices=("mock", "real"), default="mock")
    p.add_argument("--out", required=True, help="output frame log path")
    p.add_argument("--fps", type=float, default=None,
                   help="override the source frame rate")
    p.add_argument("--detector-weights", default=None)
    p.add_argument("--landmark-model", default=None)
    p.add_argument("--gaze-model", default=None)
    p.add_argument("--onfocus-model", default=None)
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("calibrate", help="schema self-test for a frame log")
    p.add_argument("--log", required=True, help="frame log to check")
    p.add_argument("--json", action="store_true",
                   help="emit the report as JSON")
    p.set_defaults(func=_cmd_calibrate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 0
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
