"""Operator CLI: ingest -> build -> validate -> simulate -> serve."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import pipeline, runner
from .levels import load_pack
from .quiz import load_bank, sample_bank

log = logging.getLogger("dockslice")


def _load_config(args) -> pipeline.PipelineConfig:
    if args.config:
        return pipeline.load_config(args.config)
    return pipeline.default_config()


def cmd_ingest(args) -> int:
    paths: list[Path] = []
    for raw in args.paths:
        p = Path(raw)
        if p.is_dir():
            paths.extend(sorted(p.glob("*.pdb")))
        else:
            paths.append(p)
    if not paths:
        log.error("no PDB files found under %s", args.paths)
        return 1
    result = pipeline.ingest(paths, Path(args.out) / "cache")
    for code in result.cached:
        log.info("ingested %s", code)
    for code in result.hits:
        log.info("cache hit %s", code)
    for path, reason in result.failures.items():
        log.error("failed %s: %s", path, reason)
    return 1 if result.failures else 0


def cmd_build(args) -> int:
    config = _load_config(args)
    out = Path(args.out)
    result = pipeline.build(
        config,
        cache_dir=out / "cache",
        out_dir=out / "assets",
        only_entries=[args.entry] if args.entry else None,
    )
    for code in result.built:
        log.info("built %s", code)
    for code, reason in result.skipped.items():
        log.warning("skipped %s: %s", code, reason)
    if not result.pack.conformant:
        log.warning(
            "pack is not conformant to the level table: %s",
            "; ".join(result.pack.problems),
        )
    log.info("pack written to %s", result.pack_path)
    return 0 if result.built else 1


def cmd_validate(args) -> int:
    config = _load_config(args)
    pack_path = Path(args.pack or Path(args.out) / "assets" / "level_pack.json")
    violations = pipeline.validate_pack_file(pack_path, config)
    if violations:
        for v in violations:
            print(f"VIOLATION: {v}")
        print(f"{len(violations)} violation(s)")
        return 1
    print("pack is clean")
    return 0


def cmd_simulate(args) -> int:
    pack = load_pack(args.pack)
    bank = load_bank(args.bank) if args.bank else sample_bank()
    script = runner.parse_script(json.loads(Path(args.script).read_text()))
    transcript = runner.simulate(
        pack, script, seed=args.seed, bank=bank, duration=args.duration
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "inbound.ndjson").write_bytes(b"".join(transcript.inbound))
    (out / "transcript.ndjson").write_bytes(b"".join(transcript.outbound))
    log.info(
        "wrote %d inbound / %d outbound messages to %s",
        len(transcript.inbound),
        len(transcript.outbound),
        out,
    )
    return 0


def cmd_serve(args) -> int:
    try:
        import uvicorn

        from .server import create_app
    except ImportError:
        log.error("serve requires the server extra: pip install 'dockslice[server]'")
        return 1
    pack = load_pack(args.pack)
    bank = load_bank(args.bank) if args.bank else sample_bank()
    app = create_app(pack, bank, static_dir=Path(args.static) if args.static else None)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dockslice",
        description="Protein-complex slicing pipeline and docking-puzzle engine",
    )
    # Shared by the root and every subcommand so the flag works in either
    # position on the command line.
    log_parent = argparse.ArgumentParser(add_help=False)
    log_parent.add_argument("--log-level", default="info",
                            choices=["debug", "info", "warning", "error"])
    parser.add_argument("--log-level", default="info",
                        choices=["debug", "info", "warning", "error"])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name: str, **kwargs):
        return sub.add_parser(name, parents=[log_parent], **kwargs)

    p = add_parser("ingest", help="parse PDB files into the structure cache")
    p.add_argument("paths", nargs="+", help="PDB files or directories")
    p.add_argument("--out", default="out", help="output root (cache goes in OUT/cache)")
    p.set_defaults(func=cmd_ingest)

    p = add_parser("build", help="slice cached structures into an asset pack")
    p.add_argument("--config", help="pipeline config JSON (default: packaged)")
    p.add_argument("--out", default="out")
    p.add_argument("--entry", help="build a single entry code")
    p.set_defaults(func=cmd_build)

    p = add_parser("validate", help="check asset invariants and level conformance")
    p.add_argument("--config", help="pipeline config JSON (default: packaged)")
    p.add_argument("--pack", help="level_pack.json path")
    p.add_argument("--out", default="out", help="output root when --pack not given")
    p.set_defaults(func=cmd_validate)

    p = add_parser("simulate", help="run a scripted headless session")
    p.add_argument("--pack", required=True, help="level_pack.json path")
    p.add_argument("--script", required=True, help="JSON array of {t, input} items")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bank", help="quiz bank JSON (default: packaged sample)")
    p.add_argument("--duration", type=float, default=None, help="seconds to simulate")
    p.add_argument("--out", default="out/sim")
    p.set_defaults(func=cmd_simulate)

    p = add_parser("serve", help="host the session endpoint and static client")
    p.add_argument("--pack", required=True)
    p.add_argument("--bank")
    p.add_argument("--static", help="directory of built client assets")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level.upper()),
        format="%(levelname)s %(name)s: %(message)s",
    )
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
