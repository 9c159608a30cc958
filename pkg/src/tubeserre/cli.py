"""Command-line entry point: run verification suites and write a JSON or text report."""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .actions import ActionError
from .serialize import LoadError, action_from_json, dumps, read_json
from .suites import PRNG, SUITES, SuiteConfig, builtin_action, run_suite
from .tube import TubeContext, TubeError

DEFAULTS = {"suite": "all", "n": 2, "p": 5, "seed": 1, "samples": 25, "max_dim": 4, "action": None, "format": "json", "out": None}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tubeserre",
        description="Run Serre-duality verification suites on the tube T(n, p) and its equivariantizations.",
    )
    ap.add_argument("--suite", choices=SUITES + ("all",), help="suite to run (default: all)")
    ap.add_argument("--n", type=int, help="number of quiver vertices (default 2)")
    ap.add_argument("--p", type=int, help="field characteristic (default 5)")
    ap.add_argument("--seed", type=int, help="base seed (default 1)")
    ap.add_argument("--samples", type=int, help="samples per check (default 25)")
    ap.add_argument("--max-dim", dest="max_dim", type=int, help="maximal dimension per vertex (default 4)")
    ap.add_argument("--action", help="rotation(n) | scaling(zeta) | twisted(c) | path to an action JSON file")
    ap.add_argument("--out", help="write the report here instead of stdout")
    ap.add_argument("--format", choices=("json", "text"), help="report format (default json)")
    ap.add_argument("--spec", help="JSON file with any of the above settings; flags override it")
    return ap


def load_spec(path) -> dict:
    """Settings from a spec file, validated; an inline action literal is allowed."""
    data = read_json(path)
    if not isinstance(data, dict):
        raise LoadError(f"{path}: expected a JSON object")
    unknown = set(data) - set(DEFAULTS) - {"max-dim"}
    if unknown:
        raise LoadError(f"{path}: unknown keys {sorted(unknown)}")
    if "max-dim" in data:
        data["max_dim"] = data.pop("max-dim")
    return data


def resolve(args: argparse.Namespace) -> dict:
    settings = dict(DEFAULTS)
    if args.spec:
        settings.update(load_spec(args.spec))
    for key in DEFAULTS:
        v = getattr(args, key, None)
        if v is not None:
            settings[key] = v
    return settings


def make_config(settings: dict) -> SuiteConfig:
    n, p = int(settings["n"]), int(settings["p"])
    ctx = TubeContext(n, p)
    action = settings["action"]
    action_data = None
    label = None
    if isinstance(action, dict):
        action_data = action_from_json(action, ctx, where="spec.action")
        label = "inline"
    elif isinstance(action, str) and (action.endswith(".json") or Path(action).is_file()):
        action_data = action_from_json(read_json(action), ctx, where=action)
        label = action
    elif action is not None:
        label = str(action)
        builtin_action(label, ctx)  # fail early on an unknown name
    return SuiteConfig(
        n=n,
        p=p,
        seed=int(settings["seed"]),
        samples=int(settings["samples"]),
        max_dim=int(settings["max_dim"]),
        action=label,
        action_data=action_data,
    )


def build_report(settings: dict, cfg: SuiteConfig, checks, wall: float) -> dict:
    failed = [c.name for c in checks if not c.ok]
    return {
        "schema": 1,
        "tool": "tubeserre",
        "version": __version__,
        "prng": PRNG,
        "input": {"suite": settings["suite"], **cfg.echo()},
        "checks": [c.to_dict() for c in checks],
        "summary": {"total": len(checks), "passed": len(checks) - len(failed), "failed": failed, "status": "pass" if not failed else "fail"},
        "wall_time_s": round(wall, 3),
    }


def format_text(report: dict) -> str:
    lines = [
        f"tubeserre {report['version']} schema {report['schema']}",
        "input: " + ", ".join(f"{k}={v}" for k, v in report["input"].items()),
        f"prng: {report['prng']}",
    ]
    for c in report["checks"]:
        lines.append(f"{'PASS' if c['status'] == 'pass' else 'FAIL'}  {c['name']}")
        for msg in c["failures"][:5]:
            lines.append(f"      {msg}")
    s = report["summary"]
    lines.append(f"{s['passed']}/{s['total']} checks passed ({report['wall_time_s']} s)")
    return "\n".join(lines) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = resolve(args)
        if settings["suite"] not in SUITES + ("all",):
            raise LoadError(f"unknown suite {settings['suite']!r}")
        cfg = make_config(settings)
        start = time.perf_counter()
        checks = run_suite(settings["suite"], cfg)
        wall = time.perf_counter() - start
    except (LoadError, ActionError, TubeError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"tubeserre: error: {msg}", file=sys.stderr)
        return 2
    report = build_report(settings, cfg, checks, wall)
    text = dumps(report) + "\n" if settings["format"] == "json" else format_text(report)
    if settings["out"]:
        Path(settings["out"]).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if report["summary"]["status"] == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
