"""Command line entry point: ``feqtool list`` and ``feqtool run``."""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional

from .feq import MODES, SamplePlan, verify

logger = logging.getLogger("feqtool")

EXIT_OK, EXIT_FAIL, EXIT_ENGINE, EXIT_IO = 0, 1, 2, 3
OK_VERDICTS = ("pass", "paper-discrepancy", "informational")


@dataclass
class RunConfig:
    cases: Optional[list] = None          # None means every registered case
    out: str = "reports"
    tol: Optional[float] = None
    mode: str = "both"
    format: str = "json"
    jobs: int = 1
    timestamp: bool = True
    plan: Optional[dict] = None           # overrides for SamplePlan fields
    quadrature: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.mode not in MODES + ("both",):
            raise ValueError(f"mode must be analytic, quadrature or both, not {self.mode!r}")
        if self.format not in ("json", "csv", "both"):
            raise ValueError(f"format must be json, csv or both, not {self.format!r}")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")


def list_cases() -> list[tuple]:
    from .cases import registry
    return [(c.id, c.anchor, c.kind, "+".join(c.modes)) for c in registry().values()]


def _select(config: RunConfig):
    from .cases import registry
    from .exceptions import UnknownCaseError
    reg = registry()
    ids = config.cases or list(reg)
    unknown = [i for i in ids if i not in reg]
    if unknown:
        raise UnknownCaseError(", ".join(unknown))
    jobs = []
    for i in ids:
        case = reg[i]
        modes = case.modes if config.mode == "both" else \
            tuple(m for m in case.modes if m == config.mode)
        jobs.extend((case, m) for m in modes)
    return jobs


def _plan_for(case, config: RunConfig) -> SamplePlan:
    if not config.plan:
        return case.plan
    d = case.plan.to_dict()
    d.update(config.plan)
    d["offsets"] = tuple(complex(*o) if isinstance(o, list) else complex(o)
                         for o in d.get("offsets", ()))
    d["exclude"] = tuple(d.get("exclude", ()))
    return SamplePlan(**d)


def run(config: RunConfig) -> int:
    try:
        jobs = _select(config)
    except KeyError as exc:
        print(f"error: unknown case id(s): {exc.args[0]}", file=sys.stderr)
        return EXIT_ENGINE

    def work(job):
        case, mode = job
        return verify(case, mode, tol=config.tol, plan=_plan_for(case, config),
                      engine_params={"quadrature": config.quadrature})

    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            reports = list(pool.map(work, jobs))
    else:
        reports = [work(j) for j in jobs]

    stamp = datetime.now(timezone.utc).isoformat() if config.timestamp else None
    summary = []
    try:
        os.makedirs(config.out, exist_ok=True)
        for rep in reports:
            stem = os.path.join(config.out, f"{rep.case_id}.{rep.mode}")
            if config.format in ("json", "both"):
                with open(stem + ".json", "w", encoding="utf-8") as fh:
                    fh.write(rep.to_json(stamp))
            if config.format in ("csv", "both"):
                with open(stem + ".csv", "w", encoding="utf-8") as fh:
                    fh.write(rep.to_csv())
            fit = rep.fit.to_dict() if rep.fit else None
            summary.append({"case_id": rep.case_id, "mode": rep.mode,
                            "verdict": rep.verdict, "fit": fit, "message": rep.message})
        doc = {"reports": summary}
        if stamp:
            doc["generated_at"] = stamp
        with open(os.path.join(config.out, "summary.json"), "w", encoding="utf-8") as fh:
            fh.write(json.dumps(doc, indent=2, sort_keys=True))
    except OSError as exc:
        print(f"error: cannot write reports: {exc}", file=sys.stderr)
        return EXIT_IO

    for row in summary:
        fit = row["fit"]
        consts = ""
        if fit:
            q, s2 = complex(*fit["Q"]), complex(*fit["sigma2"])
            consts = f"Q={q:.12g}  sigma2={s2:.12g}  max_rel={fit['max_rel']:.2e}"
        print(f"{row['case_id']:<16} {row['mode']:<10} {row['verdict']:<18} {consts}"
              f"{row['message']}")
    verdicts = [r.verdict for r in reports]
    if "error" in verdicts:
        return EXIT_ENGINE
    if any(v not in OK_VERDICTS for v in verdicts):
        return EXIT_FAIL
    return EXIT_OK


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="feqtool",
                                description="Verify Mellin-transform functional equations.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("list", help="show the registered cases")
    r = sub.add_parser("run", help="run cases and write reports")
    r.add_argument("--config", help="JSON file with run settings (flags override it)")
    r.add_argument("--cases", help="comma-separated case ids (default: all)")
    r.add_argument("--out", help="output directory (default: reports)")
    r.add_argument("--tol", type=float, help="residual tolerance override")
    r.add_argument("--mode", choices=MODES + ("both",))
    r.add_argument("--format", choices=("json", "csv", "both"))
    r.add_argument("--jobs", type=int)
    r.add_argument("--no-timestamp", action="store_true")
    return p


def _config_from_args(args) -> RunConfig:
    settings = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            settings = json.load(fh)
        settings = {k.replace("-", "_"): v for k, v in settings.items()}
        if isinstance(settings.get("cases"), str):
            settings["cases"] = settings["cases"].split(",")
    if args.cases:
        settings["cases"] = [c.strip() for c in args.cases.split(",") if c.strip()]
    for name in ("out", "tol", "mode", "format", "jobs"):
        v = getattr(args, name)
        if v is not None:
            settings[name] = v
    if args.no_timestamp:
        settings["timestamp"] = False
    return RunConfig(**settings)


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    if args.command == "list":
        rows = list_cases()
        for cid, anchor, kind, modes in rows:
            print(f"{cid:<16} {kind:<12} {modes:<22} {anchor}")
        print(f"{len(rows)} cases")
        return EXIT_OK
    try:
        config = _config_from_args(args)
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ENGINE
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
