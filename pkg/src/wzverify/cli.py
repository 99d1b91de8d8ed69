"""Command-line front end: ``wzverify list | wz | verify | export | constants``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence

from . import __version__
from . import checks as ck
from . import closedform as cf
from .bigreal import constant
from .certificates import CERTIFICATES, BY_NAME
from .exact import RatFunc
from .hyperterm import WZPair, WZVerdict, check_wz
from .registry import BOUNDARY_FORMS, IDENTITIES, default_grid, export_document

ENV_PREC = "WZVERIFY_PREC"
ENV_TOL = "WZVERIFY_TOL"
ENV_MAX_TERMS = "WZVERIFY_MAX_TERMS"


@dataclass
class RunConfig:
    command: str
    ids: List[int] = field(default_factory=lambda: sorted(IDENTITIES))
    variants: Optional[List[str]] = None
    grid: Optional[List[str]] = None
    prec: int = ck.DEFAULT_PREC
    tol: float = ck.DEFAULT_TOL
    max_terms: int = 100_000
    output: str = "text"
    json_path: Optional[str] = None
    special: bool = False
    derivatives: bool = False
    limits: bool = False
    telescope: Optional[int] = None
    boundary: bool = False
    jobs: int = 1

    def __post_init__(self):
        if self.prec < 64:
            raise ValueError("precision must be at least 64 bits")
        if not self.tol > 0:
            raise ValueError("tolerance must be positive")

    def grid_for(self, identity: int) -> List[Fraction]:
        if self.grid is None:
            return default_grid(IDENTITIES[identity])
        return [Fraction(x) for x in self.grid]


def _env_default(name: str, fallback, cast):
    raw = os.environ.get(name)
    return fallback if raw in (None, "") else cast(raw)


def _parse_ids(raw: Optional[Sequence[str]]) -> List[int]:
    if not raw:
        return sorted(IDENTITIES)
    out = []
    for chunk in raw:
        for part in chunk.split(","):
            if part.strip():
                i = int(part)
                if i not in IDENTITIES:
                    raise SystemExit(f"unknown identity {i}; known: 1..10")
                out.append(i)
    return sorted(set(out))


def _split(raw: Optional[Sequence[str]]) -> Optional[List[str]]:
    if not raw:
        return None
    return [p.strip() for chunk in raw for p in chunk.split(",") if p.strip()]


# ---------------------------------------------------------------------------
# report document

def _summary(reports: Sequence[ck.CheckReport], verdicts: Sequence[WZVerdict] = ()) -> dict:
    counts = {"pass": 0, "fail": 0, "skipped": 0, "error": 0}
    for r in reports:
        counts[r.verdict] += 1
    counts["certificates_valid"] = sum(v.valid for v in verdicts)
    counts["certificates_invalid"] = sum(not v.valid for v in verdicts)
    return counts


def report_document(cfg: RunConfig, reports: Sequence[ck.CheckReport] = (), verdicts: Sequence[WZVerdict] = (),
                    timestamp: Optional[str] = None) -> dict:
    config = asdict(cfg)
    config["tol"] = repr(cfg.tol)
    return {
        "tool": "wzverify",
        "version": __version__,
        "timestamp": timestamp or datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "config": config,
        "checks": [r.to_json() for r in reports],
        "certificates": [
            {"name": v.name, "identity": BY_NAME[v.name].identity if v.name in BY_NAME else None,
             "valid": v.valid, "defect_numerator": v.defect_text() or None}
            for v in verdicts
        ],
        "summary": _summary(reports, verdicts),
    }


def _emit(doc: dict, cfg: RunConfig, text_lines: Sequence[str]) -> None:
    if cfg.json_path:
        payload = json.dumps(doc, indent=2, ensure_ascii=False)
        if cfg.json_path == "-":
            print(payload)
            return
        Path(cfg.json_path).write_text(payload + "\n", encoding="utf-8")
    for line in text_lines:
        print(line)


# ---------------------------------------------------------------------------
# list

def list_lines() -> List[str]:
    out = []
    for i in sorted(IDENTITIES):
        d = IDENTITIES[i]
        sv = ", ".join(f"f({x})={cf.to_text(e)}" for x, e in d.special_values) or "no special value"
        out.append(f"Identity {i}: variants {', '.join(d.variant_labels)}; {sv}; lhs {d.lhs}")
    out.append("")
    out.append(f"{len(CERTIFICATES)} certificates:")
    for p in CERTIFICATES:
        out.append(f"  {p.name:<6} identity {p.identity:<2} proves '{p.proves}'")
    return out


def cmd_list(cfg: RunConfig) -> int:
    doc = {
        "identities": [
            {"id": i, "variants": IDENTITIES[i].variant_labels,
             "special_values": [{"a": str(x), "value": cf.to_text(e)} for x, e in IDENTITIES[i].special_values],
             "lhs": str(IDENTITIES[i].lhs)}
            for i in sorted(IDENTITIES)
        ],
        "certificates": [{"name": p.name, "identity": p.identity, "proves": p.proves} for p in CERTIFICATES],
    }
    _emit(doc, cfg, list_lines())
    return 0


# ---------------------------------------------------------------------------
# wz

def mutate_pair(pair: WZPair) -> WZPair:
    """The pair with 1 added to G's multiplier: a perturbation no valid certificate survives."""
    return WZPair(pair.name + "*", pair.proves, pair.B, pair.RF, pair.RG + RatFunc.coerce(1), pair.identity)


def append_errata(path: Path, verdicts: Sequence[WZVerdict]) -> int:
    """Append entries for failing certificates not yet recorded; returns the number appended."""
    existing = path.read_text(encoding="utf-8") if path.exists() else ""
    added = []
    for v in verdicts:
        if v.valid or v.name.endswith("*"):
            continue
        pair = BY_NAME[v.name]
        key = f"## {v.name} "
        entry = (f"{key}(identity {pair.identity}, proves '{pair.proves}')\n\n"
                 f"WZ defect numerator, which should vanish identically:\n\n```\n{v.defect_text()}\n```\n")
        if key in existing:
            continue
        added.append(entry)
    if added:
        header = "" if existing else (
            "# Errata ledger\n\nPublished WZ certificates whose defect "
            "RG(n,k+1)·B(n,k+1)/B(n,k) − RG(n,k) − RF(n+1,k)·B(n+1,k)/B(n,k) + RF(n,k) "
            "is not identically zero. Entries are appended by `wzverify wz`.\n\n")
        with path.open("a", encoding="utf-8") as fh:
            fh.write(header + "\n".join(added))
    return len(added)


def cmd_wz(cfg: RunConfig, mutate_smoke: bool = False, errata: Optional[str] = "ERRATA.md") -> int:
    pairs = [p for p in CERTIFICATES if p.identity in cfg.ids]
    verdicts = [check_wz(p) for p in pairs]
    lines = [f"{'VALID' if v.valid else 'INVALID':8} {v.name:<6} {v.seconds * 1000:7.1f} ms" for v in verdicts]
    status = 0
    if mutate_smoke:
        for p in pairs:
            mv = check_wz(mutate_pair(p))
            verdicts.append(mv)
            lines.append(f"{'VALID' if mv.valid else 'INVALID':8} {mv.name:<6} (injected perturbation)")
            if mv.valid:
                status = 1
                lines.append(f"mutation smoke test FAILED: perturbed {p.name} still passes")
    if errata:
        n = append_errata(Path(errata), verdicts)
        if n:
            lines.append(f"appended {n} entr{'y' if n == 1 else 'ies'} to {errata}")
    bad = [v.name for v in verdicts if not v.valid and not v.name.endswith("*")]
    lines.append(f"{len(pairs) - len(bad)} of {len(pairs)} certificates valid" + (f"; invalid: {', '.join(bad)}" if bad else ""))
    _emit(report_document(cfg, (), verdicts), cfg, lines)
    return status


# ---------------------------------------------------------------------------
# verify

def _run_task(task) -> List[ck.CheckReport]:
    kind, args = task
    try:
        rep = getattr(ck, kind)(*args)
    except (ArithmeticError, KeyError, ValueError) as exc:
        head = args[0] if args else None
        ident = head if isinstance(head, int) else (BY_NAME[head].identity if head in BY_NAME else None)
        label = head if isinstance(head, str) else "-"
        a = str(args[1]) if kind in ("check_telescoping", "check_boundary_limit") else "-"
        verdict = "skipped" if isinstance(exc, ck.SKIPPABLE) else "error"
        return [ck.CheckReport(kind.replace("check_", ""), ident, label, a, None, None, 0.0,
                               verdict=verdict, note=f"{type(exc).__name__}: {exc}")]
    return rep if isinstance(rep, list) else [rep]


def verify_tasks(cfg: RunConfig) -> list:
    tasks = []
    for i in cfg.ids:
        d = IDENTITIES[i]
        labels = cfg.variants or d.variant_labels
        for label in labels:
            if label not in d.variant_labels:
                continue
            for a in cfg.grid_for(i):
                tasks.append(("check_identity", (i, label, a, cfg.prec, cfg.tol, cfg.max_terms)))
        if d.expanded_from is not None and cfg.variants is None:
            for a in cfg.grid_for(i):
                tasks.append(("check_composition", (i, a, cfg.prec, cfg.tol)))
        if cfg.special and d.special_values:
            tasks.append(("check_special_values", (i, cfg.prec, cfg.tol)))
        if cfg.derivatives:
            tasks.append(("check_derivatives", (i, 0, ck.DERIVATIVE_STEP, cfg.prec, cfg.tol)))
            for order in (1, 2):
                tasks.append(("check_derivatives", (i, order, ck.DERIVATIVE_STEP, cfg.prec, max(cfg.tol, ck.DERIVATIVE_TOL))))
        if cfg.limits and d.catalan_limit is not None:
            tasks.append(("check_catalan_limit", (i, cfg.prec)))
        if cfg.telescope is not None:
            for p in d.wz_pairs:
                for a in cfg.grid_for(i):
                    tasks.append(("check_telescoping", (p, a, cfg.telescope, cfg.prec)))
        if cfg.boundary:
            for p in d.wz_pairs:
                if p in BOUNDARY_FORMS:
                    for a in ("0", "1/4", "3/10"):
                        tasks.append(("check_boundary_limit", (p, a, cfg.prec)))
    if cfg.limits and set(cfg.ids) & {8, 9, 10}:
        tasks.append(("check_auxiliary", (cfg.prec,)))
    return tasks


def run_verify(cfg: RunConfig) -> List[ck.CheckReport]:
    tasks = verify_tasks(cfg)
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_run_task, tasks))
    else:
        results = [_run_task(t) for t in tasks]
    return [r for chunk in results for r in chunk]


def cmd_verify(cfg: RunConfig) -> int:
    reports = run_verify(cfg)
    s = _summary(reports)
    lines = [r.line() for r in reports]
    lines.append(f"{s['pass']} passed, {s['fail']} failed, {s['error']} errors, {s['skipped']} skipped")
    _emit(report_document(cfg, reports), cfg, lines)
    return 0 if s["fail"] == 0 and s["error"] == 0 else 1


# ---------------------------------------------------------------------------
# export, constants

def cmd_export(cfg: RunConfig) -> int:
    payload = json.dumps(export_document(), indent=2, ensure_ascii=False)
    if cfg.json_path and cfg.json_path != "-":
        Path(cfg.json_path).write_text(payload + "\n", encoding="utf-8")
    else:
        print(payload)
    return 0


def cmd_constants(digits: int, route: int = 0) -> int:
    prec = int(digits * 3.3219280948873626) + 16
    for name in ("pi", "ln2", "catalan", "zeta3"):
        print(f"{name:8} {constant(name, prec, route).to_decimal(digits)}")
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--id", action="append", help="identity number(s), comma separated; default all")
    common.add_argument("--all", action="store_true", help="select everything (all identities; all suites for verify)")
    common.add_argument("--json", metavar="PATH", help="also write a JSON report ('-' prints JSON instead of text)")
    common.add_argument("--prec", type=int, default=_env_default(ENV_PREC, ck.DEFAULT_PREC, int),
                        help=f"precision in bits (env {ENV_PREC}; default 256)")
    common.add_argument("--tol", type=float, default=_env_default(ENV_TOL, ck.DEFAULT_TOL, float),
                        help=f"relative tolerance (env {ENV_TOL}; default 1e-20)")
    common.add_argument("--max-terms", type=int, default=_env_default(ENV_MAX_TERMS, 100_000, int),
                        help=f"per-series term cap (env {ENV_MAX_TERMS}; default 100000)")

    p = argparse.ArgumentParser(prog="wzverify", description="Verify WZ certificates and extended Ramanujan-type identities.")
    p.add_argument("--version", action="version", version=f"wzverify {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("list", parents=[common], help="list identities, variants and certificates")
    w = sub.add_parser("wz", parents=[common], help="check WZ certificates symbolically")
    w.add_argument("--mutate-smoke", action="store_true", help="also check a perturbed copy of each pair")
    w.add_argument("--errata", default="ERRATA.md", help="errata ledger path ('' disables)")
    v = sub.add_parser("verify", parents=[common], help="numerical identity checks")
    v.add_argument("--variant", action="append", help="right-hand-side variant label(s)")
    v.add_argument("--a", action="append", help="evaluation point(s), e.g. 0.3 or 3/10; added to --grid")
    v.add_argument("--grid", help="comma separated points replacing the default grid")
    v.add_argument("--special", action="store_true")
    v.add_argument("--derivatives", action="store_true")
    v.add_argument("--limits", action="store_true")
    v.add_argument("--telescope", type=int, metavar="K")
    v.add_argument("--boundary", action="store_true")
    v.add_argument("--jobs", type=int, default=1)
    sub.add_parser("export", parents=[common], help="dump the registry as JSON")
    c = sub.add_parser("constants", help="print constants")
    c.add_argument("--digits", type=int, default=50)
    c.add_argument("--route", type=int, choices=(0, 1), default=0, help="which of the two independent algorithms")
    return p


def config_from_args(ns) -> RunConfig:
    ids = sorted(IDENTITIES) if getattr(ns, "all", False) else _parse_ids(ns.id)
    grid = None
    if getattr(ns, "grid", None):
        grid = _split([ns.grid])
    if getattr(ns, "a", None):
        pts = _split(ns.a)
        grid = pts if grid is None else grid + pts
    everything = ns.command == "verify" and ns.all
    return RunConfig(
        command=ns.command, ids=ids, variants=_split(getattr(ns, "variant", None)), grid=grid,
        prec=ns.prec, tol=ns.tol, max_terms=ns.max_terms,
        output="json" if ns.json else "text", json_path=ns.json,
        special=getattr(ns, "special", False) or everything,
        derivatives=getattr(ns, "derivatives", False) or everything,
        limits=getattr(ns, "limits", False) or everything,
        telescope=getattr(ns, "telescope", None) if not everything or getattr(ns, "telescope", None) is not None else 5,
        boundary=getattr(ns, "boundary", False) or everything,
        jobs=getattr(ns, "jobs", 1),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    if ns.command == "constants":
        return cmd_constants(ns.digits, ns.route)
    try:
        cfg = config_from_args(ns)
    except ValueError as exc:
        print(f"wzverify: {exc}", file=sys.stderr)
        return 2
    if ns.command == "list":
        return cmd_list(cfg)
    if ns.command == "wz":
        return cmd_wz(cfg, ns.mutate_smoke, ns.errata or None)
    if ns.command == "verify":
        return cmd_verify(cfg)
    return cmd_export(cfg)


if __name__ == "__main__":
    sys.exit(main())
