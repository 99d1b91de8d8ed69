"""Run the certificate check and every numerical suite, writing JSON reports to an output directory."""

import argparse
import json
import time
from dataclasses import dataclass
from pathlib import Path

from wzverify import cli


@dataclass
class RunSettings:
    out_dir: Path = Path("results")
    prec: int = 256
    tol: float = 1e-20
    telescope: int = 5
    jobs: int = 1


def run(s: RunSettings) -> int:
    s.out_dir.mkdir(parents=True, exist_ok=True)
    wz_cfg = cli.RunConfig("wz", prec=s.prec, tol=s.tol, json_path=str(s.out_dir / "wz.json"))
    cli.cmd_wz(wz_cfg, mutate_smoke=True, errata=str(s.out_dir / "ERRATA.md"))

    cfg = cli.RunConfig("verify", prec=s.prec, tol=s.tol, special=True, derivatives=True, limits=True,
                        telescope=s.telescope, boundary=True, jobs=s.jobs)
    t0 = time.perf_counter()
    reports = cli.run_verify(cfg)
    doc = cli.report_document(cfg, reports)
    (s.out_dir / "verify.json").write_text(json.dumps(doc, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    summary = doc["summary"]
    print(f"verify: {summary['pass']} pass, {summary['fail']} fail, {summary['error']} error, "
          f"{summary['skipped']} skipped in {time.perf_counter() - t0:.1f} s")
    for r in reports:
        if r.verdict in ("fail", "error"):
            print("  " + r.line())
    return 0 if summary["fail"] == summary["error"] == 0 else 1


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--out", type=Path, default=RunSettings.out_dir)
    p.add_argument("--prec", type=int, default=RunSettings.prec)
    p.add_argument("--tol", type=float, default=RunSettings.tol)
    p.add_argument("--telescope", type=int, default=RunSettings.telescope)
    p.add_argument("--jobs", type=int, default=RunSettings.jobs)
    a = p.parse_args()
    return run(RunSettings(a.out, a.prec, a.tol, a.telescope, a.jobs))


if __name__ == "__main__":
    raise SystemExit(main())
