"""Verify job runner: runs the oracle suite and records the outcome."""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from src.blocks.levi_block import parse_levi
from src.common.errors import AlcalcError, exit_code_for
from src.common.fingerprint import fingerprint
from src.common.storage import HistoryStore
from src.common.time import format_datetime, format_relative
from src.oracle.verify import VerifyConfig, VerifyReport, verify_suite

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s"
)
logger = logging.getLogger(__name__)

# Exit status of a run whose report contains failures
REPORT_FAILED = 2


def config_key(cfg: VerifyConfig) -> str:
    return fingerprint(
        "verify", cfg.type_spec,
        p=cfg.p, levis=cfg.levis, box=cfg.box, max_d=cfg.max_d, seed=cfg.seed, samples=cfg.samples,
    )


def run(cfg: VerifyConfig, save: bool = True, history_file: Optional[Path] = None) -> VerifyReport:
    """
    Run the verify suite for one configuration.

    The outcome is appended to the run history unless save is False.
    """
    logger.info(f"Starting verify job for {cfg.type_spec} at p={cfg.p}")
    report = verify_suite(cfg)

    if save:
        store = HistoryStore(history_file)
        store.record(config_key(cfg), dict(report.summary(), config=cfg.to_dict()))
        store.save()

    if report.passed:
        logger.info(f"Verify passed: {report.instances} instances")
    else:
        logger.error(f"Verify failed: {', '.join(report.failed_checks())}")
    return report


def recent_runs(history_file: Optional[Path] = None, limit: int = 10) -> List[Dict[str, Any]]:
    """Past runs, newest first, with human-readable timestamps."""
    rows = []
    for entry in HistoryStore(history_file).runs()[:limit]:
        config = entry.get("config", {})
        rows.append({
            "fingerprint": entry.get("fingerprint"),
            "type": config.get("type"),
            "p": config.get("p"),
            "passed": entry.get("passed"),
            "instances": entry.get("instances"),
            "failed_checks": entry.get("failed_checks", []),
            "seed": entry.get("seed"),
            "when": format_relative(entry.get("recorded_at")),
            "recorded_at": format_datetime(entry.get("recorded_at")),
        })
    return rows


def main():
    parser = argparse.ArgumentParser(description="Run the alcove-calculus verify suite")
    parser.add_argument("--type", required=True, help="Root system type, e.g. A2 or B2xA1")
    parser.add_argument("--p", type=int, required=True, help="Characteristic")
    parser.add_argument(
        "--I",
        action="append",
        help="Levi subset to check (repeatable); all subsets when omitted"
    )
    parser.add_argument("--box", type=int, default=20, help="Coordinate box radius")
    parser.add_argument("--max-d", type=int, default=3, help="Largest |d| of labels checked")
    parser.add_argument("--seed", type=int, default=0, help="Seed for sampled checks")
    parser.add_argument("--samples", type=int, default=200, help="Random characters per Levi subset")
    parser.add_argument(
        "--no-save",
        action="store_true",
        help="Do not record this run in the history"
    )
    args = parser.parse_args()

    try:
        cfg = VerifyConfig(
            type_spec=args.type,
            p=args.p,
            levis=tuple(parse_levi(text) for text in args.I) if args.I else None,
            box=args.box,
            max_d=args.max_d,
            seed=args.seed,
            samples=args.samples,
        )
        report = run(cfg, save=not args.no_save)
    except AlcalcError as e:
        print(str(e), file=sys.stderr)
        sys.exit(exit_code_for(e))

    print(report.to_jsonl())
    sys.exit(0 if report.passed else REPORT_FAILED)


if __name__ == "__main__":
    main()
