"""Verify-run history with atomic writes."""

import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, List, Optional

from src.common.time import now_utc, parse_iso

logger = logging.getLogger(__name__)

STATE_DIR = Path(os.environ.get("ALCALC_STATE_DIR", "state"))
HISTORY_FILE = STATE_DIR / "history.json"

# Runs kept per fingerprint
MAX_RUNS = 20


def write_json_atomic(path: Path, payload: Any, prefix: str) -> None:
    """Write payload as JSON next to path, then rename over it."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, temp_path = tempfile.mkstemp(dir=path.parent, prefix=prefix, suffix=".json")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            json.dump(payload, f, indent=2, sort_keys=True)
        os.replace(temp_path, path)
    except Exception:
        if os.path.exists(temp_path):
            os.unlink(temp_path)
        raise


def get_default_history() -> Dict[str, Any]:
    """Return the default history structure."""
    return {
        "version": 1,
        "last_run": None,
        "runs": {},
    }


class HistoryStore:
    """Run history keyed by configuration fingerprint."""

    def __init__(self, history_file: Optional[Path] = None):
        self.history_file = Path(history_file) if history_file else HISTORY_FILE
        self._state: Optional[Dict[str, Any]] = None

    def load(self) -> Dict[str, Any]:
        """
        Load history from disk.

        Returns default history if the file doesn't exist or is unreadable.
        """
        if self._state is not None:
            return self._state

        if not self.history_file.exists():
            logger.debug(f"History file not found, using defaults: {self.history_file}")
            self._state = get_default_history()
            return self._state

        try:
            with open(self.history_file, "r", encoding="utf-8") as f:
                self._state = json.load(f)
            logger.debug(f"Loaded history from {self.history_file}")
        except (json.JSONDecodeError, IOError) as e:
            logger.warning(f"Failed to load history, using defaults: {e}")
            self._state = get_default_history()

        # Merge with defaults to handle schema changes
        for key, value in get_default_history().items():
            self._state.setdefault(key, value)
        return self._state

    def save(self) -> None:
        if self._state is None:
            logger.warning("No history to save")
            return
        write_json_atomic(self.history_file, self._state, ".history_")
        logger.info(f"Saved history to {self.history_file}")

    def record(self, key: str, entry: Dict[str, Any]) -> Dict[str, Any]:
        """Append a run under its fingerprint (does not save automatically)."""
        state = self.load()
        stamped = dict(entry, recorded_at=now_utc().isoformat(), fingerprint=key)
        runs = state["runs"].setdefault(key, [])
        runs.append(stamped)
        del runs[:-MAX_RUNS]
        state["last_run"] = stamped["recorded_at"]
        return stamped

    def runs(self, key: Optional[str] = None) -> List[Dict[str, Any]]:
        """Recorded runs, newest first, optionally for one fingerprint."""
        state = self.load()
        buckets = [state["runs"].get(key, [])] if key else list(state["runs"].values())
        runs = [run for bucket in buckets for run in bucket]
        runs.sort(key=lambda r: parse_iso(r.get("recorded_at")) or now_utc(), reverse=True)
        return runs

    def last_run(self) -> Optional[str]:
        return self.load().get("last_run")
