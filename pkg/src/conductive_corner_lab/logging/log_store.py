"""JSON-lines event store

Each log type gets one file per session, <log_type>_<session_id>.jsonl,
inside the store directory. Entries are dataclasses or mappings; numpy
values and complex numbers are converted to plain JSON on the way out.
"""

import json
from dataclasses import asdict, is_dataclass
from datetime import datetime
from pathlib import Path
from typing import Any

import numpy as np

DEFAULT_DIR = Path("./logs")

_log_store: "LogStore | None" = None


def get_log_store(base_dir: str | Path | None = None) -> "LogStore":
    """Process-wide LogStore (created on first use in base_dir or ./logs)"""
    global _log_store
    if _log_store is None:
        _log_store = LogStore(base_dir)
    return _log_store


def reset_log_store() -> None:
    """Forget the process-wide LogStore (tests)"""
    global _log_store
    _log_store = None


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (np.integer, np.floating, np.bool_)):
        return value.item()
    return value


class LogStore:
    """Append-only JSON-lines storage for solver, sweep and scan events"""

    def __init__(self, base_dir: str | Path | None = None, session_id: str | None = None):
        """
        Args:
            base_dir: Directory of the log files (default: ./logs, created on demand)
            session_id: Session label (default: start time, YYYYmmdd_HHMMSS)
        """
        self.base_dir = Path(base_dir) if base_dir is not None else DEFAULT_DIR
        self.base_dir.mkdir(parents=True, exist_ok=True)
        self._session_id = session_id

    @property
    def session_id(self) -> str:
        if self._session_id is None:
            self._session_id = datetime.now().strftime("%Y%m%d_%H%M%S")
        return self._session_id

    def set_session_id(self, session_id: str) -> None:
        self._session_id = session_id

    def get_session_id(self) -> str:
        return self.session_id

    def clear_session(self) -> None:
        """Start a new session on the next write"""
        self._session_id = None

    def path_for(self, log_type: str) -> Path:
        return self.base_dir / f"{log_type}_{self.session_id}.jsonl"

    def write(self, log_type: str, entry: Any) -> None:
        """Append one entry, tagged with _log_type and _logged_at"""
        data = asdict(entry) if is_dataclass(entry) else dict(entry)
        data = _jsonable(data)
        data["_log_type"] = log_type
        data["_logged_at"] = datetime.now().isoformat()
        with open(self.path_for(log_type), "a", encoding="utf-8") as f:
            f.write(json.dumps(data) + "\n")

    def read_all(self, log_type: str) -> list[dict]:
        """Entries of the current session, oldest first"""
        path = self.path_for(log_type)
        if not path.exists():
            return []
        with open(path, encoding="utf-8") as f:
            return [json.loads(line) for line in f if line.strip()]

    def get_stats(self, log_type: str) -> dict:
        """Entry count, session id and file of a log type"""
        return {
            "count": len(self.read_all(log_type)),
            "session_id": self.session_id,
            "log_file": str(self.path_for(log_type)),
        }
