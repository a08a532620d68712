"""Verification reports, their JSON schemas, and the on-disk result cache."""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from turanlab import __version__

# fields allowed to differ between two runs of the same command
VOLATILE_KEYS = ("timestamp", "timing", "cache_hit", "explored_this_run")


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass
class VerificationReport:
    kind: str
    command: list[str]
    config: dict
    computed: dict
    formula: dict
    verdicts: dict
    timing: dict = field(default_factory=dict)
    version: str = __version__
    timestamp: str = field(default_factory=_now)

    @property
    def passed(self) -> bool:
        return bool(self.verdicts.get("pass"))

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> VerificationReport:
        keys = {f for f in cls.__dataclass_fields__}
        return cls(**{k: v for k, v in d.items() if k in keys})


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def stable_view(report: dict) -> dict:
    """The report without run-dependent fields (timestamps, timings, cache markers, argv)."""
    return {k: v for k, v in report.items() if k not in VOLATILE_KEYS and k != "command"}


def config_key(kind: str, config: dict) -> str:
    payload = json.dumps({"kind": kind, "config": config, "version": __version__}, sort_keys=True)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def default_cache_dir() -> Path:
    env = os.environ.get("TURAN_CACHE_DIR")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "turanlab"


class ResultCache:
    """Report files keyed by a hash of the semantic config and the tool version."""

    def __init__(self, directory: str | os.PathLike | None = None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()

    def path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def get(self, key: str) -> str | None:
        p = self.path(key)
        try:
            return p.read_text(encoding="utf-8")
        except FileNotFoundError:
            return None

    def put(self, key: str, text: str) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        p = self.path(key)
        tmp = p.with_suffix(".tmp")
        tmp.write_text(text, encoding="utf-8")
        tmp.replace(p)
        return p


# ---------------------------------------------------------------------------
# output schemas
# ---------------------------------------------------------------------------

COUNT_SCHEMA = {
    "type": "object",
    "required": ["pattern", "n", "copies"],
    "additionalProperties": False,
    "properties": {
        "pattern": {"type": "string"},
        "n": {"type": "integer", "minimum": 1, "maximum": 64},
        "copies": {"type": "integer", "minimum": 0},
    },
}

REPORT_SCHEMA = {
    "type": "object",
    "required": [
        "kind",
        "command",
        "config",
        "computed",
        "formula",
        "verdicts",
        "timing",
        "version",
        "timestamp",
    ],
    "properties": {
        "kind": {"type": "string"},
        "command": {"type": "array", "items": {"type": "string"}},
        "config": {"type": "object"},
        "computed": {"type": "object"},
        "formula": {"type": "object"},
        "verdicts": {"type": "object", "required": ["pass"]},
        "timing": {"type": "object"},
        "version": {"type": "string"},
        "timestamp": {"type": "string"},
        "cache_hit": {"type": "boolean"},
        "explored_this_run": {"type": "integer", "minimum": 0},
    },
}

CONSTRUCT_SCHEMA = {
    "type": "object",
    "required": ["construction", "n", "graph6", "check"],
    "properties": {
        "construction": {"type": "string"},
        "n": {"type": "integer"},
        "graph6": {"type": "string"},
        "check": {"type": "object", "required": ["pass"]},
    },
}

VERIFY_SCHEMA = {
    "type": "object",
    "required": ["kind", "summary", "passed", "reports", "csv"],
    "properties": {
        "kind": {"type": "string"},
        "summary": {"type": "string", "pattern": "^(PASS [0-9]+/[0-9]+|FAIL)"},
        "passed": {"type": "boolean"},
        "reports": {"type": "array", "items": REPORT_SCHEMA},
        "csv": {"type": "string"},
    },
}
