"""Deterministic CSV/JSON emission with one run manifest per data file."""

import hashlib
import json
import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Dict, List, Optional, Union

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json")
MANIFEST_SUFFIX = ".manifest.json"


def to_builtin(value):
    """json.dumps fallback for numpy scalars and arrays."""
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def finite_or_none(payload):
    """Replace NaN and infinities with None so the JSON stays strict; recurses into containers."""
    if isinstance(payload, dict):
        return {key: finite_or_none(value) for key, value in payload.items()}
    if isinstance(payload, (list, tuple)):
        return [finite_or_none(value) for value in payload]
    if isinstance(payload, np.ndarray):
        return finite_or_none(payload.tolist())
    if isinstance(payload, (float, np.floating)) and not np.isfinite(payload):
        return None
    return payload


def dumps(payload) -> str:
    # Python's float repr is the shortest text that reads back bit-for-bit
    return json.dumps(finite_or_none(payload), indent=2, sort_keys=False, default=to_builtin, allow_nan=False) + "\n"


def sha256_of(path: Union[str, Path]) -> str:
    digest = hashlib.sha256()
    with open(path, 'rb') as f:
        for block in iter(lambda: f.read(65536), b""):
            digest.update(block)
    return digest.hexdigest()


class RunRecorder:
    """Write the outputs of one CLI run and a manifest beside each of them."""

    def __init__(self, output_dir: Union[str, Path], subcommand: str, params: Dict,
                 config_source: Optional[str] = None, version: str = "0"):
        self.output_dir = Path(output_dir)
        self.subcommand = subcommand
        self.params = params
        self.config_source = config_source
        self.version = version
        self.written: List[Path] = []

    def _target(self, name: str, fmt: str) -> Path:
        self.output_dir.mkdir(parents=True, exist_ok=True)
        return self.output_dir / f"{name}.{fmt}"

    def write_table(self, name: str, table: pd.DataFrame, fmt: str = "csv") -> Path:
        """Emit a table as CSV (header row, '.' decimals, round-trip floats) or as a JSON list of records."""
        if fmt not in FORMATS:
            raise ValueError(f"Unknown output format '{fmt}', expected one of {FORMATS}")
        path = self._target(name, fmt)
        if fmt == "csv":
            table.to_csv(path, index=False, lineterminator="\n")
        else:
            path.write_text(dumps(table.to_dict(orient="records")))
        return self._finish(path, rows=len(table))

    def write_report(self, name: str, report: Dict) -> Path:
        """Scalar and report outputs are always JSON."""
        path = self._target(name, "json")
        path.write_text(dumps(report))
        return self._finish(path)

    def _finish(self, path: Path, rows: Optional[int] = None) -> Path:
        manifest = self.manifest_for(path, rows)
        manifest_path = path.with_name(path.name + MANIFEST_SUFFIX)
        manifest_path.write_text(dumps(manifest))
        self.written.append(path)
        logger.info(f"💾 Wrote {path}" + (f" ({rows} rows)" if rows is not None else ""))
        return path

    def manifest_for(self, path: Path, rows: Optional[int] = None) -> Dict:
        manifest = {
            "subcommand": self.subcommand,
            "parameters": self.params,
            "config_source": self.config_source,
            "output": str(path),
            "sha256": sha256_of(path),
            "tool_version": self.version,
            "timestamp": datetime.now(timezone.utc).isoformat(),
        }
        if rows is not None:
            manifest["rows"] = rows
        return manifest


def load_manifest(path: Union[str, Path]) -> Dict:
    """Manifest written next to the data file at ``path``."""
    path = Path(path)
    with open(path.with_name(path.name + MANIFEST_SUFFIX), 'r') as f:
        return json.load(f)
