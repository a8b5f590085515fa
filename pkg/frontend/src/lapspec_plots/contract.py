"""Reading and validating the campaign file formats.

This package talks to the simulation artifact only through its published
files: the replicate CSV and the JSON manifest. Nothing here imports the
producing package; the two sides agree because both pin the same schema
tag and header line, which this module checks before anything is drawn.
"""

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path

SUPPORTED_SCHEMA = "lapspec-experiment-manifest"
SUPPORTED_VERSIONS = ("1",)

CSV_HEADER = (
    "replicate,lambda_max,max_diag,m_n,r_n,minmax_ok,upper_ok,comparison_ok,wall_ms"
)

_FLOAT_COLUMNS = ("lambda_max", "max_diag", "m_n", "r_n")


class ContractError(ValueError):
    """Input file does not match the published CSV/manifest contract."""


@dataclass(frozen=True)
class Campaign:
    """One campaign's records plus its manifest, as read from disk."""

    manifest: dict
    rows: tuple  # of dicts keyed by CSV column, floats or None

    @property
    def config(self):
        return self.manifest["config"]

    @property
    def summary(self):
        return self.manifest["summary"]

    def column(self, name):
        """Non-empty values of one float column, in record order."""
        out = [row[name] for row in self.rows if row[name] is not None]
        if not out:
            raise ContractError(f"column {name!r} is empty in every record")
        return out


def load_manifest(path):
    try:
        manifest = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ContractError(f"manifest is not valid JSON: {exc}") from exc
    if manifest.get("schema") != SUPPORTED_SCHEMA:
        raise ContractError(f"unsupported manifest schema {manifest.get('schema')!r}")
    if manifest.get("version") not in SUPPORTED_VERSIONS:
        raise ContractError(f"unsupported manifest version {manifest.get('version')!r}")
    for key in ("config", "summary"):
        if key not in manifest:
            raise ContractError(f"manifest is missing its {key!r} block")
    return manifest


def _parse_row(raw):
    row = {"replicate": int(raw["replicate"])}
    for name in _FLOAT_COLUMNS:
        cell = raw[name]
        row[name] = float(cell) if cell != "" else None
    for name in ("minmax_ok", "upper_ok", "comparison_ok"):
        cell = raw[name]
        row[name] = bool(int(cell)) if cell != "" else None
    return row


def load_records(path):
    text = Path(path).read_text(encoding="utf-8")
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or ",".join(reader.fieldnames) != CSV_HEADER:
        raise ContractError("CSV header does not match the published record format")
    rows = []
    for i, raw in enumerate(reader):
        if None in raw or None in raw.values():
            raise ContractError(f"malformed CSV row {i + 2}")
        try:
            rows.append(_parse_row(raw))
        except ValueError as exc:
            raise ContractError(f"malformed CSV row {i + 2}: {exc}") from exc
    if not rows:
        raise ContractError("record file holds no replicates")
    return tuple(rows)


def load_campaign(csv_path, manifest_path):
    return Campaign(manifest=load_manifest(manifest_path), rows=load_records(csv_path))
