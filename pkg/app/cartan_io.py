"""
Cartan-datum ingestion for the command line.

A source is either a preset name from config/presets.py or a path to a JSON
file holding {name, cartan, symmetrizer, tau} with a 1-indexed τ.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path

from config.presets import PRESETS
from core.cartan import CartanDatum, CartanError, validate

logger = logging.getLogger(__name__)


def read_datum(source: str) -> CartanDatum:
    """Parse a preset name or JSON file without validating it."""
    if source in PRESETS:
        return CartanDatum.from_dict(PRESETS[source])
    path = Path(source)
    if not path.is_file():
        raise CartanError(f"{source!r} is neither a preset ({', '.join(PRESETS)}) nor a readable file")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CartanError(f"cannot read Cartan file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise CartanError(f"Cartan file {path} must hold a JSON object")
    data.setdefault("name", path.stem)
    logger.debug("Loaded Cartan datum %s from %s", data["name"], path)
    return CartanDatum.from_dict(data)


def check_datum(source: str) -> tuple[CartanDatum | None, list[str]]:
    """
    Returns (datum, violations). datum is None only when the source cannot be
    parsed at all, in which case violations holds the single parse error.
    """
    try:
        datum = read_datum(source)
    except CartanError as exc:
        return None, [str(exc)]
    return datum, validate(datum)


def load_datum(source: str) -> CartanDatum:
    """Parse and validate; raises CartanError listing every violation."""
    datum, violations = check_datum(source)
    if datum is None or violations:
        raise CartanError("; ".join(violations))
    return datum
