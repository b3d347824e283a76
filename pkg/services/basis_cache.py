# ═══════════════════════════════════════════════════════════════════════════════
# iQuantum Engine: WeightBasis Disk Cache
#
# One JSON file per (datum fingerprint, weight, sign). The header is checked on
# load; a file that fails to parse or whose header disagrees is discarded with
# a warning and the basis is recomputed.
# ═══════════════════════════════════════════════════════════════════════════════

from __future__ import annotations

import json
import logging
import os
from pathlib import Path

from config.constants import CACHE_DIR_ENV, CACHE_FORMAT_VERSION, CACHE_WORD_ORDER, DEFAULT_CACHE_DIR
from core.cartan import CartanDatum, Weight, fingerprint
from core.scalars import Scalar, ScalarError
from core.udouble import WeightBasis

logger = logging.getLogger(__name__)


def get_cache_dir() -> Path:
    return Path(os.getenv(CACHE_DIR_ENV) or DEFAULT_CACHE_DIR)


def _word_key(word: tuple[int, ...]) -> str:
    return ",".join(str(a) for a in word)


def _parse_word(text: str) -> tuple[int, ...]:
    return tuple(int(a) for a in text.split(",")) if text else ()


class BasisStore:
    """Filesystem persistence for exact WeightBasis objects."""

    def __init__(self, directory: Path | str | None = None) -> None:
        self.directory = Path(directory) if directory is not None else get_cache_dir()

    def path_for(self, datum: CartanDatum, weight: Weight, sign: str) -> Path:
        tag = "p" if sign == "+" else "m"
        coords = "_".join(str(abs(a)) for a in weight.coords)
        return self.directory / f"{fingerprint(datum)[:16]}_{tag}_{coords}.json"

    def header(self, datum: CartanDatum, weight: Weight, sign: str) -> dict:
        return {
            "version": CACHE_FORMAT_VERSION,
            "datum": fingerprint(datum),
            "weight": list(weight.coords),
            "sign": sign,
            "order": CACHE_WORD_ORDER,
        }

    def save(self, datum: CartanDatum, basis: WeightBasis) -> None:
        path = self.path_for(datum, basis.weight, basis.sign)
        payload = self.header(datum, basis.weight, basis.sign)
        payload["monomials"] = [_word_key(w) for w in basis.monomials]
        payload["standard"] = [_word_key(w) for w in basis.standard]
        payload["reduction"] = {
            _word_key(lead): {_word_key(s): c.to_text() for s, c in sorted(row.items())}
            for lead, row in sorted(basis.reduction.items())
        }
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(f".tmp{os.getpid()}")
            tmp.write_text(json.dumps(payload, indent=1), encoding="utf-8")
            os.replace(tmp, path)
        except OSError as exc:
            logger.warning("Could not write basis cache %s: %s", path, exc)

    def load(self, datum: CartanDatum, weight: Weight, sign: str) -> WeightBasis | None:
        path = self.path_for(datum, weight, sign)
        if not path.exists():
            return None
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
            expected = self.header(datum, weight, sign)
            if any(payload.get(key) != value for key, value in expected.items()):
                raise ValueError("header mismatch")
            monomials = [_parse_word(w) for w in payload["monomials"]]
            standard = {_parse_word(w) for w in payload["standard"]}
            reduction = {
                _parse_word(lead): {_parse_word(s): Scalar.from_text(c) for s, c in row.items()}
                for lead, row in payload["reduction"].items()
            }
        except (OSError, ValueError, KeyError, TypeError, ScalarError) as exc:
            logger.warning("Discarding corrupt basis cache %s (%s)", path, exc)
            try:
                path.unlink()
            except OSError:
                pass
            return None
        return WeightBasis(weight, sign, monomials, [w in standard for w in monomials], reduction)
