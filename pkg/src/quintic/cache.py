"""On-disk series cache.

File format (bit-exact, LF endings): line 1 is ``name offset precision``,
then one decimal integer coefficient per line for exponents
offset..precision-1.  Entries are keyed by (name, trunc) and are never
served at a higher precision than stored.

The cache is advisory: on load a 10% prefix of the series is recomputed
and compared, and a corrupt or stale file is ignored with a warning and
rebuilt.
"""

from __future__ import annotations

import os
import sys
from pathlib import Path

from .series import QSeries

ENV_VAR = "CONGRUENCE_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "quintic"


def entry_path(cache_dir: Path, name: str, trunc: int) -> Path:
    return Path(cache_dir) / f"{name}.{trunc}.series"


def write_series(cache_dir: Path, name: str, series: QSeries) -> Path:
    path = entry_path(cache_dir, name, series.precision)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"{name} {series.offset} {series.precision}"]
    lines.extend(str(series[n])
                 for n in range(series.offset, series.precision))
    path.write_text("\n".join(lines) + "\n", newline="\n")
    return path


def read_series(path: Path) -> tuple[str, QSeries]:
    text = Path(path).read_text()
    lines = text.split("\n")
    name, offset, precision = lines[0].split()
    offset, precision = int(offset), int(precision)
    coeffs = [int(line) for line in lines[1:precision - offset + 1]]
    if len(coeffs) != precision - offset:
        raise ValueError("truncated cache entry")
    return name, QSeries(offset, coeffs, precision)


def load_series(cache_dir: Path, name: str, trunc: int, build,
                verify_fraction: float = 0.10) -> QSeries:
    """Fetch (name, trunc), rebuilding on miss or content mismatch.

    The loaded series is validated by recomputing the first
    ``verify_fraction`` of its coefficients (at least 5) from scratch; a
    disagreement means a corrupt cache, which is ignored with a warning.
    """
    path = entry_path(cache_dir, name, trunc)
    if path.exists():
        try:
            stored_name, series = read_series(path)
            if stored_name != name or series.precision != trunc:
                raise ValueError("cache key mismatch")
            probe = max(5, int(trunc * verify_fraction))
            probe = min(probe, trunc - series.offset - 1)
            if probe > 0:
                fresh = build(series.offset + probe)
                for n in range(series.offset, series.offset + probe):
                    if series[n] != fresh[n]:
                        raise ValueError(f"content mismatch at q^{n}")
            return series
        except Exception as exc:  # noqa: BLE001 - cache is advisory
            print(f"warning: ignoring cache entry {path} ({exc})",
                  file=sys.stderr)
    series = build(trunc)
    try:
        write_series(cache_dir, name, series)
    except OSError as exc:
        print(f"warning: could not write cache entry ({exc})",
              file=sys.stderr)
    return series
