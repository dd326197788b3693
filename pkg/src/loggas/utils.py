"""
Utility functions shared across loggas.

Seeding helpers give every sample or trajectory its own reproducible
random stream, keyed by ``(seed, stream index)``, so results never depend
on how work is split across workers. The writers fix the on-disk formats:
CSV with 17 significant digits and sorted, indented JSON.
"""

import csv
import json
from dataclasses import asdict, is_dataclass
from pathlib import Path
from typing import Any, Iterable, List, Sequence, Tuple, Union

import numpy as np

SeedLike = Union[int, np.random.SeedSequence, None]

CSV_FLOAT_FORMAT = "{:.17g}"


def generate_seed() -> int:
    """Draw a fresh seed from OS entropy so it can be recorded."""
    return int(np.random.SeedSequence().entropy)


def stream_sequence(seed: int, index: int) -> np.random.SeedSequence:
    """Seed sequence of stream *index* under root *seed*.

    Identical to ``np.random.SeedSequence(seed).spawn(index + 1)[index]``
    but needs no knowledge of the other streams.
    """
    return np.random.SeedSequence(seed, spawn_key=(index,))


def stream_generator(seed: int, index: int) -> np.random.Generator:
    """Independent generator for stream *index* under root *seed*."""
    return np.random.default_rng(stream_sequence(seed, index))


def as_generator(rng: Union[SeedLike, np.random.Generator]) -> np.random.Generator:
    """Coerce a seed, seed sequence or generator into a generator."""
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def probe_grid(lo: float, hi: float, n: int = 64) -> np.ndarray:
    """*n* interior points of the open interval ``(lo, hi)``.

    Endpoints are never included, so singular endpoints are safe.
    """
    if not np.isfinite(lo) or not np.isfinite(hi) or hi <= lo:
        raise ValueError(f"probe interval must be finite and non-empty, got ({lo}, {hi})")
    return np.linspace(lo, hi, n + 2)[1:-1]


def format_float(value: Any) -> str:
    """Format a number for CSV output."""
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return CSV_FLOAT_FORMAT.format(float(value))


def write_csv(path: Union[str, Path], header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    """Write rows to *path*; numeric cells use :data:`CSV_FLOAT_FORMAT`."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        if header:
            writer.writerow(list(header))
        for row in rows:
            writer.writerow(
                [cell if isinstance(cell, str) else format_float(cell) for cell in row]
            )
    return path


def read_csv(path: Union[str, Path]) -> Tuple[List[str], List[List[str]]]:
    """Read a CSV written by :func:`write_csv` as ``(header, rows)``."""
    with open(path, newline="", encoding="utf-8") as f:
        rows = list(csv.reader(f))
    if not rows:
        return [], []
    return rows[0], rows[1:]


def to_jsonable(obj: Any) -> Any:
    """Recursively convert numpy values, dataclasses and pydantic models."""
    if hasattr(obj, "model_dump"):
        return to_jsonable(obj.model_dump())
    if is_dataclass(obj) and not isinstance(obj, type):
        return to_jsonable(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        value = float(obj)
        if np.isnan(value):
            return "nan"
        if np.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, Path):
        return str(obj)
    return obj


def write_json(path: Union[str, Path], payload: Any) -> Path:
    """Write *payload* as sorted, indented JSON."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(to_jsonable(payload), f, indent=2, sort_keys=True)
        f.write("\n")
    return path


def sorted_strict(x: Sequence[float]) -> bool:
    """``True`` if *x* is strictly increasing along its last axis."""
    arr = np.asarray(x, dtype=float)
    if arr.shape[-1] < 2:
        return True
    return bool(np.all(np.diff(arr, axis=-1) > 0))


def pair_differences(x: np.ndarray) -> np.ndarray:
    """Matrix ``x[..., i] - x[..., j]`` with ones on the diagonal.

    The unit diagonal keeps ``1 / d`` finite; callers zero it afterwards.
    Works for real and complex input and for leading batch axes.
    """
    x = np.asarray(x)
    d = x[..., :, None] - x[..., None, :]
    idx = np.arange(x.shape[-1])
    d[..., idx, idx] = 1.0
    return d


def inverse_pair_sums(x: np.ndarray, power: int = 1) -> np.ndarray:
    """Row sums ``sum_{j != i} 1 / (x_i - x_j)**power`` along the last axis."""
    d = pair_differences(x)
    inv = 1.0 / d**power
    idx = np.arange(d.shape[-1])
    inv[..., idx, idx] = 0.0
    return inv.sum(axis=-1)


def min_pair_distance(x: np.ndarray) -> float:
    """Smallest ``|x_i - x_j|`` over ``i != j`` (``inf`` for fewer than two)."""
    x = np.asarray(x)
    if x.shape[-1] < 2:
        return float("inf")
    d = np.abs(x[..., :, None] - x[..., None, :])
    idx = np.arange(x.shape[-1])
    d[..., idx, idx] = np.inf
    return float(d.min())
