"""Versioned text formats: instance files, result records, and sweep CSVs.

Instance files are JSON with coordinates carried as strings, so values
round-trip exactly (no binary floating point on either side).  Result
records report every numeric quantity twice: the exact rational string and
a 15-significant-digit decimal for humans.  Writers are deterministic:
identical inputs produce byte-identical files.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from fractions import Fraction
from typing import Any, Iterable, TextIO

from .errors import ParseError
from .model import Coord, Instance, Lottery, Variant, as_coord, coord_str

INSTANCE_FORMAT = "flp-instance"
INSTANCE_VERSION = 1
RESULT_FORMAT = "flp-result"
RESULT_VERSION = 1

SWEEP_COLUMNS = (
    "seed_index",
    "n",
    "k",
    "variant",
    "mech_cost",
    "opt_cost",
    "ratio",
    "ratio_float",
)


def float_15(value: Coord) -> float:
    """Decimal approximation with 15 significant digits (display only)."""
    return float(f"{float(Fraction(value)):.15g}")


def instance_to_dict(inst: Instance) -> dict[str, Any]:
    return {
        "format": INSTANCE_FORMAT,
        "version": INSTANCE_VERSION,
        "variant": inst.variant.value,
        "k": inst.k,
        "locations": [coord_str(x) for x in inst.locations],
    }


def instance_digest(inst: Instance) -> str:
    """Short stable content hash of the canonical instance serialization."""
    canon = json.dumps(instance_to_dict(inst), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()[:12]


def instance_from_dict(data: object, where: str = "instance") -> Instance:
    """Strictly validate a parsed JSON document; errors name the bad field."""
    if not isinstance(data, dict):
        raise ParseError(f"{where}: top level must be a JSON object")
    fmt = data.get("format")
    if fmt != INSTANCE_FORMAT:
        raise ParseError(
            f"{where}: 'format' must be {INSTANCE_FORMAT!r}, got {fmt!r}"
        )
    version = data.get("version")
    if version != INSTANCE_VERSION:
        raise ParseError(
            f"{where}: unsupported version {version!r} (this build reads "
            f"version {INSTANCE_VERSION})"
        )
    raw_variant = data.get("variant")
    if raw_variant not in ("sum", "max"):
        raise ParseError(f"{where}: 'variant' must be 'sum' or 'max', got {raw_variant!r}")
    k = data.get("k")
    if isinstance(k, bool) or not isinstance(k, int):
        raise ParseError(f"{where}: 'k' must be an integer, got {k!r}")
    raw_locations = data.get("locations")
    if not isinstance(raw_locations, list):
        raise ParseError(f"{where}: 'locations' must be a list")
    locations: list[Coord] = []
    for i, raw in enumerate(raw_locations):
        if isinstance(raw, float):
            raise ParseError(
                f"{where}: locations[{i}] is a JSON float ({raw!r}); write it as "
                "a string such as \"1/10\" or \"0.1\" to keep it exact"
            )
        if isinstance(raw, bool) or not isinstance(raw, (str, int)):
            raise ParseError(
                f"{where}: locations[{i}] must be a string or integer, got {raw!r}"
            )
        try:
            locations.append(as_coord(raw))
        except ParseError as exc:
            raise ParseError(f"{where}: locations[{i}]: {exc}") from None
    return Instance(tuple(locations), k, Variant(raw_variant))


def load_instance(path: str) -> Instance:
    """Read an instance file; parse errors carry line/column, model errors
    (e.g. k exceeding n) propagate as InfeasibleError."""
    try:
        with open(path, "r", encoding="utf-8") as fp:
            try:
                data = json.load(fp)
            except json.JSONDecodeError as exc:
                raise ParseError(
                    f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: "
                    f"{exc.msg}"
                ) from None
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return instance_from_dict(data, where=path)


def dump_instance(inst: Instance, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fp:
        json.dump(instance_to_dict(inst), fp, indent=2)
        fp.write("\n")


def dual(value: Coord) -> tuple[str, float]:
    """(exact rational string, 15-digit decimal) pair for result records."""
    return coord_str(value), float_15(value)


def lottery_to_list(inst: Instance, lottery: Lottery) -> list[dict[str, Any]]:
    entries = []
    for sol, p in lottery.support:
        p_str, p_float = dual(p)
        entries.append(
            {
                "agents": list(sol.sorted_hosts()),
                "coordinates": [coord_str(c) for c in sol.coords(inst)],
                "probability": p_str,
                "probability_float": p_float,
            }
        )
    # Deterministic entry order: by coordinates, then by agent indices.
    entries.sort(key=lambda e: (e["coordinates"], e["agents"]))
    return entries


def write_record(record: dict[str, Any], out: TextIO) -> None:
    json.dump(record, out, indent=2)
    out.write("\n")


def write_sweep_csv(rows: Iterable[dict[str, Any]], out: TextIO) -> None:
    """Write ratio-sweep rows plus a final max-ratio summary row.

    Rows must already be ordered by seed_index.  The summary row repeats the
    maximum ratio in the ratio columns and labels seed_index as "max".
    """
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    max_ratio: Fraction | None = None
    for row in rows:
        writer.writerow([str(row[col]) for col in SWEEP_COLUMNS])
        ratio = Fraction(row["ratio"])
        if max_ratio is None or ratio > max_ratio:
            max_ratio = ratio
    if max_ratio is not None:
        writer.writerow(
            ["max", "", "", "", "", "", str(max_ratio), float_15(max_ratio)]
        )


def read_sweep_csv(text: str) -> tuple[list[dict[str, str]], Fraction | None]:
    """Parse a sweep CSV back into rows; validates the header and that every
    ratio re-parses as an exact rational.  Returns (data rows, max ratio)."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("sweep CSV is empty") from None
    if tuple(header) != SWEEP_COLUMNS:
        raise ParseError(f"sweep CSV header {header!r} != {list(SWEEP_COLUMNS)!r}")
    rows = []
    max_ratio: Fraction | None = None
    for lineno, fields in enumerate(reader, start=2):
        if len(fields) != len(SWEEP_COLUMNS):
            raise ParseError(f"sweep CSV line {lineno}: expected "
                             f"{len(SWEEP_COLUMNS)} fields, got {len(fields)}")
        row = dict(zip(SWEEP_COLUMNS, fields))
        try:
            ratio = Fraction(row["ratio"])
        except ValueError:
            raise ParseError(
                f"sweep CSV line {lineno}: ratio {row['ratio']!r} is not rational"
            ) from None
        if row["seed_index"] == "max":
            max_ratio = ratio
        else:
            rows.append(row)
    return rows, max_ratio
