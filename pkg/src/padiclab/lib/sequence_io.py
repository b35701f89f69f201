# In src/padiclab/lib/sequence_io.py
"""
File formats shared by the commands.

Sequences: text (`0`/`1` characters, whitespace ignored, `#` comment lines)
or packed `.bits` (magic, little-endian uint64 length, np.packbits payload).
Tables: CSV with `#` provenance comments above the header row.
Trial records: ndjson, one object per trial.
"""

import csv
import io
import json
import struct
from fractions import Fraction
from pathlib import Path

import numpy as np

from padiclab.lib.artifact_writer import data_lines, write_bytes_atomic, write_text_atomic
from padiclab.lib.constants import BITS_MAGIC
from padiclab.lib.exceptions import SequenceFormatError
from padiclab.lib.frequency import EventSequence, FrequencyTrace
from padiclab.lib.interference_model import Histogram, bin_centers
from padiclab.lib.interference_simulator import TrialRecord
from padiclab.lib.models import ApparatusConfig, Provenance
from padiclab.lib.realization import CheckpointPlan, PlanRow

_LENGTH = struct.Struct("<Q")


# -------------Sequences---------------


def read_sequence(path: str | Path) -> EventSequence:
    path = Path(path)
    if path.suffix == ".bits":
        payload = path.read_bytes()
        header = len(BITS_MAGIC) + _LENGTH.size
        if len(payload) < header or not payload.startswith(BITS_MAGIC):
            raise SequenceFormatError(f"{path} is not a packed .bits sequence")
        (length,) = _LENGTH.unpack_from(payload, len(BITS_MAGIC))
        packed = np.frombuffer(payload, dtype=np.uint8, offset=header)
        if packed.size * 8 < length:
            raise SequenceFormatError(f"{path} is truncated: {length} labels declared")
        return EventSequence(np.unpackbits(packed, count=length))

    text = "".join("".join(line.split()) for line in data_lines(path))
    try:
        return EventSequence.from_string(text)
    except SequenceFormatError as e:
        raise SequenceFormatError(f"{path}: {e}") from e


def write_sequence(
    path: str | Path, seq: EventSequence, provenance: Provenance | None = None
) -> Path:
    """`.bits` paths get the packed format (no header); anything else is text."""
    path = Path(path)
    if path.suffix == ".bits":
        payload = BITS_MAGIC + _LENGTH.pack(len(seq)) + np.packbits(seq.labels).tobytes()
        return write_bytes_atomic(path, payload)
    return write_text_atomic(path, [seq.to_string()], provenance)


# -------------CSV tables---------------


def _csv_lines(header: list[str], rows: list[list]) -> list[str]:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue().splitlines()


def _csv_rows(path: str | Path, header: list[str]) -> list[dict[str, str]]:
    reader = csv.DictReader(data_lines(path))
    if reader.fieldnames is None or list(reader.fieldnames) != header:
        raise SequenceFormatError(f"{path}: expected columns {','.join(header)}")
    return list(reader)


PLAN_COLUMNS = ["k", "N_k", "n_k", "bound_num", "bound_den"]
TRACE_COLUMNS = ["N", "n1", "nu1_num", "nu1_den"]
PROFILE_COLUMNS = ["n", "C"]
HISTOGRAM_COLUMNS = ["bin_center", "count"]


def write_plan_csv(path: str | Path, plan: CheckpointPlan, provenance: Provenance | None = None) -> Path:
    rows = [
        [row.k, row.N, row.n, row.bound.numerator, row.bound.denominator] for row in plan.rows
    ]
    return write_text_atomic(path, _csv_lines(PLAN_COLUMNS, rows), provenance)


def read_plan_rows(path: str | Path) -> tuple[PlanRow, ...]:
    try:
        return tuple(
            PlanRow(
                int(row["k"]),
                int(row["N_k"]),
                int(row["n_k"]),
                Fraction(int(row["bound_num"]), int(row["bound_den"])),
            )
            for row in _csv_rows(path, PLAN_COLUMNS)
        )
    except ValueError as e:
        raise SequenceFormatError(f"{path}: {e}") from e


def write_trace_csv(path: str | Path, tr: FrequencyTrace, provenance: Provenance | None = None) -> Path:
    rows = [
        [N, n, freq.numerator, freq.denominator]
        for N, n, freq in zip(tr.checkpoints, tr.ones, tr.freq1, strict=True)
    ]
    return write_text_atomic(path, _csv_lines(TRACE_COLUMNS, rows), provenance)


def read_trace_csv(path: str | Path) -> FrequencyTrace:
    rows = _csv_rows(path, TRACE_COLUMNS)
    return FrequencyTrace(tuple(int(r["N"]) for r in rows), tuple(int(r["n1"]) for r in rows))


def write_profile_csv(path: str | Path, points: tuple[tuple[int, int], ...], provenance: Provenance | None = None) -> Path:
    return write_text_atomic(path, _csv_lines(PROFILE_COLUMNS, [list(p) for p in points]), provenance)


def read_profile_csv(path: str | Path) -> tuple[tuple[int, int], ...]:
    return tuple((int(r["n"]), int(r["C"])) for r in _csv_rows(path, PROFILE_COLUMNS))


def write_histogram_csv(
    path: str | Path, h: Histogram, cfg: ApparatusConfig, provenance: Provenance | None = None
) -> Path:
    rows = [[f"{center:.9g}", int(count)] for center, count in zip(bin_centers(cfg), h.counts, strict=True)]
    return write_text_atomic(path, _csv_lines(HISTOGRAM_COLUMNS, rows), provenance)


def read_histogram_csv(path: str | Path, key: str = "all") -> Histogram:
    return Histogram(np.array([int(r["count"]) for r in _csv_rows(path, HISTOGRAM_COLUMNS)]), key=key)


# -------------Trial records---------------


def write_records_ndjson(
    path: str | Path, records: list[TrialRecord], provenance: Provenance | None = None
) -> Path:
    """One JSON object per line; the provenance, if any, is the first line."""
    lines = [json.dumps({"provenance": provenance.model_dump(mode="json")}, sort_keys=True)] if provenance else []
    lines.extend(json.dumps(record.to_dict(), separators=(",", ":")) for record in records)
    return write_text_atomic(path, lines)


def read_records_ndjson(path: str | Path) -> list[TrialRecord]:
    records: list[TrialRecord] = []
    for number, line in enumerate(data_lines(path), start=1):
        try:
            item = json.loads(line)
        except json.JSONDecodeError as e:
            raise SequenceFormatError(f"{path}:{number}: {e}") from e
        if "provenance" in item:
            continue
        open_slits = (int(item["xi"]), int(item["eta"]))
        records.append(
            TrialRecord(int(item["t"]), float(item["time"]), open_slits, int(item["bin"]), str(item["apparatus"]))
        )
    return records
