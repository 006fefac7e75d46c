"""Readers for the simulator CLI's CSV/JSON export schemas."""

import csv
import json

import numpy as np


class SchemaError(RuntimeError):
    """An input file does not match the documented export schema."""


TRAJ_COLUMNS = ["t", "r1", "r2", "r3", "D_T_to_F", "v"]
FIELD_COLUMNS = ["r1", "r2", "v1", "v2", "vmag", "dir1", "dir2"]
SUMMARY_KEYS = ["t_SI", "epsilon"]


def read_table(path, required):
    """Read a CSV export, returning {column: float array}.

    Fails fast if the header is missing any required column or the file has
    no data rows.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise SchemaError(f"{path}: empty file")
        missing = [c for c in required if c not in header]
        if missing:
            raise SchemaError(f"{path}: missing columns {missing}")
        idx = [header.index(c) for c in required]
        try:
            rows = [[float(row[i]) for i in idx] for row in reader]
        except (ValueError, IndexError) as exc:
            raise SchemaError(f"{path}: malformed row ({exc})") from exc
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    data = np.asarray(rows)
    return {c: data[:, j] for j, c in enumerate(required)}


def read_summary(path):
    """Read a protocol summary JSON, checking the keys the figures need."""
    with open(path, encoding="utf-8") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: invalid JSON ({exc})") from exc
    missing = [k for k in SUMMARY_KEYS if k not in payload]
    if missing:
        raise SchemaError(f"{path}: missing keys {missing}")
    return payload
