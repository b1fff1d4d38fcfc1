"""Bit-exact serialization: LDG1 binary grid files, CSV tables, manifests.

LDG1 layout (little-endian throughout):

    offset  size  field
    0       4     magic "LDG1"
    4       2     format version (uint16, currently 1)
    6       4     nq (uint32)
    10      4     np (uint32)
    14      32    q_min, q_max, p_min, p_max (4 x float64)
    46      1     kind (uint8: 0 classical, 1 quantum, 2 difference)
    47      ...   nq * np float64 values, row-major, q varying fastest
"""

from __future__ import annotations

import csv
import hashlib
import struct

import numpy as np

from .descriptors import GridSpec, LDField

MAGIC = b"LDG1"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<4sHII4dB")

KIND_CODES = {"classical": 0, "quantum": 1, "difference": 2}
_KIND_NAMES = {v: k for k, v in KIND_CODES.items()}

WIDTH_SCAN_HEADER = ["N", "sigma_mc", "sigma_std_error", "sigma_theory", "rel_err"]
RATIO_CHECK_HEADER = ["N", "mc_ratio", "theory_ratio", "rel_err"]
GRID_CSV_HEADER = ["q", "p", "value"]


class GridFileError(Exception):
    """Base class for LDG1 read failures."""


class BadMagicError(GridFileError):
    pass


class VersionMismatchError(GridFileError):
    pass


class TruncatedPayloadError(GridFileError):
    pass


def write_grid_file(field: LDField, path) -> None:
    """Write a field as an LDG1 file; read_grid_file inverts it bit-exactly."""
    g = field.grid
    header = _HEADER.pack(
        MAGIC,
        FORMAT_VERSION,
        g.nq,
        g.np,
        g.q_min,
        g.q_max,
        g.p_min,
        g.p_max,
        KIND_CODES[field.kind],
    )
    payload = np.ascontiguousarray(field.values, dtype="<f8").tobytes()
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(payload)


def read_grid_file(path) -> LDField:
    """Parse an LDG1 file.  Run parameters are not stored in the format,
    so the returned field carries an empty meta record."""
    with open(path, "rb") as fh:
        buf = fh.read()
    if buf[:4] != MAGIC:
        raise BadMagicError(f"{path}: bad magic {buf[:4]!r}, expected {MAGIC!r}")
    if len(buf) < _HEADER.size:
        raise TruncatedPayloadError(f"{path}: {len(buf)} bytes is shorter than the header")
    magic, version, nq, n_p, q_min, q_max, p_min, p_max, kind_code = _HEADER.unpack_from(buf)
    if version != FORMAT_VERSION:
        raise VersionMismatchError(f"{path}: format version {version}, expected {FORMAT_VERSION}")
    if kind_code not in _KIND_NAMES:
        raise GridFileError(f"{path}: unknown kind code {kind_code}")
    expected = _HEADER.size + nq * n_p * 8
    if len(buf) != expected:
        raise TruncatedPayloadError(
            f"{path}: {len(buf)} bytes, expected {expected} for a {nq}x{n_p} grid"
        )
    values = np.frombuffer(buf, dtype="<f8", offset=_HEADER.size).reshape(n_p, nq)
    grid = GridSpec(q_min, q_max, p_min, p_max, nq, n_p)
    return LDField(grid=grid, values=values.copy(), kind=_KIND_NAMES[kind_code])


def _format_cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))  # shortest round-trip decimal
    return str(v)


def write_csv(rows, path, header) -> None:
    """Header then records, LF newlines, full round-trip float precision."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_format_cell(v) for v in row])


def field_csv_rows(field: LDField):
    """(q, p, value) triples in row-major order, q varying fastest."""
    qn = field.grid.q_nodes()
    pn = field.grid.p_nodes()
    for i in range(field.grid.np):
        for j in range(field.grid.nq):
            yield (qn[j], pn[i], field.values[i, j])


def sha256_of(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def write_manifest(path, entries: dict, checksums: dict | None = None) -> None:
    """Plain-text key=value run record; checksum keys are sha256.<filename>."""
    with open(path, "w", newline="") as fh:
        fh.write("manifest_version=1\n")
        for key, value in entries.items():
            fh.write(f"{key}={_format_cell(value)}\n")
        for name, digest in (checksums or {}).items():
            fh.write(f"sha256.{name}={digest}\n")


def read_manifest(path) -> dict:
    out = {}
    with open(path) as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            key, _, value = line.partition("=")
            out[key] = value
    return out
