"""Binary template files and the template-database directory.

Layout (little-endian): ``b"FPTL"``, version u16, K u16, L u16, R u16,
finger id u32, impression id u16, reserved u16, K float64 descriptors,
then the CRC32 of every preceding byte as u32.
"""
from __future__ import annotations

import csv
import os
import struct
import tempfile
import zlib
from pathlib import Path

import numpy as np

from ridgekit.descriptor import Template
from ridgekit.errors import BadMagic, ChecksumMismatch, VersionMismatch

MAGIC = b"FPTL"
VERSION = 1
HEADER = struct.Struct("<4sHHHHIHH")
CRC = struct.Struct("<I")
INDEX_NAME = "db.tsv"
SUFFIX = ".fptl"


def encode_template(t: Template) -> bytes:
    header = HEADER.pack(
        MAGIC, VERSION, t.count, t.signature_length, t.radius, t.finger_id, t.impression_id, 0
    )
    body = header + np.asarray(t.descriptors, dtype="<f8").tobytes()
    return body + CRC.pack(zlib.crc32(body))


def decode_template(data: bytes) -> Template:
    if len(data) < 4 or data[:4] != MAGIC:
        raise BadMagic("not a template file")
    if len(data) < HEADER.size + CRC.size:
        raise ChecksumMismatch("template file truncated")
    _, version, k, length, radius, finger, impression, _ = HEADER.unpack_from(data)
    if version != VERSION:
        raise VersionMismatch(f"template format version {version}, expected {VERSION}")
    expected = HEADER.size + 8 * k + CRC.size
    if len(data) != expected:
        raise ChecksumMismatch(f"template file has {len(data)} bytes, expected {expected}")
    body, (crc,) = data[:-CRC.size], CRC.unpack_from(data, len(data) - CRC.size)
    if zlib.crc32(body) != crc:
        raise ChecksumMismatch("CRC32 mismatch")
    desc = np.frombuffer(body, dtype="<f8", count=k, offset=HEADER.size).astype(np.float64)
    return Template(desc, length, radius, finger, impression)


def _atomic_write(path: Path, data: bytes) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_template(t: Template, path: str | os.PathLike) -> None:
    _atomic_write(Path(path), encode_template(t))


def load_template(path: str | os.PathLike) -> Template:
    return decode_template(Path(path).read_bytes())


def template_filename(finger_id: int, impression_id: int) -> str:
    return f"{finger_id}_{impression_id}{SUFFIX}"


def read_index(db_dir: str | os.PathLike) -> list[tuple[int, int, str]]:
    index = Path(db_dir) / INDEX_NAME
    if not index.exists():
        return []
    rows = []
    with open(index, newline="", encoding="utf-8") as fh:
        for row in csv.reader(fh, delimiter="\t"):
            if not row or row[0] == "finger_id":
                continue
            rows.append((int(row[0]), int(row[1]), row[2]))
    return rows


def write_index(db_dir: str | os.PathLike, rows) -> None:
    lines = ["finger_id\timpression_id\tfilename"]
    lines += [f"{f}\t{i}\t{name}" for f, i, name in sorted(set(rows))]
    _atomic_write(Path(db_dir) / INDEX_NAME, ("\n".join(lines) + "\n").encode("utf-8"))


def add_to_database(db_dir: str | os.PathLike, templates) -> list[Path]:
    """Write templates into ``db_dir`` (overwriting same ids) and update the index."""
    db_dir = Path(db_dir)
    db_dir.mkdir(parents=True, exist_ok=True)
    rows = {(f, i): name for f, i, name in read_index(db_dir)}
    written = []
    for t in templates:
        name = template_filename(t.finger_id, t.impression_id)
        save_template(t, db_dir / name)
        rows[(t.finger_id, t.impression_id)] = name
        written.append(db_dir / name)
    write_index(db_dir, [(f, i, name) for (f, i), name in rows.items()])
    return written


def load_database(db_dir: str | os.PathLike) -> list[Template]:
    db_dir = Path(db_dir)
    rows = read_index(db_dir)
    if not rows:
        rows = []
        for p in sorted(db_dir.glob(f"*{SUFFIX}")):
            t = load_template(p)
            rows.append((t.finger_id, t.impression_id, p.name))
    templates = [load_template(db_dir / name) for _, _, name in sorted(rows)]
    return sorted(templates, key=lambda t: t.sort_key)
