"""Bit-exact portrait serialization.

Text format, magic SCP1, one header line then one line per row::

    SCP1 <mode> <t> <tau>\n
    <q> <k_0> <k_1> ... <k_{q-1}>\n          (tau times)

Tokens are single-space separated decimal integers, lines newline
terminated, no trailing spaces.  Binary format, magic SCPB::

    "SCPB"  mode byte (0 matrix, 1 vector)
    t, tau                as unsigned 64-bit little-endian
    per row: q            as unsigned 64-bit little-endian
             q indices    each unsigned 64-bit little-endian

Both parsers enforce every index-set invariant (sortedness, range, odd
cardinality, no antipodal pair), so a stream that survives parsing is a
valid portrait.  Errors carry the offending line number or byte offset.

A plain 0/1 text form of raw bit matrices is also read and written here
so that matrices of arbitrary row count can be ingested without going
through byte semantics: one line per row, characters '0' and '1', all
lines the same length.
"""

from __future__ import annotations

import io
import struct

import numpy as np

from .codec import MODE_MATRIX, MODE_VECTOR, BitPlaneMatrix, Portrait
from .cycle import MAX_DIMENSION, MIN_DIMENSION, CycleIndexSet
from .errors import PortraitParseError

__all__ = [
    "TEXT_MAGIC",
    "BINARY_MAGIC",
    "write_text",
    "read_text",
    "dump_text",
    "load_text",
    "write_binary",
    "read_binary",
    "dump_binary",
    "load_binary",
    "write_bit_matrix",
    "read_bit_matrix",
]

TEXT_MAGIC = "SCP1"
BINARY_MAGIC = b"SCPB"

_MODE_TO_BYTE = {MODE_MATRIX: 0, MODE_VECTOR: 1}
_BYTE_TO_MODE = {0: MODE_MATRIX, 1: MODE_VECTOR}

_HEADER = struct.Struct("<QQ")
_U64 = struct.Struct("<Q")

_RENDER_BLOCK = 1 << 16


def dump_text(portrait: Portrait, fp) -> None:
    """Write the text form to a text file object."""
    fp.write(f"{TEXT_MAGIC} {portrait.mode} {portrait.t} {portrait.tau}\n")
    for row in portrait.rows:
        idx = row.indices
        fp.write(str(idx.size))
        for off in range(0, idx.size, _RENDER_BLOCK):
            block = idx[off : off + _RENDER_BLOCK].tolist()
            fp.write(" " + " ".join(map(str, block)))
        fp.write("\n")


def write_text(portrait: Portrait) -> str:
    buf = io.StringIO()
    dump_text(portrait, buf)
    return buf.getvalue()


def _parse_uint(token: str, line: int, what: str) -> int:
    if not (token.isascii() and token.isdigit()):
        raise PortraitParseError(f"{what} is not an unsigned decimal: {token!r}", line=line)
    return int(token)


def read_text(text: str) -> Portrait:
    """Parse the text form; inverse of write_text."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise PortraitParseError("empty stream", line=1)
    header = lines[0].split(" ")
    if len(header) != 4:
        raise PortraitParseError(
            f"header must have 4 tokens, got {len(header)}", line=1
        )
    if header[0] != TEXT_MAGIC:
        raise PortraitParseError(f"bad magic {header[0]!r}", line=1)
    mode = header[1]
    if mode not in (MODE_MATRIX, MODE_VECTOR):
        raise PortraitParseError(f"unknown mode {mode!r}", line=1)
    t = _parse_uint(header[2], 1, "dimension t")
    tau = _parse_uint(header[3], 1, "row count tau")
    _check_header_values(t, tau, mode, lambda msg: PortraitParseError(msg, line=1))
    if len(lines) != 1 + tau:
        raise PortraitParseError(
            f"expected {tau} row lines, got {len(lines) - 1}", line=min(len(lines), tau) + 1
        )
    rows = []
    for i, line in enumerate(lines[1:], 2):
        tokens = line.split(" ")
        q = _parse_uint(tokens[0], i, "cardinality")
        if len(tokens) != 1 + q:
            raise PortraitParseError(
                f"expected {q} indices, got {len(tokens) - 1}", line=i
            )
        try:
            idx = np.fromiter(
                (_parse_uint(tok, i, "index") for tok in tokens[1:]),
                dtype=np.int64,
                count=q,
            )
            rows.append(CycleIndexSet(t, idx))
        except PortraitParseError:
            raise
        except (ValueError, OverflowError) as exc:
            raise PortraitParseError(str(exc), line=i) from None
    return Portrait(t, tau, tuple(rows), mode)


def load_text(fp) -> Portrait:
    return read_text(fp.read())


def _check_header_values(t: int, tau: int, mode: str, err) -> None:
    if t < MIN_DIMENSION or t > MAX_DIMENSION:
        raise err(f"dimension t must be in [{MIN_DIMENSION}, 2**62], got {t}")
    if tau < 1:
        raise err(f"row count tau must be positive, got {tau}")
    if mode == MODE_VECTOR and tau != 1:
        raise err(f"vector mode requires tau = 1, got {tau}")


def dump_binary(portrait: Portrait, fp) -> None:
    """Write the binary form to a binary file object."""
    fp.write(BINARY_MAGIC)
    fp.write(bytes([_MODE_TO_BYTE[portrait.mode]]))
    fp.write(_HEADER.pack(portrait.t, portrait.tau))
    for row in portrait.rows:
        idx = row.indices
        fp.write(_U64.pack(idx.size))
        fp.write(idx.astype("<u8").tobytes())


def write_binary(portrait: Portrait) -> bytes:
    buf = io.BytesIO()
    dump_binary(portrait, buf)
    return buf.getvalue()


def read_binary(data: bytes) -> Portrait:
    """Parse the binary form; inverse of write_binary."""
    data = bytes(data)
    pos = 0

    def take(n: int, what: str) -> bytes:
        nonlocal pos
        if pos + n > len(data):
            raise PortraitParseError(
                f"truncated stream while reading {what}", offset=len(data)
            )
        chunk = data[pos : pos + n]
        pos += n
        return chunk

    magic = take(4, "magic")
    if magic != BINARY_MAGIC:
        raise PortraitParseError(f"bad magic {magic!r}", offset=0)
    mode_byte = take(1, "mode")[0]
    if mode_byte not in _BYTE_TO_MODE:
        raise PortraitParseError(f"unknown mode byte {mode_byte}", offset=4)
    mode = _BYTE_TO_MODE[mode_byte]
    header_at = pos
    t, tau = _HEADER.unpack(take(_HEADER.size, "dimensions"))
    _check_header_values(
        t, tau, mode, lambda msg: PortraitParseError(msg, offset=header_at)
    )
    rows = []
    for i in range(tau):
        q_at = pos
        (q,) = _U64.unpack(take(_U64.size, f"cardinality of row {i + 1}"))
        raw = take(8 * q, f"indices of row {i + 1}")
        idx = np.frombuffer(raw, dtype="<u8")
        if idx.size and int(idx.max()) >= 2 * t:
            raise PortraitParseError(
                f"row {i + 1} has an index out of [0, {2 * t - 1}]", offset=q_at
            )
        try:
            rows.append(CycleIndexSet(t, idx.astype(np.int64)))
        except (ValueError, OverflowError) as exc:
            raise PortraitParseError(str(exc), offset=q_at) from None
    if pos != len(data):
        raise PortraitParseError(
            f"{len(data) - pos} trailing bytes after the last row", offset=pos
        )
    return Portrait(t, tau, tuple(rows), mode)


def load_binary(fp) -> Portrait:
    return read_binary(fp.read())


def write_bit_matrix(matrix: BitPlaneMatrix) -> str:
    """Raw bit matrix as lines of '0'/'1' characters."""
    out = []
    for i in range(matrix.tau):
        out.append("".join("1" if b else "0" for b in matrix.row(i).tolist()))
        out.append("\n")
    return "".join(out)


def read_bit_matrix(text: str) -> BitPlaneMatrix:
    """Parse lines of '0'/'1' characters into a bit matrix."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise PortraitParseError("empty bit matrix", line=1)
    width = len(lines[0])
    rows = np.empty((len(lines), width), dtype=np.uint8)
    for i, line in enumerate(lines, 1):
        if len(line) != width:
            raise PortraitParseError(
                f"row length {len(line)} differs from {width}", line=i
            )
        if set(line) - {"0", "1"}:
            raise PortraitParseError("rows may contain only '0' and '1'", line=i)
        rows[i - 1] = np.frombuffer(line.encode("ascii"), dtype=np.uint8) - ord("0")
    try:
        return BitPlaneMatrix(rows)
    except ValueError as exc:
        raise PortraitParseError(str(exc), line=1) from None
