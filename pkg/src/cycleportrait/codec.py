"""Byte streams to portraits and back.

Two ingestion shapes are supported.  Matrix mode turns n bytes into an
8 x n bit-plane matrix (column j is byte j, most significant bit in row
1), converts each row to signs with 0 -> +1 and 1 -> -1, and decomposes
the rows independently.  Vector mode glues the columns into a single row
of 8n bits, which is exactly the file's bit stream read MSB-first, and
decomposes that one vector.  Either way the result is a portrait: the
dimensions plus one sorted index set per row, from which decode() rebuilds
the original bytes exactly.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .cycle import (
    CycleIndexSet,
    SignVector,
    StreamingDecomposer,
    _check_dimension,
    _decompose_bits,
    _recompose_bits,
    decompose,
)
from .errors import PortraitFormatError

__all__ = [
    "MODE_MATRIX",
    "MODE_VECTOR",
    "BIT_PLANES",
    "BitPlaneMatrix",
    "Portrait",
    "byte_to_column",
    "bits_to_signs",
    "signs_to_bits",
    "encode_matrix",
    "encode_vector",
    "encode_matrix_stream",
    "encode_vector_stream",
    "encode_bit_matrix",
    "decode",
    "decode_to_bit_matrix",
    "portrait_weight",
    "weight_bounds",
]

MODE_MATRIX = "matrix"
MODE_VECTOR = "vector"
BIT_PLANES = 8


def byte_to_column(b: int) -> tuple[int, ...]:
    """The 8 bits of a byte, most significant first."""
    b = operator.index(b)
    if not 0 <= b <= 255:
        raise ValueError(f"byte must be in [0, 255], got {b}")
    return tuple((b >> shift) & 1 for shift in range(7, -1, -1))


def bits_to_signs(bits) -> SignVector:
    """Map a 0/1 sequence to signs, 0 -> +1 and 1 -> -1."""
    return SignVector.from_bits(bits)


def signs_to_bits(v: SignVector) -> np.ndarray:
    """Inverse of bits_to_signs: +1 -> 0 and -1 -> 1."""
    return v.bits()


class BitPlaneMatrix:
    """An immutable tau x t {0,1} matrix.

    When built from bytes the shape is fixed at 8 x n with column j
    holding byte j MSB-first, so row i is bit plane i of the byte stream.
    Arbitrary shapes (t >= 3) are accepted from raw 0/1 data.
    """

    __slots__ = ("_bits",)

    def __init__(self, bits):
        arr = np.ascontiguousarray(bits, dtype=np.uint8)
        if arr.ndim != 2:
            raise ValueError("bit matrix must be two-dimensional")
        if arr.shape[0] < 1:
            raise ValueError("bit matrix needs at least one row")
        _check_dimension(arr.shape[1])
        if arr.size and arr.max() > 1:
            raise ValueError("bit matrix entries must be 0 or 1")
        if arr.base is not None or arr is bits:
            arr = arr.copy()
        arr.setflags(write=False)
        self._bits = arr

    @classmethod
    def from_bytes(cls, data: bytes) -> "BitPlaneMatrix":
        data = bytes(data)
        if len(data) < 3:
            raise ValueError(f"need at least 3 bytes, got {len(data)}")
        planes = np.unpackbits(np.frombuffer(data, dtype=np.uint8))
        return cls(planes.reshape(len(data), 8).T)

    @property
    def tau(self) -> int:
        return int(self._bits.shape[0])

    @property
    def t(self) -> int:
        return int(self._bits.shape[1])

    @property
    def bits(self) -> np.ndarray:
        """Read-only view of the tau x t bit array."""
        return self._bits

    def row(self, i: int) -> np.ndarray:
        """Bit plane i, 0-based."""
        return self._bits[i]

    def row_vector(self, i: int) -> SignVector:
        return bits_to_signs(self._bits[i])

    def to_bytes(self) -> bytes:
        """Reassemble bytes from the bit planes; requires tau = 8."""
        if self.tau != BIT_PLANES:
            raise PortraitFormatError(
                f"byte reassembly requires {BIT_PLANES} rows, got {self.tau}"
            )
        return np.packbits(self._bits, axis=0).tobytes()

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitPlaneMatrix):
            return NotImplemented
        return np.array_equal(self._bits, other._bits)

    def __repr__(self) -> str:
        return f"<BitPlaneMatrix tau={self.tau} t={self.t}>"


@dataclass(frozen=True)
class Portrait:
    """The exact representation of a binary matrix: dimensions plus one
    sorted cycle-index set per row."""

    t: int
    tau: int
    rows: tuple[CycleIndexSet, ...]
    mode: str

    def __post_init__(self):
        _check_dimension(self.t)
        if self.mode not in (MODE_MATRIX, MODE_VECTOR):
            raise ValueError(f"mode must be {MODE_MATRIX!r} or {MODE_VECTOR!r}")
        if self.tau != len(self.rows) or self.tau < 1:
            raise ValueError(
                f"tau={self.tau} does not match {len(self.rows)} row sets"
            )
        if self.mode == MODE_VECTOR and self.tau != 1:
            raise ValueError("vector mode implies tau = 1")
        for i, row in enumerate(self.rows, 1):
            if not isinstance(row, CycleIndexSet):
                raise TypeError(f"row {i} is not a CycleIndexSet")
            if row.t != self.t:
                raise ValueError(
                    f"row {i} has dimension {row.t}, expected {self.t}"
                )


def encode_matrix(data: bytes) -> Portrait:
    """Portrait of the 8 x n bit-plane matrix of a byte string (n >= 3)."""
    matrix = BitPlaneMatrix.from_bytes(data)
    rows = tuple(_decompose_bits(matrix.t, matrix.row(i)) for i in range(BIT_PLANES))
    return Portrait(matrix.t, BIT_PLANES, rows, MODE_MATRIX)


def encode_vector(data: bytes) -> Portrait:
    """Portrait of the glued single row: the byte string's 8n-bit stream."""
    data = bytes(data)
    if len(data) < 1:
        raise ValueError("need at least 1 byte")
    t = 8 * len(data)
    # The packed layout of SignVector matches the raw bit stream, so the
    # bytes are the vector.
    return Portrait(t, 1, (decompose(SignVector(t, data)),), MODE_VECTOR)


def encode_bit_matrix(matrix: BitPlaneMatrix) -> Portrait:
    """Portrait of an arbitrary tau x t bit matrix (raw-matrix ingestion)."""
    rows = tuple(_decompose_bits(matrix.t, matrix.row(i)) for i in range(matrix.tau))
    return Portrait(matrix.t, matrix.tau, rows, MODE_MATRIX)


def encode_vector_stream(chunks: Iterable[bytes], nbytes: int) -> Portrait:
    """Vector-mode encode of a byte stream of known total length.

    Reads the chunks once and keeps only interval boundaries, so peak
    memory is proportional to the output index count, not the input size.
    """
    nbytes = operator.index(nbytes)
    if nbytes < 1:
        raise ValueError("need at least 1 byte")
    t = 8 * nbytes
    session = StreamingDecomposer(t)
    for chunk in chunks:
        session.push_bytes(chunk)
    return Portrait(t, 1, (session.finalize(),), MODE_VECTOR)


def encode_matrix_stream(chunks: Iterable[bytes], nbytes: int) -> Portrait:
    """Matrix-mode encode of a byte stream of known total length."""
    nbytes = operator.index(nbytes)
    if nbytes < 3:
        raise ValueError(f"need at least 3 bytes, got {nbytes}")
    sessions = [StreamingDecomposer(nbytes) for _ in range(BIT_PLANES)]
    for chunk in chunks:
        data = np.frombuffer(chunk, dtype=np.uint8)
        if not data.size:
            continue
        planes = np.unpackbits(data).reshape(data.size, 8)
        for i in range(BIT_PLANES):
            sessions[i].push_bits(planes[:, i])
    rows = tuple(session.finalize() for session in sessions)
    return Portrait(nbytes, BIT_PLANES, rows, MODE_MATRIX)


def decode(portrait: Portrait) -> bytes:
    """Rebuild the exact byte string a portrait was encoded from."""
    if portrait.mode == MODE_MATRIX:
        if portrait.tau != BIT_PLANES:
            raise PortraitFormatError(
                f"matrix-mode byte decoding requires tau = {BIT_PLANES}, "
                f"got {portrait.tau}"
            )
        planes = np.vstack(
            [_recompose_bits(portrait.t, row.indices) for row in portrait.rows]
        )
        return np.packbits(planes, axis=0).tobytes()
    if portrait.t % 8:
        raise PortraitFormatError(
            f"vector-mode byte decoding requires t divisible by 8, got {portrait.t}"
        )
    bits = _recompose_bits(portrait.t, portrait.rows[0].indices)
    return np.packbits(bits).tobytes()


def decode_to_bit_matrix(portrait: Portrait) -> BitPlaneMatrix:
    """Rebuild the raw bit matrix; works for any tau."""
    rows = [_recompose_bits(portrait.t, row.indices) for row in portrait.rows]
    return BitPlaneMatrix(np.vstack(rows))


def portrait_weight(portrait: Portrait) -> int:
    """Total index count across all rows."""
    return sum(len(row) for row in portrait.rows)


def weight_bounds(t: int, tau: int) -> tuple[int, int]:
    """Inclusive (lower, upper) bounds on the weight of any tau x t portrait.

    The lower bound tau is attained when every row is itself a cycle
    vertex; the upper bound tau*t (t odd) or tau*(t-1) (t even) by rows
    with the most fragmented negative part, i.e. alternating signs.
    """
    t = _check_dimension(t)
    tau = operator.index(tau)
    if tau < 1:
        raise ValueError(f"tau must be positive, got {tau}")
    upper = tau * t if t % 2 else tau * (t - 1)
    return tau, upper
