"""Vertex decomposition over the distinguished symmetric cycle of H(t,2).

A sign vector is a vertex of the hypercube graph H(t,2): a length-t
sequence over {+1, -1} with coordinates addressed 1..t.  The distinguished
symmetric cycle visits 2t vertices, indexed 0..2t-1:

* vertex 0 is all +1,
* vertex s (1 <= s <= t-1) is -1 on coordinates 1..s and +1 after,
* vertex k+t is the coordinate-wise negation of vertex k.

That vertex sequence is a maximal positive basis of t-dimensional space,
so every sign vector equals the sum of a unique inclusion-minimal subset
of cycle vertices.  Which subset it is can be read straight off the
inclusion-maximal intervals of the vector's negative part, no linear
algebra involved, and because any single component of any cycle vertex is
computable in O(1) from its index, nothing is ever materialized beyond
the sorted set of cycle indices that names the subset.

Sign vectors are stored bit-packed, one bit per coordinate with bit value
1 meaning sign -1, most significant bit first within each byte.  With
that layout the packed form of a vector whose dimension is a multiple of
8 is byte-for-byte the raw bit stream it was built from.
"""

from __future__ import annotations

import operator
from typing import Iterable, Iterator, NamedTuple

import numpy as np

from .errors import InvalidPortraitError, StreamProtocolError

__all__ = [
    "MIN_DIMENSION",
    "MAX_DIMENSION",
    "SignVector",
    "Interval",
    "IntervalSet",
    "CycleIndexSet",
    "cycle_component",
    "cycle_vertex",
    "hamming_distance",
    "negative_intervals",
    "decompose",
    "decompose_stream",
    "recompose",
    "StreamingDecomposer",
]

MIN_DIMENSION = 3
# Indices live in [0, 2t), so capping t at 2**62 keeps every serialized
# quantity inside an unsigned 64-bit word.
MAX_DIMENSION = 1 << 62

_SIGN_BY_CHAR = {"+": 1, "-": -1}


def _check_dimension(t) -> int:
    t = operator.index(t)
    if t < MIN_DIMENSION:
        raise ValueError(f"dimension must be at least {MIN_DIMENSION}, got {t}")
    if t > MAX_DIMENSION:
        raise ValueError(f"dimension must be at most 2**62, got {t}")
    return t


class SignVector:
    """Immutable vertex of H(t,2), packed one bit per coordinate (1 means -1)."""

    __slots__ = ("_t", "_packed")

    def __init__(self, t: int, packed: bytes):
        t = _check_dimension(t)
        packed = bytes(packed)
        if len(packed) != (t + 7) // 8:
            raise ValueError(
                f"packed length {len(packed)} does not match dimension {t}"
            )
        pad = 8 * len(packed) - t
        if pad and packed[-1] & ((1 << pad) - 1):
            raise ValueError("padding bits past the dimension must be zero")
        self._t = t
        self._packed = packed

    @classmethod
    def from_bits(cls, bits) -> "SignVector":
        """Build from a 0/1 sequence, 0 mapping to +1 and 1 to -1."""
        arr = np.asarray(bits, dtype=np.uint8)
        if arr.ndim != 1:
            raise ValueError("bits must be one-dimensional")
        if arr.size and arr.max() > 1:
            raise ValueError("bits must be 0 or 1")
        return cls(arr.size, np.packbits(arr).tobytes())

    @classmethod
    def from_signs(cls, signs: Iterable[int]) -> "SignVector":
        arr = np.asarray(list(signs), dtype=np.int64)
        if arr.size and not np.all(np.abs(arr) == 1):
            raise ValueError("every coordinate must be +1 or -1")
        return cls.from_bits(arr < 0)

    @classmethod
    def from_pattern(cls, pattern: str) -> "SignVector":
        """Build from a string over '+'/'-', e.g. '+-+'."""
        try:
            signs = [_SIGN_BY_CHAR[c] for c in pattern]
        except KeyError as exc:
            raise ValueError(f"pattern may contain only '+' and '-', got {exc.args[0]!r}") from None
        return cls.from_signs(signs)

    @property
    def t(self) -> int:
        return self._t

    @property
    def packed(self) -> bytes:
        return self._packed

    def sign(self, e: int) -> int:
        """Sign at 1-based coordinate e."""
        e = operator.index(e)
        if not 1 <= e <= self._t:
            raise ValueError(f"coordinate must be in [1, {self._t}], got {e}")
        byte = self._packed[(e - 1) >> 3]
        return -1 if (byte >> (7 - ((e - 1) & 7))) & 1 else 1

    def bits(self) -> np.ndarray:
        """The 0/1 view as a fresh uint8 array of length t."""
        return np.unpackbits(
            np.frombuffer(self._packed, dtype=np.uint8), count=self._t
        )

    def signs(self) -> list[int]:
        return [1 - 2 * b for b in self.bits().tolist()]

    def pattern(self) -> str:
        return "".join("-" if b else "+" for b in self.bits().tolist())

    def __len__(self) -> int:
        return self._t

    def __neg__(self) -> "SignVector":
        flipped = np.packbits(1 - self.bits())
        return SignVector(self._t, flipped.tobytes())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SignVector):
            return NotImplemented
        return self._t == other._t and self._packed == other._packed

    def __hash__(self) -> int:
        return hash((self._t, self._packed))

    def __repr__(self) -> str:
        if self._t <= 64:
            return f"SignVector.from_pattern({self.pattern()!r})"
        return f"<SignVector t={self._t}>"


def cycle_component(t: int, k: int, e: int) -> int:
    """Component e of cycle vertex k, in O(1) and without materializing it."""
    t = _check_dimension(t)
    k = operator.index(k)
    e = operator.index(e)
    if not 0 <= k < 2 * t:
        raise ValueError(f"cycle index must be in [0, {2 * t - 1}], got {k}")
    if not 1 <= e <= t:
        raise ValueError(f"coordinate must be in [1, {t}], got {e}")
    if k < t:
        return -1 if e <= k else 1
    return 1 if e <= k - t else -1


def cycle_vertex(t: int, k: int) -> SignVector:
    """Materialize cycle vertex k as a SignVector."""
    t = _check_dimension(t)
    k = operator.index(k)
    if not 0 <= k < 2 * t:
        raise ValueError(f"cycle index must be in [0, {2 * t - 1}], got {k}")
    bits = np.zeros(t, dtype=np.uint8)
    if k < t:
        bits[:k] = 1
    else:
        bits[k - t:] = 1
    return SignVector(t, np.packbits(bits).tobytes())


def hamming_distance(x: SignVector, y: SignVector) -> int:
    """Number of coordinates where x and y disagree."""
    if x.t != y.t:
        raise ValueError(f"dimension mismatch: {x.t} vs {y.t}")
    return (int.from_bytes(x.packed, "big") ^ int.from_bytes(y.packed, "big")).bit_count()


class Interval(NamedTuple):
    """A 1-based inclusive coordinate interval [a, b]."""

    a: int
    b: int


class IntervalSet:
    """Sorted, pairwise disjoint and non-adjacent intervals inside [1, t].

    This is how the negative part of a sign vector is reported: the
    inclusion-maximal runs of -1 coordinates.  Non-adjacency (a gap of at
    least one coordinate between consecutive intervals) is exactly the
    maximality of those runs.
    """

    __slots__ = ("_t", "_starts", "_ends")

    def __init__(self, t: int, intervals: Iterable[tuple[int, int]]):
        t = _check_dimension(t)
        pairs = [(operator.index(a), operator.index(b)) for a, b in intervals]
        starts = np.array([p[0] for p in pairs], dtype=np.int64)
        ends = np.array([p[1] for p in pairs], dtype=np.int64)
        if starts.size:
            if starts[0] < 1 or np.any(ends < starts) or ends[-1] > t:
                raise ValueError("intervals must satisfy 1 <= a <= b <= t")
            if np.any(starts[1:] <= ends[:-1] + 1):
                raise ValueError("intervals must be sorted, disjoint and non-adjacent")
        self._t = t
        self._starts = starts
        self._ends = ends

    @classmethod
    def _trusted(cls, t: int, starts: np.ndarray, ends: np.ndarray) -> "IntervalSet":
        # Internal: arrays already canonical (produced by a run scan).
        self = object.__new__(cls)
        self._t = t
        self._starts = starts
        self._ends = ends
        return self

    @property
    def t(self) -> int:
        return self._t

    @property
    def starts(self) -> np.ndarray:
        return self._starts.copy()

    @property
    def ends(self) -> np.ndarray:
        return self._ends.copy()

    def __len__(self) -> int:
        return int(self._starts.size)

    def __iter__(self) -> Iterator[Interval]:
        for a, b in zip(self._starts.tolist(), self._ends.tolist()):
            yield Interval(a, b)

    def __getitem__(self, i: int) -> Interval:
        return Interval(int(self._starts[i]), int(self._ends[i]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return (
            self._t == other._t
            and np.array_equal(self._starts, other._starts)
            and np.array_equal(self._ends, other._ends)
        )

    def __repr__(self) -> str:
        return f"IntervalSet(t={self._t}, intervals={list(self)!r})"


class CycleIndexSet:
    """Sorted set of cycle-vertex indices naming one decomposition.

    Invariants: strictly increasing, all in [0, 2t), odd cardinality, and
    free of antipodal pairs {k, k+t mod 2t}.  Every decomposition of a
    sign vector satisfies these, and the serialization parsers enforce
    them on everything read from a file.
    """

    __slots__ = ("_t", "_indices")

    def __init__(self, t: int, indices):
        t = _check_dimension(t)
        arr = np.array(indices, dtype=np.int64)
        if arr.ndim != 1:
            raise ValueError("indices must be one-dimensional")
        if arr.size % 2 == 0:
            raise ValueError(f"cardinality must be odd, got {arr.size}")
        if np.any(np.diff(arr) <= 0):
            raise ValueError("indices must be strictly increasing")
        if arr[0] < 0 or arr[-1] >= 2 * t:
            raise ValueError(f"indices must lie in [0, {2 * t - 1}]")
        if _has_antipodal_pair(t, arr):
            raise ValueError("indices must not contain an antipodal pair {k, k+t}")
        arr.setflags(write=False)
        self._t = t
        self._indices = arr

    @classmethod
    def _trusted(cls, t: int, arr: np.ndarray) -> "CycleIndexSet":
        # Internal: arr is a fresh int64 array already satisfying the
        # invariants by construction (interval rule output).
        arr.setflags(write=False)
        self = object.__new__(cls)
        self._t = t
        self._indices = arr
        return self

    @property
    def t(self) -> int:
        return self._t

    @property
    def indices(self) -> np.ndarray:
        """Read-only int64 array of the sorted indices."""
        return self._indices

    def __len__(self) -> int:
        return int(self._indices.size)

    def __iter__(self) -> Iterator[int]:
        return iter(self._indices.tolist())

    def __contains__(self, k) -> bool:
        i = int(np.searchsorted(self._indices, k))
        return i < self._indices.size and int(self._indices[i]) == k

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycleIndexSet):
            return NotImplemented
        return self._t == other._t and np.array_equal(self._indices, other._indices)

    def __repr__(self) -> str:
        if len(self) <= 32:
            return f"CycleIndexSet(t={self._t}, indices={self._indices.tolist()!r})"
        return f"<CycleIndexSet t={self._t} q={len(self)}>"


def _has_antipodal_pair(t: int, sorted_arr: np.ndarray) -> bool:
    split = int(np.searchsorted(sorted_arr, t))
    low = sorted_arr[:split]
    high = sorted_arr[split:] - t
    if not low.size or not high.size:
        return False
    pos = np.searchsorted(low, high)
    pos = np.minimum(pos, low.size - 1)
    return bool(np.any(low[pos] == high))


def _runs_of_ones(bits: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """1-based (starts, ends) of the maximal runs of 1s in a 0/1 array."""
    b = bits
    if b.size == 0:
        empty = np.array([], dtype=np.int64)
        return empty, empty
    prev = np.empty_like(b)
    prev[0] = 0
    prev[1:] = b[:-1]
    nxt = np.empty_like(b)
    nxt[-1] = 0
    nxt[:-1] = b[1:]
    starts = np.flatnonzero((b == 1) & (prev == 0)).astype(np.int64) + 1
    ends = np.flatnonzero((b == 1) & (nxt == 0)).astype(np.int64) + 1
    return starts, ends


def _assemble_indices(t: int, starts: np.ndarray, ends: np.ndarray) -> np.ndarray:
    """Turn the maximal negative intervals into the decomposition index set.

    With intervals [a_1,b_1] < ... < [a_m,b_m], every interval opens the
    candidate t+a_i-1 and closes the candidate b_i; the four boundary
    combinations (whether the negative part touches coordinate 1 and
    whether it touches coordinate t) decide which candidates survive and
    whether 0 or t joins in.  All closes that survive are below t and all
    opens above it, so the concatenation below is already sorted.
    """
    m = int(starts.size)
    if m == 0:
        return np.array([0], dtype=np.int64)
    a1 = int(starts[0])
    bm = int(ends[-1])
    closes = ends
    opens = starts + (t - 1)
    if a1 == 1 and bm == t:
        parts = (closes[:-1], np.array([t], dtype=np.int64), opens[1:])
    elif a1 == 1:
        parts = (closes, opens[1:])
    elif bm == t:
        parts = (closes[:-1], opens)
    else:
        parts = (np.array([0], dtype=np.int64), closes, opens)
    return np.concatenate(parts)


def negative_intervals(v: SignVector) -> IntervalSet:
    """Inclusion-maximal intervals of the negative part of v, sorted."""
    starts, ends = _runs_of_ones(v.bits())
    return IntervalSet._trusted(v.t, starts, ends)


def decompose(v: SignVector) -> CycleIndexSet:
    """The unique inclusion-minimal set of cycle indices summing to v."""
    starts, ends = _runs_of_ones(v.bits())
    return CycleIndexSet._trusted(v.t, _assemble_indices(v.t, starts, ends))


def _decompose_bits(t: int, bits: np.ndarray) -> CycleIndexSet:
    # Fast path for callers that already hold the 0/1 array.
    starts, ends = _runs_of_ones(bits)
    return CycleIndexSet._trusted(t, _assemble_indices(t, starts, ends))


def _recompose_bits(t: int, arr: np.ndarray) -> np.ndarray:
    """0/1 array of the vertex named by a strictly increasing index array.

    Raises InvalidPortraitError unless the coordinate-wise sum of the
    named cycle vertices is +1/-1 everywhere.
    """
    q = int(arr.size)
    if q == 0:
        raise InvalidPortraitError("empty index set cannot sum to a sign vector")
    if np.any(np.diff(arr) <= 0):
        raise ValueError("indices must be strictly increasing")
    if arr[0] < 0 or arr[-1] >= 2 * t:
        raise ValueError(f"indices must lie in [0, {2 * t - 1}]")
    # Each cycle vertex is -1 exactly on one interval: [1, k] for
    # 1 <= k <= t-1, [k-t+1, t] for k >= t, nowhere for k = 0.  Count
    # interval coverage per coordinate with a difference array; the sum
    # at coordinate e is then q - 2*coverage(e).
    counts_dtype = np.int32 if q < (1 << 31) else np.int64
    diff = np.zeros(t, dtype=counts_dtype)
    low = arr[(arr >= 1) & (arr < t)]
    high = arr[arr >= t]
    diff[0] += low.size
    np.subtract.at(diff, low, 1)  # low values are in [1, t-1]
    np.add.at(diff, high - t, 1)
    coverage = np.cumsum(diff)
    sums = q - 2 * coverage
    if not np.all(np.abs(sums) == 1):
        bad = int(np.flatnonzero(np.abs(sums) != 1)[0]) + 1
        raise InvalidPortraitError(
            f"coordinate {bad} sums to {int(sums[bad - 1])}, not +1 or -1"
        )
    return (sums < 0).astype(np.uint8)


def recompose(t: int, indices) -> SignVector:
    """Sum the named cycle vertices; the inverse of decompose.

    ``indices`` may be a CycleIndexSet or any strictly increasing
    sequence of integers in [0, 2t).  The sum is validated coordinate by
    coordinate, so a corrupted index set raises InvalidPortraitError
    instead of silently producing garbage.
    """
    t = _check_dimension(t)
    if isinstance(indices, CycleIndexSet):
        if indices.t != t:
            raise ValueError(f"index set has dimension {indices.t}, expected {t}")
        arr = indices.indices
    else:
        arr = np.asarray(indices, dtype=np.int64)
        if arr.ndim != 1:
            raise ValueError("indices must be one-dimensional")
    bits = _recompose_bits(t, arr)
    return SignVector(t, np.packbits(bits).tobytes())


class StreamingDecomposer:
    """Single-pass decomposition of a vector revealed coordinate by coordinate.

    The dimension is declared up front; exactly t coordinates must then be
    delivered in order, after which finalize() returns the same index set
    as decompose() on the assembled vector.  Working memory is the set of
    interval boundaries seen so far plus one bit of run state, never the
    whole vector.

    A session is single-consumer; create one per vector.
    """

    def __init__(self, t: int):
        self._t = _check_dimension(t)
        self._pos = 0
        self._in_run = False
        self._done = False
        self._starts_py: list[int] = []
        self._ends_py: list[int] = []
        self._starts_np: list[np.ndarray] = []
        self._ends_np: list[np.ndarray] = []

    @property
    def t(self) -> int:
        return self._t

    @property
    def position(self) -> int:
        """Coordinates consumed so far."""
        return self._pos

    def _check_open(self, incoming: int) -> None:
        if self._done:
            raise StreamProtocolError("session is finalized")
        if self._pos + incoming > self._t:
            raise StreamProtocolError(
                f"more than {self._t} coordinates delivered"
            )

    def push(self, sign: int) -> None:
        """Deliver the sign of the next coordinate."""
        if sign == 1:
            neg = False
        elif sign == -1:
            neg = True
        else:
            raise ValueError(f"sign must be +1 or -1, got {sign!r}")
        self._check_open(1)
        self._pos += 1
        if neg and not self._in_run:
            self._starts_py.append(self._pos)
            self._in_run = True
        elif not neg and self._in_run:
            self._ends_py.append(self._pos - 1)
            self._in_run = False

    def push_signs(self, signs: Iterable[int]) -> None:
        for s in signs:
            self.push(s)

    def push_bits(self, bits) -> None:
        """Deliver a block of coordinates as 0/1 values (1 means -1)."""
        b = np.asarray(bits, dtype=np.uint8)
        if b.ndim != 1:
            raise ValueError("bits must be one-dimensional")
        if b.size == 0:
            return
        if b.max() > 1:
            raise ValueError("bits must be 0 or 1")
        self._check_open(b.size)
        prev = np.empty_like(b)
        prev[0] = 1 if self._in_run else 0
        prev[1:] = b[:-1]
        starts = np.flatnonzero((b == 1) & (prev == 0)).astype(np.int64) + (self._pos + 1)
        ends = np.flatnonzero((b == 0) & (prev == 1)).astype(np.int64) + self._pos
        self._flush_scalars()
        if starts.size:
            self._starts_np.append(starts)
        if ends.size:
            self._ends_np.append(ends)
        self._in_run = bool(b[-1])
        self._pos += int(b.size)

    def push_bytes(self, chunk) -> None:
        """Deliver 8*len(chunk) coordinates as a packed MSB-first bit stream."""
        data = np.frombuffer(chunk, dtype=np.uint8)
        if data.size:
            self.push_bits(np.unpackbits(data))

    def _flush_scalars(self) -> None:
        if self._starts_py:
            self._starts_np.append(np.array(self._starts_py, dtype=np.int64))
            self._starts_py.clear()
        if self._ends_py:
            self._ends_np.append(np.array(self._ends_py, dtype=np.int64))
            self._ends_py.clear()

    def finalize(self) -> CycleIndexSet:
        """Close the session and return the decomposition index set."""
        if self._done:
            raise StreamProtocolError("session is finalized")
        if self._pos != self._t:
            raise StreamProtocolError(
                f"got {self._pos} of {self._t} coordinates"
            )
        if self._in_run:
            self._ends_py.append(self._pos)
            self._in_run = False
        self._flush_scalars()
        self._done = True
        empty = np.array([], dtype=np.int64)
        starts = np.concatenate(self._starts_np) if self._starts_np else empty
        ends = np.concatenate(self._ends_np) if self._ends_np else empty
        self._starts_np.clear()
        self._ends_np.clear()
        return CycleIndexSet._trusted(self._t, _assemble_indices(self._t, starts, ends))


def decompose_stream(t: int, signs: Iterable[int]) -> CycleIndexSet:
    """Decompose a vector delivered as an ordered iterable of signs."""
    session = StreamingDecomposer(t)
    session.push_signs(signs)
    return session.finalize()
