"""Lossless portraits of binary data over the distinguished symmetric cycle.

The package converts byte streams and bit matrices to their exact linear
algebraic portraits, per-row sorted index sets of the unique
inclusion-minimal decomposition over the distinguished symmetric cycle of
the hypercube graph H(t,2), and back.
"""

from .cycle import (
    MAX_DIMENSION,
    MIN_DIMENSION,
    CycleIndexSet,
    Interval,
    IntervalSet,
    SignVector,
    StreamingDecomposer,
    cycle_component,
    cycle_vertex,
    decompose,
    decompose_stream,
    hamming_distance,
    negative_intervals,
    recompose,
)
from .codec import (
    BIT_PLANES,
    MODE_MATRIX,
    MODE_VECTOR,
    BitPlaneMatrix,
    Portrait,
    bits_to_signs,
    byte_to_column,
    decode,
    decode_to_bit_matrix,
    encode_bit_matrix,
    encode_matrix,
    encode_matrix_stream,
    encode_vector,
    encode_vector_stream,
    portrait_weight,
    signs_to_bits,
    weight_bounds,
)
from .errors import (
    InvalidPortraitError,
    PortraitFormatError,
    PortraitParseError,
    StreamProtocolError,
)
from .formats import (
    BINARY_MAGIC,
    TEXT_MAGIC,
    dump_binary,
    dump_text,
    load_binary,
    load_text,
    read_binary,
    read_bit_matrix,
    read_text,
    write_binary,
    write_bit_matrix,
    write_text,
)
from .oracle import MAX_ORACLE_DIMENSION, brute_force_decompose

__version__ = "0.1.0"

__all__ = [
    "MIN_DIMENSION",
    "MAX_DIMENSION",
    "MAX_ORACLE_DIMENSION",
    "BIT_PLANES",
    "MODE_MATRIX",
    "MODE_VECTOR",
    "TEXT_MAGIC",
    "BINARY_MAGIC",
    "SignVector",
    "Interval",
    "IntervalSet",
    "CycleIndexSet",
    "BitPlaneMatrix",
    "Portrait",
    "StreamingDecomposer",
    "cycle_component",
    "cycle_vertex",
    "hamming_distance",
    "negative_intervals",
    "decompose",
    "decompose_stream",
    "recompose",
    "brute_force_decompose",
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
    "InvalidPortraitError",
    "PortraitFormatError",
    "PortraitParseError",
    "StreamProtocolError",
    "__version__",
]
