"""Command-line codec: encode, decode, stats, verify, oracle.

Exit codes: 0 success, 1 usage, 2 I/O, 3 parse or invalid data,
4 verify mismatch (also oracle disagreement).
"""

from __future__ import annotations

import argparse
import contextlib
import os
import shutil
import sys
import tempfile

from . import codec, formats
from .cycle import SignVector, decompose
from .errors import (
    InvalidPortraitError,
    PortraitFormatError,
    PortraitParseError,
)
from .oracle import MAX_ORACLE_DIMENSION, brute_force_decompose

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_DATA = 3
EXIT_MISMATCH = 4

CHUNK_SIZE = 1 << 20
_SPOOL_LIMIT = 16 << 20


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; the contract here is 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="cycleportrait",
        description=(
            "Losslessly convert binary data to and from its portrait: "
            "per-row sorted index sets of the minimal decomposition over "
            "the distinguished symmetric cycle of the hypercube graph."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p, output_help):
        p.add_argument("--input", metavar="PATH", help="input path (default: stdin)")
        p.add_argument("--output", metavar="PATH", help=output_help)

    p = sub.add_parser("encode", help="data -> portrait file")
    add_io(p, "portrait path (default: stdout)")
    p.add_argument("--mode", choices=(codec.MODE_MATRIX, codec.MODE_VECTOR),
                   default=codec.MODE_VECTOR, help="ingestion shape (default: vector)")
    p.add_argument("--format", choices=("text", "binary"), default="text",
                   help="portrait serialization (default: text)")

    p = sub.add_parser("decode", help="portrait file -> original data")
    add_io(p, "data path (default: stdout)")
    p.add_argument("--format", choices=("text", "binary"), default="text")

    p = sub.add_parser("stats", help="report dimensions, per-row q, weight and bounds")
    add_io(p, "report path (default: stdout)")
    p.add_argument("--format", choices=("text", "binary"), default="text")

    p = sub.add_parser("verify", help="encode + decode the input and byte-compare")
    add_io(p, "report path (default: stdout)")
    p.add_argument("--mode", choices=(codec.MODE_MATRIX, codec.MODE_VECTOR),
                   default=codec.MODE_VECTOR)

    p = sub.add_parser("oracle", help="brute-force check of one small vector")
    p.add_argument("--output", metavar="PATH", help="report path (default: stdout)")
    p.add_argument("--t", type=int, required=True, metavar="N",
                   help=f"dimension, 3..{MAX_ORACLE_DIMENSION}")
    p.add_argument("--pattern", required=True, metavar="SIGNS",
                   help="the vector as a string over '+' and '-'")
    return parser


@contextlib.contextmanager
def _input_stream(path):
    """Seekable binary stream of known size for the input data."""
    if path is not None:
        size = os.path.getsize(path)
        with open(path, "rb") as fp:
            yield fp, size
        return
    with tempfile.SpooledTemporaryFile(max_size=_SPOOL_LIMIT) as spool:
        shutil.copyfileobj(sys.stdin.buffer, spool, CHUNK_SIZE)
        size = spool.tell()
        spool.seek(0)
        yield spool, size


def _chunks(fp):
    while True:
        chunk = fp.read(CHUNK_SIZE)
        if not chunk:
            return
        yield chunk


def _read_input_bytes(path) -> bytes:
    if path is None:
        return sys.stdin.buffer.read()
    with open(path, "rb") as fp:
        return fp.read()


@contextlib.contextmanager
def _output_stream(path, binary):
    if path is None:
        yield sys.stdout.buffer if binary else sys.stdout
        return
    with open(path, "wb" if binary else "w", **({} if binary else {"newline": "\n"})) as fp:
        yield fp


def _read_portrait(args) -> codec.Portrait:
    if args.format == "binary":
        data = _read_input_bytes(args.input)
        return formats.read_binary(data)
    if args.input is None:
        return formats.read_text(sys.stdin.read())
    with open(args.input, "r", newline="") as fp:
        return formats.load_text(fp)


def _cmd_encode(args) -> int:
    with _input_stream(args.input) as (fp, size):
        if args.mode == codec.MODE_VECTOR:
            portrait = codec.encode_vector_stream(_chunks(fp), size)
        else:
            portrait = codec.encode_matrix_stream(_chunks(fp), size)
    with _output_stream(args.output, binary=args.format == "binary") as out:
        if args.format == "binary":
            formats.dump_binary(portrait, out)
        else:
            formats.dump_text(portrait, out)
    return EXIT_OK


def _cmd_decode(args) -> int:
    portrait = _read_portrait(args)
    data = codec.decode(portrait)
    with _output_stream(args.output, binary=True) as out:
        out.write(data)
    return EXIT_OK


def _cmd_stats(args) -> int:
    portrait = _read_portrait(args)
    weight = codec.portrait_weight(portrait)
    lower, upper = codec.weight_bounds(portrait.t, portrait.tau)
    if not lower <= weight <= upper:
        raise InvalidPortraitError(
            f"weight {weight} escapes bounds [{lower}, {upper}]"
        )
    with _output_stream(args.output, binary=False) as out:
        out.write(f"mode: {portrait.mode}\n")
        out.write(f"t: {portrait.t}\n")
        out.write(f"tau: {portrait.tau}\n")
        out.write(f"row_q: {' '.join(str(len(row)) for row in portrait.rows)}\n")
        out.write(f"weight: {weight}\n")
        out.write(f"bounds: {lower} {upper}\n")
        out.write(f"ratio: {weight / upper:.6f}\n")
    return EXIT_OK


def _cmd_verify(args) -> int:
    data = _read_input_bytes(args.input)
    encode = codec.encode_vector if args.mode == codec.MODE_VECTOR else codec.encode_matrix
    restored = codec.decode(encode(data))
    ok = restored == data
    with _output_stream(args.output, binary=False) as out:
        if ok:
            out.write(f"PASS {len(data)} bytes ({args.mode} mode)\n")
        else:
            out.write(f"FAIL roundtrip mismatch ({args.mode} mode)\n")
    return EXIT_OK if ok else EXIT_MISMATCH


def _cmd_oracle(args) -> int:
    if not 3 <= args.t <= MAX_ORACLE_DIMENSION:
        print(
            f"cycleportrait: error: --t must be in [3, {MAX_ORACLE_DIMENSION}]",
            file=sys.stderr,
        )
        return EXIT_USAGE
    if len(args.pattern) != args.t:
        print(
            f"cycleportrait: error: --pattern length {len(args.pattern)} != t={args.t}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    try:
        vector = SignVector.from_pattern(args.pattern)
    except ValueError as exc:
        print(f"cycleportrait: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    slow = brute_force_decompose(vector)
    fast = decompose(vector)
    agree = slow == fast
    with _output_stream(args.output, binary=False) as out:
        out.write(f"t: {args.t}\n")
        out.write(f"pattern: {args.pattern}\n")
        out.write(f"brute_force: {' '.join(map(str, slow))}\n")
        out.write(f"decompose: {' '.join(map(str, fast))}\n")
        out.write("AGREE\n" if agree else "DISAGREE\n")
    return EXIT_OK if agree else EXIT_MISMATCH


_COMMANDS = {
    "encode": _cmd_encode,
    "decode": _cmd_decode,
    "stats": _cmd_stats,
    "verify": _cmd_verify,
    "oracle": _cmd_oracle,
}


def _join_pattern(argv):
    # lets "--pattern -+-+" parse even though the value starts with a dash
    out = []
    it = iter(argv)
    for token in it:
        if token == "--pattern":
            value = next(it, None)
            out.append(token if value is None else f"--pattern={value}")
        else:
            out.append(token)
    return out


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_pattern(argv))
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except (PortraitParseError, PortraitFormatError, InvalidPortraitError, ValueError) as exc:
        print(f"cycleportrait: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"cycleportrait: error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
