import io
import pathlib

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cycleportrait import (
    BitPlaneMatrix,
    CycleIndexSet,
    Portrait,
    PortraitParseError,
    dump_binary,
    dump_text,
    encode_bit_matrix,
    encode_matrix,
    encode_vector,
    load_binary,
    load_text,
    read_binary,
    read_bit_matrix,
    read_text,
    write_binary,
    write_bit_matrix,
    write_text,
)
import known_values as kv

GOLDEN = pathlib.Path(__file__).parent / "golden"

TINY = Portrait(3, 1, (CycleIndexSet(3, [0]),), "vector")
TINY_TEXT = "SCP1 vector 3 1\n1 0\n"
TINY_BINARY = bytes.fromhex(
    "53435042" "01"
    "0300000000000000" "0100000000000000"
    "0100000000000000" "0000000000000000"
)


@st.composite
def portraits(draw):
    data = draw(st.binary(min_size=3, max_size=60))
    kind = draw(st.integers(0, 2))
    if kind == 0:
        return encode_vector(data)
    if kind == 1:
        return encode_matrix(data)
    tau = draw(st.integers(1, 5))
    t = draw(st.integers(3, 40))
    rng = np.random.default_rng(draw(st.integers(0, 2**32 - 1)))
    bits = rng.integers(0, 2, size=(tau, t), dtype=np.uint8)
    return encode_bit_matrix(BitPlaneMatrix(bits))


class TestTextFormat:
    def test_tiny_exact(self):
        assert write_text(TINY) == TINY_TEXT
        assert read_text(TINY_TEXT) == TINY

    def test_known_row_line(self):
        text = write_text(encode_matrix(kv.SAMPLE))
        assert text.splitlines()[3] == "3 26 37 63"

    def test_golden_files(self):
        for name, portrait in (
            ("desdemona_matrix.scp", encode_matrix(kv.SAMPLE)),
            ("desdemona_vector.scp", encode_vector(kv.SAMPLE)),
        ):
            golden = (GOLDEN / name).read_bytes()
            assert write_text(portrait).encode("ascii") == golden
            assert read_text(golden.decode("ascii")) == portrait

    @given(portraits())
    @settings(deadline=None, max_examples=60)
    def test_roundtrip(self, p):
        assert read_text(write_text(p)) == p

    def test_stream_helpers(self):
        buf = io.StringIO()
        dump_text(TINY, buf)
        buf.seek(0)
        assert load_text(buf) == TINY

    @pytest.mark.parametrize(
        "text,where",
        [
            ("", 1),
            ("SCP2 vector 3 1\n1 0\n", 1),
            ("SCP1 ring 3 1\n1 0\n", 1),
            ("SCP1 vector 2 1\n1 0\n", 1),  # t below minimum
            ("SCP1 vector 3 0\n", 1),
            ("SCP1 vector 3 2\n1 0\n1 0\n", 1),  # vector needs tau=1
            ("SCP1 vector 3 1\n", 2),  # missing row
            ("SCP1 vector 3 1\n1 0\n1 0\n", 2),  # extra row
            ("SCP1 vector 3 1\n2 0 1\n", 2),  # even cardinality
            ("SCP1 vector 3 1\n3 2 0 4\n", 2),  # unsorted
            ("SCP1 vector 3 1\n3 0 2 5\n", 2),  # antipodal pair
            ("SCP1 vector 3 1\n1 6\n", 2),  # index >= 2t
            ("SCP1 vector 3 1\n1 0 2\n", 2),  # token count
            ("SCP1 vector 3 1\n1\n", 2),
            ("SCP1 vector 3 1\n1  0\n", 2),  # double space
            ("SCP1 vector 3 1\n1 -1\n", 2),
            ("SCP1 vector 3 1\n1 x\n", 2),
            ("SCP1 vector three 1\n1 0\n", 1),
            ("SCP1 vector 3\n1 0\n", 1),
        ],
    )
    def test_rejects(self, text, where):
        with pytest.raises(PortraitParseError) as err:
            read_text(text)
        assert err.value.line == where


class TestBinaryFormat:
    def test_tiny_exact(self):
        assert write_binary(TINY) == TINY_BINARY
        assert read_binary(TINY_BINARY) == TINY

    def test_golden_files(self):
        for name, portrait in (
            ("desdemona_matrix.scpb", encode_matrix(kv.SAMPLE)),
            ("desdemona_vector.scpb", encode_vector(kv.SAMPLE)),
        ):
            golden = (GOLDEN / name).read_bytes()
            assert write_binary(portrait) == golden
            assert read_binary(golden) == portrait

    @given(portraits())
    @settings(deadline=None, max_examples=60)
    def test_roundtrip(self, p):
        assert read_binary(write_binary(p)) == p

    def test_stream_helpers(self):
        buf = io.BytesIO()
        dump_binary(TINY, buf)
        buf.seek(0)
        assert load_binary(buf) == TINY

    def test_every_truncation_rejected(self):
        for n in range(len(TINY_BINARY)):
            with pytest.raises(PortraitParseError):
                read_binary(TINY_BINARY[:n])

    def test_rejects(self):
        with pytest.raises(PortraitParseError) as err:
            read_binary(b"SCPX" + TINY_BINARY[4:])
        assert err.value.offset == 0
        with pytest.raises(PortraitParseError) as err:
            read_binary(TINY_BINARY[:4] + b"\x02" + TINY_BINARY[5:])
        assert err.value.offset == 4
        with pytest.raises(PortraitParseError):
            read_binary(TINY_BINARY + b"\x00")  # trailing bytes
        bad_index = TINY_BINARY[:-8] + (6).to_bytes(8, "little")
        with pytest.raises(PortraitParseError, match="out of"):
            read_binary(bad_index)

    def test_cross_format_agreement(self):
        for p in (encode_matrix(kv.SAMPLE), encode_vector(kv.SAMPLE), TINY):
            assert read_text(write_text(p)) == read_binary(write_binary(p))


def test_both_formats_roundtrip_500_random_portraits():
    rng = np.random.default_rng(31337)
    for _ in range(500):
        data = rng.bytes(int(rng.integers(3, 40)))
        p = encode_vector(data) if rng.integers(2) else encode_matrix(data)
        assert read_text(write_text(p)) == p
        assert read_binary(write_binary(p)) == p


class TestMutationFuzz:
    """Random single mutations must either parse to a valid portrait or be
    rejected with a parse error; nothing else."""

    def _check_text(self, mutated):
        try:
            p = read_text(mutated)
        except PortraitParseError:
            return
        assert read_text(write_text(p)) == p

    def _check_binary(self, mutated):
        try:
            p = read_binary(mutated)
        except PortraitParseError:
            return
        assert read_binary(write_binary(p)) == p

    def test_text_mutations(self):
        rng = np.random.default_rng(2024)
        base = write_text(encode_matrix(kv.SAMPLE))
        alphabet = "0123456789 \nSCP1matrixvector?-"
        for _ in range(400):
            i = int(rng.integers(len(base)))
            c = alphabet[int(rng.integers(len(alphabet)))]
            self._check_text(base[:i] + c + base[i + 1 :])
            self._check_text(base[:i] + base[i + 1 :])  # deletion
            self._check_text(base[:i] + c + base[i:])  # insertion

    def test_binary_mutations(self):
        rng = np.random.default_rng(4048)
        base = write_binary(encode_vector(kv.SAMPLE))
        for _ in range(400):
            i = int(rng.integers(len(base)))
            b = bytes([int(rng.integers(256))])
            self._check_binary(base[:i] + b + base[i + 1 :])
            self._check_binary(base[:i] + base[i + 1 :])
            self._check_binary(base[:i] + b + base[i:])


class TestBitMatrixText:
    def test_roundtrip(self):
        m = BitPlaneMatrix([[0, 1, 1, 0], [1, 0, 0, 1]])
        text = write_bit_matrix(m)
        assert text == "0110\n1001\n"
        assert read_bit_matrix(text) == m

    def test_ingest_then_decode(self):
        from cycleportrait import decode_to_bit_matrix

        rng = np.random.default_rng(11)
        bits = rng.integers(0, 2, size=(4, 9), dtype=np.uint8)
        m = read_bit_matrix(write_bit_matrix(BitPlaneMatrix(bits)))
        p = encode_bit_matrix(m)
        assert np.array_equal(decode_to_bit_matrix(p).bits, bits)

    def test_rejects(self):
        with pytest.raises(PortraitParseError):
            read_bit_matrix("")
        with pytest.raises(PortraitParseError):
            read_bit_matrix("0110\n10\n")
        with pytest.raises(PortraitParseError):
            read_bit_matrix("01x0\n")
        with pytest.raises(PortraitParseError):
            read_bit_matrix("01\n10\n")  # t < 3
