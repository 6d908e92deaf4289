import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from treesweep.codec import (CapacityError, FramingError, KnownSize,
                             UnknownSize, decode, decode_bits, encode,
                             notification)
from treesweep.forest import random_tree
from treesweep.hd import ParamVariant, hdesc
from treesweep.protocol import run_static

PN = ParamVariant.PROCESS_NUMBER


def test_known_size_leaf_message():
    scheme = KnownSize.for_tree(27, PN)
    msg = encode(hdesc(0, 0), scheme)
    assert msg.bits == "00001" and len(msg) == 5  # 3 table cells + ab
    assert decode(msg) == hdesc(0, 0)


def test_known_size_artificial_one():
    scheme = KnownSize.for_tree(27, PN)
    msg = encode(hdesc(1, 1, [0]), scheme)
    assert msg.bits == "10010"
    assert decode(msg) == hdesc(1, 1, [0])


def test_unknown_size_symbols():
    msg = encode(hdesc(-1, -1, [0, 1]), UnknownSize())
    assert msg.bits == "00011100" and len(msg) == 2 * 2 + 4
    assert decode(msg) == hdesc(-1, -1, [0, 1])


def test_ab_11_means_pair_vector():
    hd, dyn = decode_bits("10011", KnownSize.for_tree(27, PN))
    assert hd == hdesc(1, 2, [0]) and dyn is None


def test_dyn_flag_roundtrip():
    scheme = KnownSize.for_tree(9, PN)
    msg = encode(hdesc(2, 2, [0, 0]), scheme, dyn_flag=0)
    assert len(msg) == scheme.cells + 3
    hd, dyn = decode_bits(msg.bits, scheme, has_dyn_flag=True)
    assert hd == hdesc(2, 2, [0, 0]) and dyn == 0
    note = notification(scheme)
    assert note.bits[0] == "1" and len(note) == scheme.cells + 3
    un = encode(hdesc(2, 2, [0, 0]), UnknownSize(), dyn_flag=0)
    assert len(un) == 2 * 2 + 4 + 1
    assert len(notification(UnknownSize())) == 5


def test_capacity_error():
    scheme = KnownSize.for_tree(3, PN)  # one cell only
    with pytest.raises(CapacityError):
        encode(hdesc(2, 2, [0, 0]), scheme)


def test_framing_errors():
    with pytest.raises(FramingError):
        decode_bits("000", KnownSize.for_tree(27, PN))  # short frame
    with pytest.raises(FramingError):
        decode_bits("10" + "1100", UnknownSize())       # 10 inside the stream
    with pytest.raises(FramingError):
        decode_bits("0000", UnknownSize())              # no terminator
    with pytest.raises(FramingError):
        decode_bits("00010", UnknownSize())             # truncated vector bits
    with pytest.raises(FramingError):
        decode_bits("00010", KnownSize.for_tree(27, PN))
    with pytest.raises(FramingError):
        decode_bits("00010x", UnknownSize())
    # vector bits announce a value but no 1 anywhere in the table
    with pytest.raises(FramingError):
        decode_bits("00010", KnownSize(27, 3))


@given(st.integers(1, 60), st.integers(0, 2000))
@settings(max_examples=80, deadline=None)
def test_roundtrip_over_protocol_messages(n, seed):
    tree = random_tree(n, seed)
    for variant in ParamVariant:
        for encoding in ("known", "unknown"):
            from treesweep.protocol import default_scheme
            scheme = default_scheme(tree.n, variant, encoding)
            run = run_static(tree, variant, scheme)
            for _, _, hd, wire in run.wires:
                assert decode(wire) == hd
                re = encode(hd, scheme)
                assert re.bits == wire.bits


def test_unknown_size_needs_no_n():
    # the unknown-size decoder recovers length from the terminator alone
    msg = encode(hdesc(3, 3, [0, 0, 0]), UnknownSize())
    assert decode_bits(msg.bits, UnknownSize())[0] == hdesc(3, 3, [0, 0, 0])
