from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fftnc import codec, transform
from fftnc.codec import CodedBlock, ShareContainer, SourceObject
from fftnc.errors import ContainerFormatError, DomainError, InsufficientRankError, IntegrityError
from fftnc.field import P
from fftnc.graph import FftGraph, NodeCoord

import oracles

# x0 = [65535, 1], x1 = [1, 2]: (1,0) = x0 + x1 = [65536, 3], (1,1) = x0 - x1 = [65534, 65536]
GOLDEN_PAYLOAD = bytes.fromhex("ffff0100" "01000200")
GOLDEN = {
    (1, 0): bytes.fromhex(
        "464e5443"          # magic
        "01" "01" "0200"    # version, log2 n, k
        "01" "0000"         # step, position
        "02000000"          # L
        "0800000000000000"  # original length
        "01000000"          # one exception
        "00000000"          # at symbol 0
        "0000" "0300"),     # payload, 65536 stored as 0
    (1, 1): bytes.fromhex(
        "464e5443" "01" "01" "0200" "01" "0100" "02000000" "0800000000000000"
        "01000000" "01000000" "feff" "0000"),
}


def test_split_examples():
    src = codec.split(b"abcdef", 3)
    assert src.blocks.shape == (3, 1) and src.original_length == 6
    assert src.blocks[:, 0].tolist() == [0x6261, 0x6463, 0x6665]
    src = codec.split(b"abcde", 3)
    assert src.blocks.shape == (3, 1) and src.blocks[2, 0] == 0x65
    assert codec.merge(src) == b"abcde"
    for bad in [(b"", 3), (b"ab", 0)]:
        with pytest.raises(DomainError):
            codec.split(*bad)


@settings(max_examples=200, deadline=None)
@given(st.binary(min_size=1, max_size=300), st.integers(1, 40))
def test_split_merge_roundtrip(payload, k):
    src = codec.split(payload, k)
    assert src.k == k and 2 * k * src.block_length >= len(payload)
    assert codec.merge(src) == payload
    halves = codec.split_halves(src)
    assert halves.k == 2 * k
    assert codec.merge(codec.merge_halves(halves, src.block_length)) == payload


def test_systematic_positions():
    src = codec.split(bytes(range(40)), 5)
    g = FftGraph.for_sources(5)
    for i in range(5):
        blk = codec.encode_block(src, g, (0, g.source_position(i)))
        assert np.array_equal(blk.values(), src.blocks[i])


def test_void_coord_rejected():
    src = codec.split(b"abcdef", 3)
    g = FftGraph(3, 3)
    with pytest.raises(DomainError):
        codec.encode_block(src, g, (1, 6))
    with pytest.raises(DomainError):
        codec.encode_block(src, FftGraph(3, 4), (3, 0))


def test_three_of_eight_last_step_is_transform():
    rng = np.random.default_rng(0)
    src = codec.split(rng.bytes(60), 3)
    g = FftGraph(3, 3)
    placed = np.zeros((8, src.block_length), dtype=np.int64)
    placed[:3] = src.blocks
    want = transform.fnt_forward(placed)
    blocks = codec.encode_step(src, g)
    assert [b.coord for b in blocks] == [(3, p) for p in range(8)]
    for b in blocks:
        assert np.array_equal(b.values(), want[b.coord.position])
        assert b == codec.encode_block(src, g, b.coord)


def test_three_of_eight_all_subsets_decode():
    rng = np.random.default_rng(1)
    src = codec.split(rng.bytes(101), 3)
    g = FftGraph(3, 3)
    blocks = codec.encode_step(src, g)
    for subset in combinations(blocks, 3):
        assert np.array_equal(codec.decode(subset, g), src.blocks)


def test_decode_prefix_and_mixed_steps():
    rng = np.random.default_rng(2)
    src = codec.split(rng.bytes(64), 3)
    g = FftGraph(3, 3)
    prefix = [codec.encode_block(src, g, (3, p)) for p in range(3)]
    assert np.array_equal(codec.decode(prefix, g), src.blocks)
    nodes = [nd for nd in g.nodes() if not g.is_void(nd)]
    for combo in combinations(nodes, 3):
        rows = [g.coefficient_vector(c).tolist() for c in combo]
        blocks = [codec.encode_block(src, g, c) for c in combo]
        if oracles.rank(rows) == 3:
            assert np.array_equal(codec.decode(blocks, g), src.blocks)
        else:
            with pytest.raises(InsufficientRankError):
                codec.decode(blocks, g)


def test_decode_errors():
    src = codec.split(bytes(range(30)), 3)
    g = FftGraph(3, 3)
    b = [codec.encode_block(src, g, (3, p)) for p in range(3)]
    with pytest.raises(InsufficientRankError) as err:
        codec.decode(b[:2], g)
    assert (err.value.rank, err.value.k) == (2, 3)
    with pytest.raises(InsufficientRankError) as err:
        codec.decode([b[0], b[0], b[1]], g)
    assert err.value.rank == 2
    forged = CodedBlock(b[0].coord, (b[0].symbols + 1).astype(np.uint16))
    with pytest.raises(IntegrityError):
        codec.decode([b[0], forged, b[1], b[2]], g)
    wrong = CodedBlock(b[0].coord, b[0].symbols, coeffs=g.coefficient_vector((3, 5)))
    with pytest.raises(IntegrityError):
        codec.decode([wrong, b[1], b[2]], g)
    right = codec.encode_block(src, g, (3, 0), with_coeffs=True)
    assert np.array_equal(codec.decode([right, b[1], b[2]], g), src.blocks)
    with pytest.raises(InsufficientRankError):
        codec.decode([], g)


def test_full_last_step_fast_path():
    rng = np.random.default_rng(3)
    for k in (1, 5, 8, 13):
        src = codec.split(rng.bytes(200), k)
        g = FftGraph.for_sources(k)
        blocks = [codec.encode_block(src, g, (g.u, p)) for p in range(g.n)]
        fast = codec.decode_full_last_step(blocks, g)
        assert np.array_equal(fast, src.blocks)
        assert np.array_equal(fast, codec.decode(blocks, g))
        with pytest.raises(DomainError):
            codec.decode_full_last_step(blocks[1:], g)


def test_special_symbol_found_by_search():
    # scan small random payloads until some coded symbol equals 65536
    rng = np.random.default_rng(4)
    g = FftGraph(2, 3)
    for _ in range(100_000):
        src = SourceObject(rng.integers(0, 1 << 16, (3, 8)), 48)
        values = g.evaluate_step(src.blocks, 2)
        if (values == P - 1).any():
            break
    else:
        pytest.fail("no 65536 symbol found")
    p = int(np.flatnonzero((values == P - 1).any(axis=1))[0])
    blk = codec.encode_block(src, g, (2, p))
    assert blk.exceptions == tuple(np.flatnonzero(values[p] == P - 1).tolist())
    assert all(blk.symbols[i] == 0 for i in blk.exceptions)
    assert np.array_equal(blk.values(), values[p])
    again = ShareContainer.from_bytes(ShareContainer(2, 3, 48, blk).to_bytes())
    assert np.array_equal(again.block.values(), values[p])
    others = [codec.encode_block(src, g, (2, q)) for q in range(4) if q != p][:2]
    assert np.array_equal(codec.decode([blk] + others, g), src.blocks)


def test_golden_containers():
    src = codec.split(GOLDEN_PAYLOAD, 2)
    g = FftGraph(1, 2)
    for coord, want in GOLDEN.items():
        blk = codec.encode_block(src, g, coord)
        assert ShareContainer(1, 2, len(GOLDEN_PAYLOAD), blk).to_bytes() == want
        parsed = ShareContainer.from_bytes(want)
        assert parsed.block.coord == coord and parsed.to_bytes() == want
    shares = [ShareContainer.from_bytes(b).block for b in GOLDEN.values()]
    assert codec.merge(SourceObject(codec.decode(shares, g), 8)) == GOLDEN_PAYLOAD


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 16), st.integers(0, 65535), st.lists(st.integers(0, P - 1), min_size=1, max_size=50),
       st.integers(0, 2**40))
def test_container_roundtrip(u, pos, values, length):
    blk = CodedBlock.from_values((u, pos % (1 << u)), values)
    sc = ShareContainer(u, 1, length, blk)
    data = sc.to_bytes()
    back = ShareContainer.from_bytes(data)
    assert back == sc and back.to_bytes() == data
    assert back.block.values().tolist() == values


def test_container_rejects_garbage():
    good = GOLDEN[(1, 0)]
    for bad in [good[:10], b"XNTC" + good[4:], good[:4] + b"\x02" + good[5:], good + b"\x00",
                good[:-1]]:
        with pytest.raises(ContainerFormatError):
            ShareContainer.from_bytes(bad)
    # exception list must be ascending and inside the block
    hdr = bytearray(good)
    hdr[-8:-4] = (5).to_bytes(4, "little")
    with pytest.raises(ContainerFormatError):
        ShareContainer.from_bytes(bytes(hdr))
    big = CodedBlock.from_values((16, 0), [1])
    with pytest.raises(ContainerFormatError):
        ShareContainer(16, 65536, 2, big).to_bytes()


def test_exception_inconsistency_detected():
    blk = CodedBlock(NodeCoord(1, 0), np.array([7, 0], dtype=np.uint16), (0,))
    with pytest.raises(IntegrityError):
        blk.values()
