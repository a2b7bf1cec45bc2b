"""Block-level MDS coding on top of the FFT graph.

A payload is cut into ``k`` source blocks of ``L`` 16-bit symbols.  Any node of
the graph yields a coded block; any set of coded blocks whose coefficient
vectors have rank ``k`` recovers the sources.  Coded symbols are field
elements in [0, 65536]; since 65536 does not fit in 16 bits it is stored as 0
and its position recorded in a per-block exception list.
"""

import math
import struct
from dataclasses import dataclass

import numpy as np

from . import field, linalg, transform
from .errors import ContainerFormatError, DomainError, IntegrityError, InsufficientRankError
from .field import P
from .graph import FftGraph, NodeCoord

SPECIAL = P - 1  # 65536, the one field value wider than 16 bits


@dataclass
class SourceObject:
    blocks: np.ndarray  # (k, L) int64, every symbol in [0, 65535]
    original_length: int

    @property
    def k(self) -> int:
        return self.blocks.shape[0]

    @property
    def block_length(self) -> int:
        return self.blocks.shape[1]


def split(payload: bytes, k: int) -> SourceObject:
    """Cut ``payload`` into ``k`` zero-padded blocks of little-endian symbols."""
    if k < 1:
        raise DomainError("k must be at least 1")
    if not payload:
        raise DomainError("payload is empty")
    symbols = math.ceil(len(payload) / 2)
    L = math.ceil(symbols / k)
    padded = bytes(payload) + bytes(2 * k * L - len(payload))
    blocks = np.frombuffer(padded, dtype="<u2").astype(np.int64).reshape(k, L)
    return SourceObject(blocks, len(payload))


def merge(src: SourceObject) -> bytes:
    blocks = np.asarray(src.blocks)
    if blocks.size and (blocks.min() < 0 or blocks.max() > 0xFFFF):
        raise IntegrityError("decoded symbol does not fit in 16 bits")
    return blocks.astype("<u2").tobytes()[:src.original_length]


def split_halves(src: SourceObject) -> SourceObject:
    """Double the block count: block ``i`` becomes blocks ``2i`` and ``2i+1``.

    Each new block is one half of an old block (the length is padded to even
    first).  Used when the overlay graph doubles in size.
    """
    blocks = src.blocks
    if blocks.shape[1] % 2:
        blocks = np.pad(blocks, ((0, 0), (0, 1)))
    half = blocks.shape[1] // 2
    return SourceObject(blocks.reshape(2 * src.k, half), src.original_length)


def merge_halves(src: SourceObject, block_length: int | None = None) -> SourceObject:
    """Inverse of :func:`split_halves`.

    An odd block count gets a zero half.  ``block_length`` trims the padding
    that :func:`split_halves` added to odd-length blocks.
    """
    blocks = src.blocks
    if blocks.shape[0] % 2:
        blocks = np.vstack([blocks, np.zeros((1, blocks.shape[1]), dtype=blocks.dtype)])
    merged = blocks.reshape(blocks.shape[0] // 2, -1)
    if block_length is not None:
        merged = merged[:, :block_length]
    return SourceObject(merged, src.original_length)


@dataclass(eq=False)
class CodedBlock:
    coord: NodeCoord
    symbols: np.ndarray  # stored form, uint16; 65536 appears as 0
    exceptions: tuple[int, ...] = ()
    coeffs: np.ndarray | None = None

    @classmethod
    def from_values(cls, coord, values, coeffs=None) -> "CodedBlock":
        vals = field.as_vector(values)
        exc = tuple(int(i) for i in np.flatnonzero(vals == SPECIAL))
        stored = np.where(vals == SPECIAL, 0, vals).astype(np.uint16)
        return cls(NodeCoord(*coord), stored, exc, coeffs)

    def values(self) -> np.ndarray:
        vals = self.symbols.astype(np.int64)
        if self.exceptions:
            idx = np.asarray(self.exceptions)
            if vals[idx].any():
                raise IntegrityError("exception position holds a nonzero stored symbol")
            vals[idx] = SPECIAL
        return vals

    def __len__(self) -> int:
        return len(self.symbols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CodedBlock):
            return NotImplemented
        same_coeffs = (self.coeffs is None and other.coeffs is None) or (
            self.coeffs is not None and other.coeffs is not None
            and np.array_equal(self.coeffs, other.coeffs))
        return (self.coord == other.coord and self.exceptions == other.exceptions
                and np.array_equal(self.symbols, other.symbols) and same_coeffs)


def encode_block(src: SourceObject, g: FftGraph, coord, with_coeffs: bool = False) -> CodedBlock:
    if g.k != src.k:
        raise DomainError(f"graph has k={g.k} but the object has {src.k} blocks")
    coord = g.check(coord)
    if g.is_void(coord):
        raise DomainError(f"node {coord} is void for k={g.k}")
    values = g.evaluate_node(src.blocks, coord)
    coeffs = g.coefficient_vector(coord) if with_coeffs else None
    return CodedBlock.from_values(coord, values, coeffs)


def encode_step(src: SourceObject, g: FftGraph, step: int | None = None) -> list[CodedBlock]:
    """Every non-void block of one step (the last step by default)."""
    if g.k != src.k:
        raise DomainError(f"graph has k={g.k} but the object has {src.k} blocks")
    step = g.u if step is None else step
    values = g.evaluate_step(src.blocks, step)
    return [CodedBlock.from_values((step, p), values[p])
            for p in range(g.n) if not g.is_void((step, p))]


def _collect(blocks, g: FftGraph) -> tuple[list[NodeCoord], np.ndarray]:
    """Deduplicate by coordinate, sort in (step, position) order, stack values."""
    by_coord: dict[NodeCoord, np.ndarray] = {}
    length = None
    for blk in blocks:
        coord = g.check(blk.coord)
        vals = blk.values()
        if length is None:
            length = len(vals)
        elif len(vals) != length:
            raise DomainError("coded blocks differ in length")
        if blk.coeffs is not None and not np.array_equal(
                field.as_vector(blk.coeffs), g.coefficient_vector(coord)):
            raise IntegrityError(f"coefficients of {coord} disagree with the graph")
        if coord in by_coord:
            if not np.array_equal(by_coord[coord], vals):
                raise IntegrityError(f"two different blocks claim node {coord}")
            continue
        by_coord[coord] = vals
    coords = sorted(by_coord)
    if not coords:
        return [], np.zeros((0, 0), dtype=np.int64)
    return coords, np.stack([by_coord[c] for c in coords])


def decode(blocks, g: FftGraph) -> np.ndarray:
    """Recover the ``(k, L)`` source blocks from any rank-k set of coded blocks.

    Independent rows are picked greedily in (step, position) order, then the
    k x k system is solved for all symbol columns at once.
    """
    coords, values = _collect(blocks, g)
    if len(coords) < g.k:
        rank = linalg.rank(g.coefficient_matrix(coords)) if coords else 0
        raise InsufficientRankError(rank, g.k)
    coeffs = g.coefficient_matrix(coords)
    if len(coords) > g.k:
        rows = linalg.pivot_rows(coeffs)
        if len(rows) < g.k:
            raise InsufficientRankError(len(rows), g.k)
        coeffs, values = coeffs[rows], values[rows]
    return linalg.solve(coeffs, values)


def decode_full_last_step(blocks, g: FftGraph) -> np.ndarray:
    """Erasure-free fast path: inverse transform of all ``n`` last-step blocks."""
    coords, values = _collect(blocks, g)
    expected = [NodeCoord(g.u, p) for p in range(g.n)]
    if coords != expected:
        raise DomainError("all n last-step blocks are required; use decode()")
    sources = transform.fnt_inverse(values)
    if sources[g.k:].any():
        raise IntegrityError("null source positions decoded to nonzero data")
    return sources[:g.k]


# -- share containers ----------------------------------------------------------

MAGIC = b"FNTC"
VERSION = 1
_HEADER = struct.Struct("<4sBBHBHIQI")


@dataclass(eq=False)
class ShareContainer:
    u: int
    k: int
    original_length: int
    block: CodedBlock

    @property
    def n(self) -> int:
        return 1 << self.u

    def graph(self) -> FftGraph:
        return FftGraph(self.u, self.k)

    def to_bytes(self) -> bytes:
        blk = self.block
        if not 0 <= self.k <= 0xFFFF:
            raise ContainerFormatError(f"k={self.k} does not fit the 16-bit header field")
        if not 0 <= blk.coord.position <= 0xFFFF or not 0 <= blk.coord.step <= 0xFF:
            raise ContainerFormatError(f"node {blk.coord} does not fit the header")
        header = _HEADER.pack(MAGIC, VERSION, self.u, self.k, blk.coord.step,
                              blk.coord.position, len(blk.symbols), self.original_length,
                              len(blk.exceptions))
        exc = np.asarray(blk.exceptions, dtype="<u4").tobytes()
        return header + exc + np.asarray(blk.symbols, dtype="<u2").tobytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> "ShareContainer":
        if len(data) < _HEADER.size:
            raise ContainerFormatError("truncated header")
        magic, version, u, k, step, pos, L, orig, n_exc = _HEADER.unpack_from(data)
        if magic != MAGIC:
            raise ContainerFormatError(f"bad magic {magic!r}")
        if version != VERSION:
            raise ContainerFormatError(f"unsupported version {version}")
        need = _HEADER.size + 4 * n_exc + 2 * L
        if len(data) != need:
            raise ContainerFormatError(f"expected {need} bytes, got {len(data)}")
        off = _HEADER.size
        exc = np.frombuffer(data, dtype="<u4", count=n_exc, offset=off)
        if np.any(np.diff(exc.astype(np.int64)) <= 0) or (n_exc and exc[-1] >= L):
            raise ContainerFormatError("exception positions must be ascending and in range")
        symbols = np.frombuffer(data, dtype="<u2", count=L, offset=off + 4 * n_exc)
        block = CodedBlock(NodeCoord(step, pos), symbols.astype(np.uint16),
                           tuple(int(e) for e in exc))
        return cls(u, k, orig, block)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ShareContainer):
            return NotImplemented
        return (self.u, self.k, self.original_length) == (
            other.u, other.k, other.original_length) and self.block == other.block
