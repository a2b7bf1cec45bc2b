"""The FFT computation graph as a network topology.

Node ``(s, p)`` sits at step ``s`` (distance from the sources) and position
``p``.  Step 0 holds the sources in bit-reversed order: source ``i`` sits at
position ``bit_reverse(i, u)``.  A node at step ``s >= 1`` combines two nodes
of step ``s - 1``::

    N(s, p) = N(s-1, a) + w**e * N(s-1, a + 2**(s-1))
    a = 2**s * (p // 2**s) + p % 2**(s-1)
    e = p * 2**(u-s) mod n

with ``w`` of order ``n = 2**u``.  Step ``u`` then holds the transform of the
source vector in natural order.  Sources with index ``>= k`` are null; nodes
that only see null sources are *void* and their links carry nothing.
"""

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterator, NamedTuple

import numpy as np

from . import field, linalg, transform
from .errors import DomainError
from .field import P


class NodeCoord(NamedTuple):
    step: int
    position: int

    def __str__(self) -> str:
        return f"({self.step},{self.position})"


@dataclass(frozen=True)
class FftGraph:
    u: int
    k: int
    _cache: dict = dc_field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not 1 <= self.u <= field.MAX_LOG2:
            raise DomainError(f"graph depth u={self.u} outside [1, 16]")
        if not 1 <= self.k <= self.n:
            raise DomainError(f"k={self.k} outside [1, n={self.n}]")

    @classmethod
    def for_sources(cls, k: int) -> "FftGraph":
        """Smallest graph holding ``k`` sources (never below n = 2)."""
        if not 1 <= k <= field.GROUP_ORDER:
            raise DomainError(f"k={k} outside [1, 65536]")
        return cls(max(1, (k - 1).bit_length()), k)

    @property
    def n(self) -> int:
        return 1 << self.u

    @cached_property
    def omega(self) -> int:
        return field.root_of_order(self.n)

    # -- coordinates -------------------------------------------------------

    def check(self, node) -> NodeCoord:
        s, p = node
        if not (0 <= s <= self.u and 0 <= p < self.n):
            raise DomainError(f"node {tuple(node)} outside graph with n={self.n}")
        return NodeCoord(s, p)

    def nodes(self, step: int | None = None) -> Iterator[NodeCoord]:
        steps = range(self.u + 1) if step is None else [step]
        for s in steps:
            for p in range(self.n):
                yield NodeCoord(s, p)

    def source_position(self, i: int) -> int:
        return transform.bit_reverse(i, self.u)

    def source_index(self, position: int) -> int | None:
        """Live source index held at step-0 ``position``, or None if null."""
        i = transform.bit_reverse(position, self.u)
        return i if i < self.k else None

    @cached_property
    def source_placement(self) -> dict[int, int]:
        return {i: self.source_position(i) for i in range(self.k)}

    # -- wiring ------------------------------------------------------------

    def parents(self, node) -> tuple[NodeCoord, NodeCoord, int]:
        s, p = self.check(node)
        if s == 0:
            raise DomainError("source nodes have no parents")
        half = 1 << (s - 1)
        alpha = (1 << s) * (p >> s) + p % half
        e = (p << (self.u - s)) % self.n
        return NodeCoord(s - 1, alpha), NodeCoord(s - 1, alpha + half), e

    def children(self, node) -> set[NodeCoord]:
        s, p = self.check(node)
        if s == self.u:
            return set()
        # a step-s node feeds the two step-(s+1) nodes that differ from it
        # only in bit s
        low = p & ~(1 << s)
        return {NodeCoord(s + 1, low), NodeCoord(s + 1, low | (1 << s))}

    def twiddle(self, node) -> int:
        return field.pow(self.omega, self.parents(node)[2])

    # -- supports and voids ------------------------------------------------

    @cached_property
    def _perm(self) -> np.ndarray:
        return transform.bit_reverse_permutation(self.u)

    def support_set(self, node) -> frozenset[int]:
        """Source indices with a nonzero coefficient at ``node``.

        The sources feeding ``(s, p)`` are exactly the step-0 positions of
        the aligned block of ``2**s`` positions containing ``p``.
        """
        s, p = self.check(node)
        start = (p >> s) << s
        idx = self._perm[start:start + (1 << s)]
        return frozenset(int(i) for i in idx if i < self.k)

    @cached_property
    def _void_table(self) -> np.ndarray:
        """Boolean ``(u+1, n)`` table, True where the node is void."""
        live = self._perm < self.k
        table = np.empty((self.u + 1, self.n), dtype=bool)
        for s in range(self.u + 1):
            blocks = live.reshape(-1, 1 << s).any(axis=1)
            table[s] = ~np.repeat(blocks, 1 << s)
        return table

    def is_void(self, node) -> bool:
        s, p = self.check(node)
        return bool(self._void_table[s, p])

    @cached_property
    def void_set(self) -> frozenset[NodeCoord]:
        steps, positions = np.nonzero(self._void_table)
        return frozenset(NodeCoord(int(s), int(p)) for s, p in zip(steps, positions))

    def edges(self) -> list[tuple[NodeCoord, NodeCoord]]:
        """All (parent, child) links whose endpoints are both non-void."""
        out = []
        void = self.void_set
        for s in range(1, self.u + 1):
            for p in range(self.n):
                child = NodeCoord(s, p)
                if child in void:
                    continue
                a, b, _ = self.parents(child)
                out.extend((par, child) for par in (a, b) if par not in void)
        return out

    def neighbors(self, node) -> set[NodeCoord]:
        node = self.check(node)
        around = set(self.children(node))
        if node.step > 0:
            a, b, _ = self.parents(node)
            around |= {a, b}
        return {nd for nd in around if nd not in self.void_set}

    # -- linear combinations -----------------------------------------------

    def coefficient_vector(self, node) -> np.ndarray:
        """Length-k vector ``c`` with ``N(node) = sum_i c[i] x_i``.

        Computed by recursion over parents.  Each intermediate result is kept
        restricted to the block of step-0 positions under the node, so the
        work is ``O(2**s)`` rather than ``O(2**s * k)``.
        """
        s, p = self.check(node)

        def block(s: int, p: int) -> np.ndarray:
            if s == 0:
                return np.ones(1, dtype=np.int64)
            a, b, e = self.parents((s, p))
            w = field.pow(self.omega, e)
            return np.concatenate([block(*a), block(*b) * w % P])

        coeffs = block(s, p)
        start = (p >> s) << s
        out = np.zeros(self.k, dtype=np.int64)
        for off, c in enumerate(coeffs):
            i = transform.bit_reverse(start + off, self.u)
            if i < self.k:
                out[i] = c
        return out

    def step_matrix(self, step: int) -> np.ndarray:
        """``(n, k)`` matrix whose row ``p`` is the coefficient vector of ``(step, p)``."""
        if not 0 <= step <= self.u:
            raise DomainError(f"step {step} outside [0, {self.u}]")
        key = ("step_matrix", step)
        if key not in self._cache:
            placed = self.place_sources(np.eye(self.k, dtype=np.int64))
            mat = transform.butterfly_stages(placed, step)
            mat.setflags(write=False)
            self._cache[key] = mat
        return self._cache[key]

    def coefficient_matrix(self, nodes) -> np.ndarray:
        """Stack the coefficient vectors of ``nodes`` (one row each)."""
        nodes = [self.check(nd) for nd in nodes]
        out = np.zeros((len(nodes), self.k), dtype=np.int64)
        for s in {nd.step for nd in nodes}:
            rows = [r for r, nd in enumerate(nodes) if nd.step == s]
            out[rows] = self.step_matrix(s)[[nodes[r].position for r in rows]]
        return out

    # -- evaluation over data ----------------------------------------------

    def place_sources(self, sources) -> np.ndarray:
        """Step-0 layout: source ``i`` at ``bit_reverse(i, u)``, null rows zero."""
        src = field.as_vector(sources)
        if src.shape[0] != self.k:
            raise DomainError(f"expected {self.k} source blocks, got {src.shape[0]}")
        placed = np.zeros((self.n,) + src.shape[1:], dtype=np.int64)
        perm = transform.bit_reverse_permutation(self.u)
        placed[perm[:self.k]] = src
        return placed

    def _check_sources(self, sources) -> np.ndarray:
        if isinstance(sources, np.ndarray):
            src = field.as_vector(sources)
        else:
            blocks = [np.asarray(b) for b in sources]
            if len({b.shape for b in blocks}) > 1:
                raise DomainError("source blocks differ in length")
            src = field.as_vector(np.stack(blocks)) if blocks else np.zeros((0,), np.int64)
        if src.shape[0] != self.k:
            raise DomainError(f"expected {self.k} source blocks, got {src.shape[0]}")
        return src

    def evaluate_node(self, sources, node) -> np.ndarray:
        """Value of ``node`` for the given source blocks, by direct recursion."""
        return self.evaluate_nodes(sources, [node])[0]

    def evaluate_nodes(self, sources, nodes) -> np.ndarray:
        """Values of several nodes, recursing over parents with one shared memo."""
        src = self._check_sources(sources)
        targets = [self.check(nd) for nd in nodes]
        memo: dict[NodeCoord, np.ndarray] = {}
        zero = np.zeros(src.shape[1:], dtype=np.int64)

        def value(nd: NodeCoord) -> np.ndarray:
            if nd in memo:
                return memo[nd]
            if nd.step == 0:
                i = self.source_index(nd.position)
                val = src[i] if i is not None else zero
            else:
                a, b, e = self.parents(nd)
                val = (value(a) + field.pow(self.omega, e) * value(b)) % P
            memo[nd] = val
            return val

        if not targets:
            return np.zeros((0,) + src.shape[1:], dtype=np.int64)
        return np.stack([value(nd) for nd in targets])

    def evaluate_step(self, sources, step: int) -> np.ndarray:
        """All node values of one step at once, as an ``(n, ...)`` array."""
        src = self._check_sources(sources)
        return transform.butterfly_stages(self.place_sources(src), step)

    # -- inspection ----------------------------------------------------------

    def dump(self) -> str:
        lines = [f"# fft graph n={self.n} u={self.u} k={self.k}"]
        for nd in self.nodes():
            if nd.step == 0:
                continue
            a, b, e = self.parents(nd)
            support = ",".join(map(str, sorted(self.support_set(nd))))
            line = f"{nd.step} {nd.position} parents={a},{b} e={e} support={{{support}}}"
            if nd in self.void_set:
                line += " void"
            lines.append(line)
        return "\n".join(lines) + "\n"


def is_innovative(held, candidate) -> bool:
    """True iff ``candidate`` lies outside the span of the ``held`` vectors."""
    cand = field.as_vector(candidate)
    rows = [field.as_vector(v) for v in held]
    if not rows:
        return bool(cand.any())
    base = np.stack(rows)
    return linalg.rank(np.vstack([base, cand])) > linalg.rank(base)


def decodable(held, k: int) -> bool:
    rows = [field.as_vector(v) for v in held]
    if len(rows) < k:
        return False
    return linalg.rank(np.stack(rows)) == k
