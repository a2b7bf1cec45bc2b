"""Event-driven simulator of a P2P overlay laid out on the FFT graph.

Every non-source, non-void graph node is a *position* that one terminal plays.
A terminal may hold several positions (virtual nodes).  Joins take the first
available positions, growing the graph by one stage when it is full; leaves
backfill vacated positions from the top of the graph and fold the graph back
to half size when the remaining terminals fit.

Growing from ``n`` to ``2n`` doubles the block count and halves every block:
source block ``i`` becomes half-blocks ``2i`` and ``2i+1``.  Their bit-reversed
positions are ``bit_reverse(i, u)`` and ``bit_reverse(i, u) + n``, so steps
``0..u`` of the new graph are two copies of the old graph, each computing the
old node values over one half of the data.  The terminal behind old node
``(s, p)`` plays ``(s, p)`` and ``(s, p + n)``, and the owner of old last-step
node ``(u, q)`` also plays the two new outputs that combine its halves.  No
link between two different terminals is created or dropped.
"""

import csv
import io
import itertools
import math
from dataclasses import dataclass, field as dc_field
from typing import Iterable, NamedTuple

import numpy as np

from . import codec, linalg
from .errors import CapacityError, DomainError, IntegrityError, ReduceError, ScenarioParseError
from .field import MAX_LOG2
from .graph import FftGraph, NodeCoord

SOURCE = "<source>"


# -- virtual placement -----------------------------------------------------------


def internal_edges(positions: Iterable, g: FftGraph) -> int:
    """Number of graph links with both endpoints in ``positions``."""
    pos = {NodeCoord(*c) for c in positions}
    count = 0
    for child in pos:
        if child.step == 0 or g.is_void(child):
            continue
        a, b, _ = g.parents(child)
        count += sum(1 for par in (a, b) if par in pos and not g.is_void(par))
    return count


def cluster_size(j: int) -> int:
    """Node count of a complete sub-FFT with ``j`` steps."""
    return j * (1 << (j - 1))


def sub_fft_clusters(g: FftGraph, j: int, min_step: int = 1):
    """Yield every complete ``j``-step sub-FFT at steps ``>= min_step``.

    A cluster spans steps ``s0..s0+j-1`` and the ``2**(j-1)`` positions that
    differ only in bits ``s0..s0+j-2``, the bits its butterflies combine.
    """
    if j == 1:
        for s in range(min_step, g.u + 1):
            for p in range(g.n):
                yield [NodeCoord(s, p)]
        return
    for s0 in range(min_step, g.u - j + 2):
        mask = ((1 << (j - 1)) - 1) << s0
        offsets = [o << s0 for o in range(1 << (j - 1))]
        for base in range(g.n):
            if base & mask:
                continue
            yield [NodeCoord(s, base | o) for s in range(s0, s0 + j) for o in offsets]


def _adjacent(c: NodeCoord, g: FftGraph) -> set[NodeCoord]:
    return g.neighbors(c)


def _links_into(c: NodeCoord, chosen: set, g: FftGraph) -> int:
    return len(_adjacent(c, g) & chosen)


def _grow(free: set, m: int, g: FftGraph) -> set:
    chosen: set[NodeCoord] = set()
    while len(chosen) < m:
        remaining = m - len(chosen)
        avail = free - chosen
        for j in range(g.u, 0, -1):
            if cluster_size(j) > remaining:
                continue
            fits = [cl for cl in sub_fft_clusters(g, j) if avail.issuperset(cl)]
            if fits:
                best = min(fits, key=lambda cl: (
                    -sum(_links_into(c, chosen, g) for c in cl), sorted(cl)))
                chosen |= set(best)
                break
    return chosen


def _trim(free: set, m: int, g: FftGraph) -> set | None:
    for j in range(1, g.u + 1):
        if cluster_size(j) < m:
            continue
        for cl in sub_fft_clusters(g, j):
            if free.issuperset(cl):
                chosen = set(cl)
                while len(chosen) > m:
                    # drop the least connected node, preferring the highest coordinate
                    worst = min(chosen, key=lambda c: (_links_into(c, chosen, g), [-c.step, -c.position]))
                    chosen.remove(worst)
                return chosen
        return None
    return None


def _improve(chosen: set, free: set, g: FftGraph) -> set:
    """Single-swap hill climbing on the internal edge count."""
    chosen = set(chosen)
    improved = True
    while improved:
        improved = False
        frontier = sorted(set().union(*(_adjacent(c, g) for c in chosen)) & free - chosen)
        for out in sorted(chosen):
            rest = chosen - {out}
            loss = _links_into(out, rest, g)
            for inn in frontier:
                if _links_into(inn, rest, g) > loss:
                    chosen = rest | {inn}
                    improved = True
                    break
            if improved:
                break
    return chosen


def place_virtual(free: Iterable, m: int, g: FftGraph) -> list[NodeCoord]:
    """Pick ``m`` of the ``free`` positions with as many links among them as possible.

    Candidates are built from complete sub-FFTs: the largest ones that fit
    first, then smaller ones attached to them; alternatively a subset of the
    smallest sub-FFT that holds ``m`` nodes.  The better candidate is then
    polished by swaps.  Ties go to the lexicographically smallest set.
    """
    fset = {NodeCoord(*c) for c in free}
    if m < 0:
        raise DomainError("multiplicity must be non-negative")
    if len(fset) < m:
        raise CapacityError(f"need {m} free positions, only {len(fset)} available")
    if m == 0:
        return []
    cands = [c for c in (_grow(fset, m, g), _trim(fset, m, g)) if c]
    best = min(cands, key=lambda c: (-internal_edges(c, g), sorted(c)))
    best = _improve(best, fset, g)
    if math.comb(len(fset), m) <= EXACT_LIMIT:
        exact = _exhaustive(sorted(fset), m, g)
        if internal_edges(exact, g) > internal_edges(best, g):
            best = exact
    return sorted(best)


EXACT_LIMIT = 200_000


def _exhaustive(free: list, m: int, g: FftGraph) -> set:
    """Lexicographically first m-subset of ``free`` with the most internal links."""
    index = {c: i for i, c in enumerate(free)}
    adj = np.zeros((len(free), len(free)), dtype=np.int8)
    for c, i in index.items():
        for nb in _adjacent(c, g):
            if nb in index:
                adj[i, index[nb]] = 1
    combos = np.array(list(itertools.combinations(range(len(free)), m)), dtype=np.int32)
    score = np.zeros(len(combos), dtype=np.int32)
    for a, b in itertools.combinations(range(m), 2):
        score += adj[combos[:, a], combos[:, b]]
    return {free[i] for i in combos[int(np.argmax(score))]}


# -- metrics -----------------------------------------------------------------------


class EventRow(NamedTuple):
    event_index: int
    event_type: str
    n: int
    k: int
    terminals: int
    connection_changes: int
    decodable_clients: int
    orphans: int


CSV_HEADER = list(EventRow._fields)


@dataclass
class MetricsRecord:
    connection_changes: int = 0
    decodable_clients: int = 0
    traffic_units: int = 0
    signalling_events: int = 0
    orphan_events: int = 0
    rows: list[EventRow] = dc_field(default_factory=list)

    def totals(self) -> tuple[int, ...]:
        return (self.connection_changes, self.decodable_clients, self.traffic_units,
                self.signalling_events, self.orphan_events)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        writer.writerows(self.rows)
        return buf.getvalue()


@dataclass
class Terminal:
    id: str
    positions: set[NodeCoord] = dc_field(default_factory=set)
    capacity_weight: int = 1


# -- scenario events ----------------------------------------------------------------


class Event(NamedTuple):
    kind: str  # join | leave | sources | probe
    terminal: str | None = None
    value: int = 0
    lineno: int = 0


def parse_scenario(text: str) -> list[Event]:
    events = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind, args = parts[0], parts[1:]
        try:
            if kind == "join" and len(args) == 2:
                ev = Event("join", args[0], int(args[1]), lineno)
                if ev.value < 1:
                    raise ValueError
            elif kind == "leave" and len(args) == 1:
                ev = Event("leave", args[0], 0, lineno)
            elif kind == "sources" and len(args) == 1:
                ev = Event("sources", None, int(args[0]), lineno)
                if ev.value < 1:
                    raise ValueError
            elif kind == "probe" and len(args) == 1:
                ev = Event("probe", None, int(args[0]), lineno)
                if ev.value < 0:
                    raise ValueError
            else:
                raise ScenarioParseError(lineno, f"unrecognised event {line!r}")
        except ValueError:
            raise ScenarioParseError(lineno, f"bad argument in {line!r}") from None
        events.append(ev)
    return events


def format_scenario(events: Iterable[Event]) -> str:
    lines = []
    for ev in events:
        if ev.kind == "join":
            lines.append(f"join {ev.terminal} {ev.value}")
        elif ev.kind == "leave":
            lines.append(f"leave {ev.terminal}")
        else:
            lines.append(f"{ev.kind} {ev.value}")
    return "\n".join(lines) + ("\n" if lines else "")


# -- the overlay ----------------------------------------------------------------------


class Overlay:
    """Mutable overlay state.  Events must be applied one at a time, in order."""

    def __init__(self, k: int = 4, u: int | None = None, min_u: int | None = None, seed: int = 0):
        self.graph = FftGraph.for_sources(k) if u is None else FftGraph(u, k)
        self.min_u = self.graph.u if min_u is None else min_u
        self.terminals: dict[str, Terminal] = {}
        self.assignment: dict[NodeCoord, str] = {}
        self.replicated: set[NodeCoord] = set()
        self.null_sources: frozenset[int] = frozenset()
        self.pending_k: int | None = None
        self.orphans: set[NodeCoord] = set()
        self.clock = 0
        self.metrics = MetricsRecord()
        self.rng = np.random.default_rng(seed)
        self._event_index = 0

    # -- views ------------------------------------------------------------------

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def k(self) -> int:
        return self.graph.k

    def positions(self) -> list[NodeCoord]:
        """All playable positions: non-source, non-void, in (step, position) order."""
        g = self.graph
        return [c for c in g.nodes() if c.step > 0 and c not in g.void_set]

    def free_positions(self) -> list[NodeCoord]:
        return [c for c in self.positions() if c not in self.assignment]

    def available_positions(self) -> list[NodeCoord]:
        """Vacant positions first, then positions held only as replicas."""
        return self.free_positions() + sorted(self.replicated)

    def label(self, c: NodeCoord):
        if c.step == 0:
            return None if self.graph.is_void(c) else SOURCE
        return self.assignment.get(c)

    def _connections(self) -> dict[tuple[NodeCoord, NodeCoord], tuple | None]:
        """Map each live link to the pair of parties it joins, or None."""
        out = {}
        for par, child in self.graph.edges():
            a, b = self.label(par), self.label(child)
            out[(par, child)] = (a, b) if a is not None and b is not None and a != b else None
        return out

    @staticmethod
    def _changed(before: dict, after: dict) -> int:
        return sum(1 for e in before.keys() | after.keys() if before.get(e) != after.get(e))

    def _compute_orphans(self) -> set[NodeCoord]:
        g = self.graph
        orphans = set()
        for c in self.free_positions():
            if any(ch in self.assignment for ch in g.children(c)):
                orphans.add(c)
        return orphans

    def _keep_one_real(self) -> None:
        # a terminal left with replicas only keeps its first one for real,
        # so that joins taking over replicas cannot strip it of every position
        for t in self.terminals.values():
            if t.positions and t.positions <= self.replicated:
                self.replicated.discard(min(t.positions))

    def _record(self, kind: str, changes: int, decodable: int = 0) -> None:
        self._keep_one_real()
        self.orphans = self._compute_orphans()
        self.clock += 1
        m = self.metrics
        m.connection_changes += changes
        m.decodable_clients += decodable
        if self.orphans:
            m.orphan_events += 1
        active = sum(1 for t in self.terminals.values() if t.positions)
        m.rows.append(EventRow(self._event_index, kind, self.n, self.k, active,
                               changes, decodable, len(self.orphans)))

    def _assign(self, c: NodeCoord, tid: str) -> None:
        prev = self.assignment.get(c)
        if prev is not None:
            self.terminals[prev].positions.discard(c)
        self.assignment[c] = tid
        self.terminals[tid].positions.add(c)
        self.replicated.discard(c)

    def _vacate(self, c: NodeCoord) -> None:
        tid = self.assignment.pop(c)
        self.terminals[tid].positions.discard(c)
        self.replicated.discard(c)

    # -- join / leave -------------------------------------------------------------

    def _place(self, tid: str, m: int) -> int:
        """Give ``tid`` ``m`` more positions; returns the number of changed links.

        Any extension needed is applied (and recorded) first.
        """
        self._keep_one_real()
        while len(self.free_positions()) + len(self.replicated) < m:
            self.extend()
        before = self._connections()
        free = self.free_positions()
        cands = free if len(free) >= m else self.available_positions()
        for c in place_virtual(cands, m, self.graph):
            self._assign(c, tid)
        return self._changed(before, self._connections())

    def join(self, tid: str, m: int = 1) -> None:
        if m < 1:
            raise DomainError("a terminal must request at least one position")
        if tid in self.terminals:
            raise DomainError(f"terminal {tid!r} is already present")
        self.terminals[tid] = Terminal(tid, set(), m)
        changes = self._place(tid, m)
        self.metrics.signalling_events += 1
        self._record("join", changes)

    def leave(self, tid: str) -> None:
        if tid not in self.terminals:
            raise DomainError(f"unknown terminal {tid!r}")
        before = self._connections()
        vacated = sorted(self.terminals[tid].positions)
        for c in vacated:
            self._vacate(c)
        del self.terminals[tid]
        relocations = 0
        for v in vacated:
            if v in self.assignment:
                continue
            keeper = self._replica_keeper(v)
            if keeper is not None:
                self._assign(v, keeper)
                self.replicated.add(v)
                continue
            if v.step == self.graph.u:
                continue
            donors = [c for c in self.assignment if c > v and c not in self.replicated]
            if not donors:
                continue
            d = max(donors)
            owner = self.assignment[d]
            self._vacate(d)
            self._assign(v, owner)
            relocations += 1
        self.metrics.signalling_events += 1 + relocations
        self._record("leave", self._changed(before, self._connections()))
        while self.can_reduce():
            self.reduce()

    def _replica_keeper(self, v: NodeCoord) -> str | None:
        """Terminal that can take ``v`` back as a replica after a leave.

        Above the minimum size the graph is two folded copies plus a final
        stage.  A vacated copy goes back to the owner of its twin, and a
        vacated final output to the terminal owning both its parents; this
        restores the layout that a later reduction folds away.
        """
        g = self.graph
        if g.u <= self.min_u:
            return None
        half = g.n // 2
        if v.step == g.u:
            a, b, _ = g.parents(v)
            owner = self.assignment.get(a)
            return owner if owner is not None and self.assignment.get(b) == owner else None
        twin = NodeCoord(v.step, v.position ^ half)
        if twin in self.replicated:
            return None
        return self.assignment.get(twin)

    # -- extension / reduction ------------------------------------------------------

    def extend(self) -> None:
        g = self.graph
        if g.u >= MAX_LOG2:
            raise CapacityError("the graph already has 2**16 positions per step")
        n = g.n
        before = self._connections()
        new = FftGraph(g.u + 1, 2 * g.k)
        assignment, replicated = {}, set()
        for c, tid in self.assignment.items():
            twin = NodeCoord(c.step, c.position + n)
            assignment[c] = assignment[twin] = tid
            replicated.add(twin)
            if c in self.replicated:
                replicated.add(c)
            if c.step == g.u:
                for q in (c.position, c.position + n):
                    out = NodeCoord(g.u + 1, q)
                    assignment[out] = tid
                    replicated.add(out)
        self.graph = new
        self.assignment = assignment
        self.replicated = replicated
        self.null_sources = frozenset(j for i in self.null_sources for j in (2 * i, 2 * i + 1))
        if self.pending_k is not None:
            self.pending_k *= 2
        self._rebuild_terminals()
        after = self._connections()
        # compare every new link against the old link it copies
        changes = 0
        for (par, child), conn in after.items():
            if child.step > g.u:
                old = None
            else:
                old = before.get((NodeCoord(par.step, par.position % n),
                                  NodeCoord(child.step, child.position % n)))
            changes += conn != old
        self.metrics.signalling_events += 1
        self._record("extend", changes)

    def _rebuild_terminals(self) -> None:
        for t in self.terminals.values():
            t.positions = set()
        for c, tid in self.assignment.items():
            self.terminals[tid].positions.add(c)

    def _reduction_plan(self):
        """Folded ownership for the half-size graph, or a reason why there is none."""
        g = self.graph
        if g.u <= max(self.min_u, 1):
            return None, "graph is already at its minimum size"
        half = g.n // 2
        small = FftGraph(g.u - 1, (g.k + 1) // 2)
        merged: dict[NodeCoord, str] = {}
        for c, tid in self.assignment.items():
            if c.step == g.u:
                continue
            img = NodeCoord(c.step, c.position % half)
            if merged.setdefault(img, tid) != tid:
                return None, f"positions {img} and its twin have different owners"
        for c, tid in self.assignment.items():
            if c.step == g.u and merged.get(NodeCoord(g.u - 1, c.position % half)) != tid:
                return None, f"output {c} is not owned by the terminal feeding it"
        owners = set(merged.values())
        if owners != set(self.terminals):
            return None, "a terminal would lose all its positions"
        if any(small.is_void(c) for c in merged):
            return None, "folded ownership lands on a void position"
        # the folded links must be exactly the links that exist now
        before = self._connections()
        labels = {c: tid for c, tid in merged.items()}

        def small_label(c: NodeCoord):
            if c.step == 0:
                return None if small.is_void(c) else SOURCE
            return labels.get(c)

        small_conns = {}
        for par, child in small.edges():
            a, b = small_label(par), small_label(child)
            small_conns[(par, child)] = (a, b) if a is not None and b is not None and a != b else None
        for (par, child), conn in before.items():
            if conn is None:
                continue
            if child.step == g.u:
                return None, "a last-step link joins two terminals"
            img = (NodeCoord(par.step, par.position % half), NodeCoord(child.step, child.position % half))
            if small_conns.get(img) != conn:
                return None, f"link {par}->{child} would change"
        for (par, child), conn in small_conns.items():
            if conn is None:
                continue
            pre = [before.get((NodeCoord(par.step, par.position + d), NodeCoord(child.step, child.position + d)))
                   for d in (0, half)]
            if conn not in pre:
                return None, f"link {par}->{child} would be new"
        return (small, merged), None

    def can_reduce(self) -> bool:
        plan, _ = self._reduction_plan()
        return plan is not None

    def reduce(self) -> None:
        plan, reason = self._reduction_plan()
        if plan is None:
            raise ReduceError(f"cannot reduce: {reason}")
        small, merged = plan
        half = small.n
        self.replicated = {NodeCoord(c.step, c.position) for c in self.replicated
                           if c.position < half and c.step < self.graph.u}
        self.replicated &= merged.keys()
        self.graph = small
        self.assignment = merged
        self.null_sources = frozenset(i // 2 for i in self.null_sources
                                      if (i ^ 1) in self.null_sources or (i ^ 1) >= 2 * small.k)
        self.null_sources = frozenset(i for i in self.null_sources if i < small.k)
        if self.pending_k is not None:
            self.pending_k = max(1, (self.pending_k + 1) // 2)
        self._rebuild_terminals()
        self.metrics.signalling_events += 1
        self._record("reduce", 0)

    # -- dynamic sources ------------------------------------------------------------

    def set_source_count(self, k: int, commit: bool = True) -> None:
        """Change the number of live sources.

        With ``commit=False`` a decrease only nulls the dropped sources: the
        graph keeps its ``k`` and decoders recover zero blocks for them.
        Committing rebuilds the graph so that fewer blocks suffice.
        """
        if not 1 <= k <= self.n:
            raise DomainError(f"source count {k} outside [1, {self.n}]")
        before = self._connections()
        if not commit and k < self.k:
            self.pending_k = k
            self.null_sources = frozenset(range(k, self.k))
        else:
            self.pending_k = None
            self.null_sources = frozenset()
            self.graph = FftGraph(self.graph.u, k)
            for c in [c for c in self.assignment if self.graph.is_void(c)]:
                self._vacate(c)
        changes = self._changed(before, self._connections())
        if self.pending_k is None:
            for t in list(self.terminals.values()):
                missing = t.capacity_weight - len(t.positions)
                if missing > 0:
                    changes += self._place(t.id, missing)
        self.metrics.signalling_events += 1
        self._record("sources", changes)

    def commit_sources(self) -> None:
        if self.pending_k is None:
            raise DomainError("no source transition in progress")
        self.set_source_count(self.pending_k, commit=True)

    # -- probes ---------------------------------------------------------------------

    def client_view(self, home: NodeCoord) -> list[NodeCoord]:
        """Blocks a client attached at ``home`` can fetch: home and its live neighbours."""
        view = {home} | self.graph.neighbors(home)
        return sorted(c for c in view if self.label(c) is not None)

    def probe(self, clients: int, length: int = 4) -> int:
        """Sample clients and count those whose view decodes the sources.

        Each decodable view is actually decoded against random data and
        checked, null sources included.
        """
        occupied = sorted(self.assignment)
        ok = 0
        for _ in range(clients):
            if not occupied:
                break
            home = occupied[self.rng.integers(len(occupied))]
            view = self.client_view(home)
            self.metrics.traffic_units += len(view)
            g = self.graph
            if linalg.rank(g.coefficient_matrix(view)) < g.k:
                continue
            data = self.rng.integers(0, 1 << 16, size=(g.k, length))
            data[sorted(self.null_sources)] = 0
            values = g.coefficient_matrix(view) @ data
            blocks = [codec.CodedBlock.from_values(c, v % codec.P) for c, v in zip(view, values)]
            if not np.array_equal(codec.decode(blocks, g), data):
                raise IntegrityError(f"client at {home} decoded wrong data")
            ok += 1
        self._record("probe", 0, ok)
        return ok

    # -- invariants -----------------------------------------------------------------

    def check_invariants(self) -> list[str]:
        """Return a description of every violated structural invariant."""
        problems = []
        g = self.graph
        playable = set(self.positions())
        stray = set(self.assignment) - playable
        if stray:
            problems.append(f"assigned positions outside the playable set: {sorted(stray)}")
        if set(self.free_positions()) | set(self.assignment) != playable | stray:
            problems.append("assignment and free list do not cover the playable positions")
        owned = {}
        for tid, t in self.terminals.items():
            if not t.positions:
                problems.append(f"terminal {tid} holds no position")
            for c in t.positions:
                if c.step == 0:
                    problems.append(f"terminal {tid} holds source position {c}")
                if self.assignment.get(c) != tid:
                    problems.append(f"terminal {tid} lists {c} but does not own it")
                owned[c] = tid
        if owned != self.assignment:
            problems.append("assignment map disagrees with terminal position sets")
        if not self.replicated <= set(self.assignment):
            problems.append("a replica position is not owned")
        if self.orphans != self._compute_orphans():
            problems.append("orphan markers are stale")
        for par, child in g.edges():
            if child in self.assignment and self.label(par) is None and par not in self.orphans:
                problems.append(f"{child} has a vacant parent {par} without an orphan marker")
        if g.n <= 16 and linalg.rank(g.step_matrix(g.u)) != g.k:
            problems.append("last-step coefficient vectors lost full rank")
        return problems

    # -- driver ---------------------------------------------------------------------

    def apply(self, ev: Event) -> None:
        if ev.kind == "join":
            self.join(ev.terminal, ev.value)
        elif ev.kind == "leave":
            self.leave(ev.terminal)
        elif ev.kind == "sources":
            self.set_source_count(ev.value)
        elif ev.kind == "probe":
            self.probe(ev.value)
        else:
            raise DomainError(f"unknown event kind {ev.kind!r}")


def run_scenario(events: Iterable[Event], seed: int = 0, k: int = 4,
                 check: bool = False) -> tuple[MetricsRecord, Overlay]:
    """Replay ``events`` on a fresh overlay; identical inputs give identical output.

    With ``check`` the structural invariants are verified after every event.
    """
    ov = Overlay(k=k, seed=seed)
    for idx, ev in enumerate(events):
        ov._event_index = idx
        try:
            ov.apply(ev)
        except DomainError as exc:
            raise DomainError(f"line {ev.lineno}: {exc}") from exc
        if check:
            problems = ov.check_invariants()
            if problems:
                raise IntegrityError(f"after event {idx} ({ev.kind}): " + "; ".join(problems))
    return ov.metrics, ov


def random_churn(n_events: int, seed: int = 0, max_terminals: int = 12,
                 max_multiplicity: int = 2, max_sources: int = 4, probe_every: int = 10) -> list[Event]:
    """A reproducible join/leave/sources/probe mix for stress tests and demos."""
    rng = np.random.default_rng(seed)
    present: list[str] = []
    counter = 0
    events = []
    for i in range(n_events):
        if probe_every and i % probe_every == probe_every - 1:
            events.append(Event("probe", None, 3))
            continue
        r = rng.random()
        if r < 0.08:
            events.append(Event("sources", None, int(rng.integers(1, max_sources + 1))))
        elif present and (len(present) >= max_terminals or r < 0.5):
            tid = present.pop(int(rng.integers(len(present))))
            events.append(Event("leave", tid))
        else:
            tid = f"t{counter}"
            counter += 1
            present.append(tid)
            events.append(Event("join", tid, int(rng.integers(1, max_multiplicity + 1))))
    return events
