"""Terminals on the graph: virtual positions, growth and shrinkage.

Run: python3 demos/03_virtual_nodes_and_growth.py
"""

from fftnc.graph import FftGraph
from fftnc.overlay import Overlay, internal_edges, place_virtual

g = FftGraph(3, 8)
free = [c for c in g.nodes() if c.step]
cross = place_virtual(free, 4, g)
print("4 positions for one terminal:", [str(c) for c in cross], "links:", internal_edges(cross, g))
chain = [(1, 0), (2, 0), (3, 0), (2, 4)]
print("a chain of 4 linked nodes only has", internal_edges(chain, g), "links")
twelve = place_virtual(free, 12, g)
print("12 positions form a 3-step sub-FFT with", internal_edges(twelve, g), "links")

ov = Overlay(k=4)
for name in ["ann", "ben", "cat", "dan", "eve", "fay", "gus", "hal"]:
    ov.join(name)
print(f"\nfull graph: n={ov.n}, free={len(ov.free_positions())}")

ov.join("ivy")  # no room: the graph grows by one stage first
for row in ov.metrics.rows[-2:]:
    print(f"  {row.event_type:7s} n={row.n} links changed={row.connection_changes}")
print("hal now plays", sorted(str(c) for c in ov.terminals["hal"].positions))

ov.leave("ivy")  # the layout folds back to half size
for row in ov.metrics.rows[-2:]:
    print(f"  {row.event_type:7s} n={row.n} links changed={row.connection_changes}")
print("invariant problems:", ov.check_invariants() or "none")
