"""Replay the sample churn scenario and summarise the metrics.

Run: python3 demos/04_churn.py [scenario]
"""

import sys
from collections import Counter
from pathlib import Path

from fftnc import overlay

path = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).with_name("churn.scenario")
events = overlay.parse_scenario(path.read_text())
metrics, ov = overlay.run_scenario(events, seed=0, check=True)

kinds = Counter(r.event_type for r in metrics.rows)
print(f"{len(events)} events -> {len(metrics.rows)} rows: {dict(kinds)}")
print("graph sizes seen:", sorted({r.n for r in metrics.rows}))
print("links changed by extend/reduce:",
      sum(r.connection_changes for r in metrics.rows if r.event_type in ("extend", "reduce")))
print("links changed by joins/leaves/sources:", metrics.connection_changes)
print("clients that decoded:", metrics.decodable_clients)
print("events with orphaned positions:", metrics.orphan_events)
print(f"final state: n={ov.n} k={ov.k} terminals={len(ov.terminals)}")

# the same seed always gives the same trace
again, _ = overlay.run_scenario(events, seed=0)
print("deterministic:", again.to_csv() == metrics.to_csv())
print()
print("\n".join(metrics.to_csv().splitlines()[:12]))
