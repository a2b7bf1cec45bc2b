"""Generic solve versus the inverse-transform fast path.

Run: python3 demos/05_decode_speed.py
"""

import time

import numpy as np

from fftnc import codec, transform
from fftnc.graph import FftGraph

rng = np.random.default_rng(0)


def clock(fn, *args):
    t0 = time.perf_counter()
    fn(*args)
    return time.perf_counter() - t0


print("  n    fnt (ms)")
for u in range(10, 16):
    a = rng.integers(0, 65537, 1 << u)
    print(f"{1 << u:6d} {clock(transform.fnt_forward, a) * 1e3:8.2f}")

print("\n   k  generic (s)  fast (ms)")
for u in (8, 10, 12):
    k = 1 << u
    g = FftGraph(u, k)
    src = codec.SourceObject(rng.integers(0, 1 << 16, (k, 8)), 16 * k)
    outs = codec.encode_step(src, g)
    slow = clock(codec.decode, outs, g)
    fast = clock(codec.decode_full_last_step, outs, g)
    print(f"{k:5d} {slow:11.3f} {fast * 1e3:10.2f}")
