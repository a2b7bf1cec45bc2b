"""Three source blocks on a size-8 graph: any three outputs give the data back.

Run: python3 demos/02_any_k_blocks.py
"""

from itertools import combinations

import numpy as np

from fftnc import codec
from fftnc.graph import FftGraph, decodable

payload = b"structured network coding over a Fermat prime field"
k = 3
g = FftGraph(3, k)  # n = 8, sources 3..7 are null
src = codec.split(payload, k)

print("sources sit at step-0 positions", [g.source_position(i) for i in range(k)])
print("void nodes:", sorted(str(c) for c in g.void_set))

# intermediate nodes only mix a part of the sources
for c in [(1, 0), (1, 4), (2, 0), (3, 5)]:
    print(f"support of {c}: {sorted(g.support_set(c))}")

outputs = codec.encode_step(src, g)
ok = 0
for subset in combinations(outputs, k):
    back = codec.SourceObject(codec.decode(subset, g), len(payload))
    ok += codec.merge(back) == payload
print(f"{ok} of 56 three-output subsets decode")

# intermediate blocks work too, as long as their coefficients have full rank
mixed = [(1, 0), (2, 2), (3, 7)]
vecs = [g.coefficient_vector(c) for c in mixed]
print("mixed set", mixed, "decodable:", decodable(vecs, k))
blocks = [codec.encode_block(src, g, c) for c in mixed]
print("decoded:", codec.merge(codec.SourceObject(codec.decode(blocks, g), len(payload))))

# when every output is present the inverse transform is enough
fast = codec.decode_full_last_step(outputs, g)
print("fast path agrees:", np.array_equal(fast, src.blocks))
