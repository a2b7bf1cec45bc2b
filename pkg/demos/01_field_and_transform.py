"""Arithmetic in GF(65537) and the Fermat number transform.

Run: python3 demos/01_field_and_transform.py
"""

import numpy as np

from fftnc import field, transform

# 2**16 = -1 in this field, so 256 squares to -1
print("256 * 256 =", field.mul(256, 256))
print("1/2 =", field.inv(2), " check:", field.mul(2, field.inv(2)))

# roots of unity of every power-of-two order up to 2**16
for n in (2, 4, 8, 65536):
    w = field.root_of_order(n)
    print(f"order {n:5d}: w = {w:5d}, w^(n/2) = {field.pow(w, n // 2)}")

# the fast transform agrees with the quadratic definition
rng = np.random.default_rng(0)
a = rng.integers(0, field.P, 16)
A = transform.fnt_forward(a)
print("fast == direct:", np.array_equal(A, transform.dft_direct(a)))
print("inverse recovers input:", np.array_equal(transform.fnt_inverse(A), a))

# the butterfly reads its input in bit-reversed order
print("bit-reversed order for n=8:", transform.bit_reverse_permutation(3).tolist())
