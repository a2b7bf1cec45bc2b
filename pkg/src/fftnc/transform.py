"""Fermat Number Transform over GF(65537) and bit-reversal helpers.

Transforms take and return vectors in natural index order.  Two-dimensional
input is transformed along axis 0, i.e. column by column, which is how the
codec applies one transform to every symbol position of a set of blocks.
"""

import numpy as np

from . import field
from .errors import DomainError
from .field import P


def bit_reverse(i: int, u: int) -> int:
    """Reverse the ``u`` low bits of ``i``."""
    if u < 0 or not 0 <= i < (1 << u):
        raise DomainError(f"index {i} out of range for {u} bits")
    out = 0
    for _ in range(u):
        out = (out << 1) | (i & 1)
        i >>= 1
    return out


def bit_reverse_permutation(u: int) -> np.ndarray:
    """``perm[i] == bit_reverse(i, u)`` for all ``i < 2**u``."""
    perm = np.zeros(1, dtype=np.int64)
    for _ in range(u):
        perm = np.concatenate([2 * perm, 2 * perm + 1])
    return perm


def log2_size(n: int) -> int:
    if not field.is_power_of_two(n) or not 2 <= n <= field.GROUP_ORDER:
        raise DomainError(f"transform length {n} is not a power of two in [2, 65536]")
    return n.bit_length() - 1


def _prepare(a) -> tuple[np.ndarray, int]:
    arr = field.as_vector(a)
    if arr.ndim not in (1, 2):
        raise DomainError("expected a vector or a 2-D array of columns")
    return arr, log2_size(arr.shape[0])


def butterfly_stages(placed: np.ndarray, stop: int, start: int = 0) -> np.ndarray:
    """Run DIT stages ``start+1 .. stop`` on data already in bit-reversed order.

    After stage ``s`` entry ``p`` holds graph node ``(s, p)``: the sum of its
    first parent and the twiddled second parent, both taken from stage
    ``s - 1``.
    """
    a = np.array(placed, dtype=np.int64)
    n = a.shape[0]
    rest = a.shape[1:]
    for s in range(start + 1, stop + 1):
        half = 1 << (s - 1)
        tw = field.root_powers(2 * half, half)
        tw = tw.reshape((1, half) + (1,) * len(rest))
        blocks = a.reshape((n // (2 * half), 2, half) + rest)
        even = blocks[:, 0]
        odd = blocks[:, 1] * tw % P
        out = np.empty_like(blocks)
        out[:, 0] = even + odd
        out[:, 1] = even - odd
        a = (out % P).reshape(a.shape)
    return a


def fnt_forward(a) -> np.ndarray:
    """Forward transform ``A[i] = sum_j a[j] w**(i j)`` with ``w`` of order ``n``."""
    arr, u = _prepare(a)
    return butterfly_stages(arr[bit_reverse_permutation(u)], u)


def fnt_inverse(A) -> np.ndarray:
    """Inverse of :func:`fnt_forward`, scaled by ``1/n``.

    Evaluating with ``w**-1`` equals the forward transform read at index
    ``-i mod n``.
    """
    arr, u = _prepare(A)
    n = arr.shape[0]
    fwd = fnt_forward(arr)
    return fwd[(-np.arange(n)) % n] * field.inv(n) % P


def dft_direct(a) -> np.ndarray:
    """Quadratic evaluation of the transform; the reference for :func:`fnt_forward`."""
    arr, _ = _prepare(a)
    n = arr.shape[0]
    stride = field.GROUP_ORDER // n
    idx = np.arange(n, dtype=np.int64)
    out = np.empty_like(arr)
    for i in range(n):
        row = field.GENERATOR_POWERS[(i * idx % n) * stride]
        # each term < 2**33 and n <= 2**16, so the dot product fits in int64
        out[i] = np.tensordot(row, arr, axes=(0, 0)) % P
    return out
