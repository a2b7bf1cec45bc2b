"""Arithmetic in the prime field GF(65537).

65537 = 2**16 + 1 is a Fermat prime, so the multiplicative group is cyclic of
order 2**16 and holds elements of every order 2**u with 1 <= u <= 16.  Field
elements are plain Python ints kept in the canonical range [0, 65536].  Note
that 65536 itself needs 17 bits.

Vectors of field elements are numpy ``int64`` arrays; a product of two
residues is below 2**33, so elementwise multiply-then-reduce never overflows.
"""

import builtins

import numpy as np

from .errors import DomainError

P = 65537
GENERATOR = 3
GROUP_ORDER = P - 1  # 2**16
MAX_LOG2 = 16


def add(a: int, b: int) -> int:
    return (a + b) % P


def sub(a: int, b: int) -> int:
    return (a - b) % P


def neg(a: int) -> int:
    return -a % P


def mul(a: int, b: int) -> int:
    return a * b % P


def pow(a: int, e: int) -> int:
    """Return ``a**e`` in the field.  ``0**0`` is 1."""
    if e < 0:
        raise DomainError("negative exponent")
    return builtins.pow(a % P, e, P)


def inv(a: int) -> int:
    a %= P
    if a == 0:
        raise DomainError("zero has no multiplicative inverse")
    # a**(p-2) = a**-1 by Fermat's little theorem
    return builtins.pow(a, P - 2, P)


def is_power_of_two(x: int) -> bool:
    return x > 0 and x & (x - 1) == 0


def root_of_order(order: int) -> int:
    """Primitive ``order``-th root of unity, ``3**(65536 // order)``.

    ``order`` must be a power of two between 2 and 65536.
    """
    if not is_power_of_two(order) or not 2 <= order <= GROUP_ORDER:
        raise DomainError(f"no element of order {order} in GF({P})")
    return builtins.pow(GENERATOR, GROUP_ORDER // order, P)


def _generator_powers() -> np.ndarray:
    table = np.empty(GROUP_ORDER, dtype=np.int64)
    table[0] = 1
    # doubling fill: table[h:2h] = table[:h] * g**h
    h = 1
    while h < GROUP_ORDER:
        table[h:2 * h] = table[:h] * builtins.pow(GENERATOR, h, P) % P
        h *= 2
    table.setflags(write=False)
    return table


#: ``GENERATOR_POWERS[e] == 3**e mod P`` for every exponent 0 <= e < 65536.
GENERATOR_POWERS = _generator_powers()


def root_powers(order: int, count: int | None = None) -> np.ndarray:
    """Array ``[w**0, w**1, ..., w**(count-1)]`` for ``w = root_of_order(order)``."""
    root_of_order(order)  # validates
    if count is None:
        count = order
    stride = GROUP_ORDER // order
    return GENERATOR_POWERS[(np.arange(count, dtype=np.int64) % order) * stride]


def as_vector(values) -> np.ndarray:
    """Copy ``values`` into a canonical int64 array of residues."""
    arr = np.asarray(values)
    if arr.dtype.kind not in "iu":
        raise DomainError("field vectors must hold integers")
    return np.mod(arr.astype(np.int64), P)


def inv_vector(values: np.ndarray) -> np.ndarray:
    """Elementwise inverse by square-and-multiply on the whole array."""
    base = as_vector(values)
    if np.any(base == 0):
        raise DomainError("zero has no multiplicative inverse")
    result = np.ones_like(base)
    e = P - 2
    while e:
        if e & 1:
            result = result * base % P
        base = base * base % P
        e >>= 1
    return result
