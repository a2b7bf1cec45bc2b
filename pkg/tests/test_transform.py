import numpy as np
import pytest

from fftnc import field, transform
from fftnc.errors import DomainError
from fftnc.field import P


def big_int_dft(a):
    # independent oracle: python ints and the defining sum
    n = len(a)
    w = pow(3, 65536 // n, P)
    return [sum(int(a[j]) * pow(w, i * j, P) for j in range(n)) % P for i in range(n)]


def test_bit_reverse_examples():
    assert transform.bit_reverse(0, 5) == 0
    assert transform.bit_reverse(1, 3) == 4
    assert transform.bit_reverse(6, 3) == 3
    with pytest.raises(DomainError):
        transform.bit_reverse(8, 3)


@pytest.mark.parametrize("u", range(0, 11))
def test_bit_reverse_permutation_is_involution(u):
    perm = transform.bit_reverse_permutation(u)
    assert np.array_equal(perm[perm], np.arange(1 << u))
    assert perm.tolist() == [transform.bit_reverse(i, u) for i in range(1 << u)]


def test_dft_direct_examples():
    assert transform.dft_direct([1, 0, 0, 0, 0, 0, 0, 0]).tolist() == [1] * 8
    w = field.root_of_order(4)
    assert transform.dft_direct([0, 1, 0, 0]).tolist() == [1, w, w * w % P, w ** 3 % P]
    rng = np.random.default_rng(0)
    a = rng.integers(0, P, 8)
    assert transform.dft_direct(a).tolist() == big_int_dft(a)


def test_fnt_examples():
    assert transform.fnt_forward([5, 3]).tolist() == [8, 2]
    assert transform.fnt_forward([1] + [0] * 7).tolist() == [1] * 8
    assert transform.fnt_inverse([1, 1, 1, 1]).tolist() == [1, 0, 0, 0]
    assert transform.fnt_inverse([8, 2]).tolist() == [5, 3]


@pytest.mark.parametrize("n", [2, 4, 8, 16, 32, 64])
def test_forward_matches_oracles(n):
    rng = np.random.default_rng(n)
    for _ in range(20):
        a = rng.integers(0, P, n)
        fast = transform.fnt_forward(a)
        assert np.array_equal(fast, transform.dft_direct(a))
    assert fast.tolist() == big_int_dft(a)


@pytest.mark.parametrize("u", range(1, 13))
def test_roundtrip(u):
    rng = np.random.default_rng(u)
    a = rng.integers(0, P, 1 << u)
    assert np.array_equal(transform.fnt_inverse(transform.fnt_forward(a)), a)


def test_roundtrip_full_size():
    rng = np.random.default_rng(99)
    a = rng.integers(0, P, 1 << 16)
    assert np.array_equal(transform.fnt_inverse(transform.fnt_forward(a)), a)


def test_linearity():
    rng = np.random.default_rng(3)
    a, b = rng.integers(0, P, (2, 128))
    alpha, beta = (int(x) for x in rng.integers(0, P, 2))
    lhs = transform.fnt_forward((alpha * a + beta * b) % P)
    rhs = (alpha * transform.fnt_forward(a) + beta * transform.fnt_forward(b)) % P
    assert np.array_equal(lhs, rhs)


def test_columnwise():
    rng = np.random.default_rng(4)
    m = rng.integers(0, P, (16, 5))
    out = transform.fnt_forward(m)
    for j in range(5):
        assert np.array_equal(out[:, j], transform.fnt_forward(m[:, j]))
    assert np.array_equal(transform.fnt_inverse(out), m)


@pytest.mark.parametrize("bad", [[], [1], [1, 2, 3], [0] * 6])
def test_bad_lengths(bad):
    for fn in (transform.fnt_forward, transform.fnt_inverse, transform.dft_direct):
        with pytest.raises(DomainError):
            fn(bad)
