import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fftnc import field
from fftnc.errors import DomainError
from fftnc.field import P

elem = st.integers(min_value=0, max_value=P - 1)
nonzero = st.integers(min_value=1, max_value=P - 1)


@pytest.mark.parametrize("a, b, want", [(65536, 1, 0), (5, 0, 5), (40000, 40000, 14463)])
def test_add_examples(a, b, want):
    assert field.add(a, b) == want


@pytest.mark.parametrize("a, b, want", [(0, 1, 65536), (7, 7, 0), (3, 5, 65535)])
def test_sub_examples(a, b, want):
    assert field.sub(a, b) == want


@pytest.mark.parametrize("a, b, want", [(256, 256, 65536), (1, 12345, 12345), (65536, 65536, 1)])
def test_mul_examples(a, b, want):
    assert field.mul(a, b) == want


@pytest.mark.parametrize("a, want", [(1, 1), (2, 32769), (65536, 65536)])
def test_inv_examples(a, want):
    assert field.inv(a) == want


def test_inv_zero_rejected():
    with pytest.raises(DomainError):
        field.inv(0)


def test_pow_examples():
    assert all(field.pow(x, 0) == 1 for x in (0, 1, 2, 65536))
    assert field.pow(256, 2) == 65536
    assert field.pow(3, 65536) == 1
    with pytest.raises(DomainError):
        field.pow(3, -1)


def test_root_of_order_examples():
    assert field.root_of_order(2) == 65536
    w4 = field.root_of_order(4)
    assert field.pow(w4, 2) == 65536 and w4 != 65536
    assert field.root_of_order(65536) == 3
    assert field.pow(3, 32768) != 1


@pytest.mark.parametrize("u", range(1, 17))
def test_root_orders(u):
    w = field.root_of_order(1 << u)
    assert field.pow(w, 1 << u) == 1
    assert field.pow(w, 1 << (u - 1)) == P - 1


@pytest.mark.parametrize("bad", [0, 1, 3, 6, 1 << 17, -4])
def test_root_of_order_rejects(bad):
    with pytest.raises(DomainError):
        field.root_of_order(bad)


def test_generator_is_primitive():
    # 65536 = 2**16, so 3 is primitive iff 3**32768 != 1
    assert len(set(field.GENERATOR_POWERS.tolist())) == P - 1


@settings(max_examples=10_000, deadline=None)
@given(elem, elem, elem)
def test_field_axioms(a, b, c):
    add, mul = field.add, field.mul
    assert add(a, b) == add(b, a) and mul(a, b) == mul(b, a)
    assert add(add(a, b), c) == add(a, add(b, c))
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
    assert add(a, 0) == a and mul(a, 1) == a
    assert add(a, field.neg(a)) == 0
    if a:
        assert mul(a, field.inv(a)) == 1


@settings(max_examples=2000, deadline=None)
@given(st.integers(-10**30, 10**30), st.integers(-10**30, 10**30), st.integers(0, 10**6))
def test_wide_integer_oracle(a, b, e):
    # python ints are the oracle: no fixed-width arithmetic anywhere
    assert field.add(a, b) == (a + b) % P
    assert field.sub(a, b) == (a - b) % P
    assert field.mul(a, b) == (a * b) % P
    r = 1
    base, k = a % P, e
    while k:
        if k & 1:
            r = r * base % P
        base = base * base % P
        k >>= 1
    assert field.pow(a, e) == r


def test_results_canonical():
    rng = np.random.default_rng(1)
    for a, b in rng.integers(0, P, size=(500, 2)).tolist():
        for r in (field.add(a, b), field.sub(a, b), field.mul(a, b)):
            assert 0 <= r <= 65536


def test_vector_helpers():
    rng = np.random.default_rng(2)
    v = rng.integers(1, P, size=1000)
    inv = field.inv_vector(v)
    assert np.all(v * inv % P == 1)
    assert field.as_vector([-1, P, P + 3]).tolist() == [P - 1, 0, 3]
    with pytest.raises(DomainError):
        field.as_vector([1.5])
    with pytest.raises(DomainError):
        field.inv_vector(np.array([3, 0]))
    w = field.root_of_order(16)
    assert field.root_powers(16).tolist() == [field.pow(w, i) for i in range(16)]
