import random

import pytest
from hypothesis import given, settings, strategies as st

from regevcost.errors import NonInvertibleError
from regevcost.numtheory import first_primes
from regevcost.schedules import (
    CountingMultOracle,
    emulate_binary_schedule,
    emulate_ehs_schedule,
    verify_fib_product_identity,
)

TOY_PRIMES = [101, 10007, 65537, 2**31 - 1, 4294967291]


def direct_binary(cs, N):
    out = 1
    for j, c in enumerate(cs):
        out = out * pow(c, 2**j, N) % N
    return out


def direct_product(vs, bits, N):
    out = 1
    for v, b in zip(vs, bits):
        if b:
            out = out * v % N
    return out


def test_oracle_counts_and_computes():
    o = CountingMultOracle(101)
    assert o(5, 3, 4) == 17
    assert o(100, 10, 10) == 99
    assert o.call_count == 2
    with pytest.raises(NonInvertibleError):
        o(0, 0, 3)
    with pytest.raises(ValueError):
        CountingMultOracle(1)


def test_binary_smallest_case():
    res = emulate_binary_schedule([7, 12], 101)
    assert res.result == 7 * 12**2 % 101
    assert (res.calls, res.peak_registers) == (4, 3)


def test_binary_identity_values():
    res = emulate_binary_schedule([1] * 9, 10007)
    assert (res.result, res.calls, res.peak_registers) == (1, 32, 10)


def test_binary_random_l8():
    rng = random.Random(1)
    N = 2**16 + 1
    cs = [rng.randrange(1, N) for _ in range(8)]
    res = emulate_binary_schedule(cs, N)
    assert res.result == direct_binary(cs, N) and res.calls == 28 and res.peak_registers == 9


def test_binary_rejects_non_invertible():
    with pytest.raises(NonInvertibleError):
        emulate_binary_schedule([3, 101, 5], 101)
    with pytest.raises(ValueError):
        emulate_binary_schedule([3], 101)


@settings(max_examples=300)
@given(st.sampled_from(TOY_PRIMES), st.integers(2, 40), st.randoms(use_true_random=False))
def test_binary_property(N, l, rng):
    cs = [rng.randrange(1, N) for _ in range(l)]
    res = emulate_binary_schedule(cs, N)
    assert res.result == direct_binary(cs, N)
    assert res.calls == 4 * (l - 1) and res.peak_registers == l + 1


def test_ehs_all_zero_bits():
    res = emulate_ehs_schedule([3, 5, 7, 11, 13], [0] * 5, 10007, w=2)
    assert (res.result, res.calls) == (1, 6)


def test_ehs_w1_random():
    rng = random.Random(7)
    N = 10007
    vs = [rng.randrange(1, N) for _ in range(16)]
    bits = [rng.randrange(2) for _ in range(16)]
    res = emulate_ehs_schedule(vs, bits, N, w=1)
    assert res.result == direct_product(vs, bits, N) and res.calls == 32


def test_ehs_table2_shape():
    n_e = 1023 + 2 * 61
    assert n_e == 1145
    rng = random.Random(0)
    vs = [rng.randrange(1, 65537) for _ in range(n_e)]
    bits = [rng.randrange(2) for _ in range(n_e)]
    res = emulate_ehs_schedule(vs, bits, 65537, w=10)
    assert res.calls == 230 and res.result == direct_product(vs, bits, 65537)


def test_ehs_errors():
    with pytest.raises(NonInvertibleError):
        emulate_ehs_schedule([3, 202], [1, 1], 101)
    with pytest.raises(ValueError):
        emulate_ehs_schedule([3], [1, 0], 101)
    with pytest.raises(ValueError):
        emulate_ehs_schedule([3], [1], 101, w=0)


@settings(max_examples=300)
@given(st.sampled_from(TOY_PRIMES), st.integers(1, 60), st.integers(1, 12), st.randoms(use_true_random=False))
def test_ehs_property(N, n_e, w, rng):
    vs = [rng.randrange(1, N) for _ in range(n_e)]
    bits = [rng.randrange(2) for _ in range(n_e)]
    res = emulate_ehs_schedule(vs, bits, N, w)
    assert res.result == direct_product(vs, bits, N)
    assert res.calls == 2 * -(-n_e // w)


def test_fib_identity_examples():
    assert verify_fib_product_identity([2], [-32], 1, 64, 10007)
    assert verify_fib_product_identity([2, 3, 5], [-7, 0, 31], 1, 64, 10007)
    rng = random.Random(3)
    a = first_primes(3)
    z = [rng.randrange(-128, 128) for _ in range(3)]
    assert verify_fib_product_identity(a, z, 4, 256, 65537)


def test_fib_identity_errors():
    with pytest.raises(ValueError):
        verify_fib_product_identity([2], [0], 1, 48, 101)
    with pytest.raises(ValueError):
        verify_fib_product_identity([2], [32], 1, 64, 101)
    with pytest.raises(NonInvertibleError):
        verify_fib_product_identity([101], [0], 1, 64, 101)


@settings(max_examples=200)
@given(st.integers(1, 5), st.integers(1, 4), st.integers(1, 12), st.randoms(use_true_random=False))
def test_fib_identity_property(d, r, log_d, rng):
    D = 2**log_d
    N = rng.choice(TOY_PRIMES[1:])
    a = [rng.randrange(2, N) for _ in range(d)]
    z = [rng.randrange(-D // 2, D // 2) for _ in range(d)]
    assert verify_fib_product_identity(a, z, r, D, N)
