import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from regevcost.errors import InvariantViolation
from regevcost.numtheory import (
    ElementStyle,
    d_max,
    element_product,
    fib_decompose,
    fib_decompose_batch,
    fib_reconstruct,
    fib_reconstruct_batch,
    first_primes,
    gen_fib,
    k_max,
)


def trial_division_primes(count):
    out, x = [], 2
    while len(out) < count:
        if all(x % p for p in out if p * p <= x):
            out.append(x)
        x += 1
    return out


def test_first_primes():
    assert first_primes(1) == [2]
    assert first_primes(5) == [2, 3, 5, 7, 11]
    assert first_primes(233)[-1] == 1471
    assert first_primes(800) == trial_division_primes(800)


@pytest.mark.parametrize(
    "n, r, style, expected",
    [
        (2048, 4, ElementStyle.EGR_PRIMES, 75),
        (2048, 2, ElementStyle.EGR_PRIMES, 131),
        (2048, 1, ElementStyle.REGEV_SQUARED_PRIMES, 131),
        (2048, 1, ElementStyle.EGR_PRIMES, 233),
        (8192, 1, ElementStyle.EGR_PRIMES, 758),
    ],
)
def test_d_max_values(n, r, style, expected):
    assert d_max(n, r, style) == expected


@pytest.mark.parametrize("n", [100, 2048, 3072, 4096, 6144, 8192])
@pytest.mark.parametrize("r", [1, 2, 3, 4, 8, 16])
@pytest.mark.parametrize("style", list(ElementStyle))
def test_d_max_boundary(n, r, style):
    d = d_max(n, r, style)
    assert element_product(d, r, style) < 2**n <= element_product(d + 1, r, style)


def test_d_max_rejects_small_n():
    with pytest.raises(ValueError):
        d_max(8, 1)
    # 2^16 itself is not below 2^16, so no d is admissible.
    with pytest.raises(ValueError):
        d_max(16, 16)
    assert d_max(16, 1) == 6


def test_gen_fib_r1_is_fibonacci():
    a, b = 1, 1  # F_1, F_2
    fib = [None, a, b]
    while len(fib) <= 202:
        fib.append(fib[-1] + fib[-2])
    g = gen_fib(1, 201)
    assert all(g[j] == fib[j + 1] for j in range(1, 201))


@pytest.mark.parametrize("r", [1, 2, 3, 7])
def test_gen_fib_strictly_increasing(r):
    g = gen_fib(r, 60)
    assert g[0] == g[1] == 1
    assert all(a < b for a, b in zip(g[1:], g[2:]))


@pytest.mark.parametrize("r, log_d, expected", [(1, 96, 138), (1, 21, 30), (4, 59, 29), (2, 35, 28), (1, 51, 74)])
def test_k_max(r, log_d, expected):
    assert k_max(r, log_d) == expected


@given(st.integers(1, 16), st.integers(1, 400))
def test_k_max_postcondition(r, log_d):
    k = k_max(r, log_d)
    g = gen_fib(r, k + 2)
    assert g[k] <= 2**log_d < g[k + 1]


def test_fib_decompose_examples():
    assert fib_decompose(0, 1, 10) == [0] * 10
    # G_1..G_4 = 1, 2, 3, 5 for r = 1, so 4 = G_3 + G_1.
    assert fib_decompose(4, 1, 4) == [1, 0, 1, 0]
    assert fib_reconstruct([1, 0, 1, 0], 1) == 4
    assert fib_reconstruct([0] * 5, 3) == 0


@pytest.mark.parametrize("r, k", [(1, 12), (2, 12), (3, 9), (4, 9)])
def test_fib_round_trip_exhaustive(r, k):
    g = gen_fib(r, k + 2)
    for x in range(g[k + 1]):
        digits = fib_decompose(x, r, k)
        assert max(digits) <= r
        assert fib_reconstruct(digits, r) == x


@settings(max_examples=2000)
@given(st.sampled_from([1, 2, 4]), st.integers(1, 80), st.data())
def test_fib_round_trip_random(r, k, data):
    g = gen_fib(r, k + 2)
    x = data.draw(st.integers(0, g[k + 1] - 1))
    assert fib_reconstruct(fib_decompose(x, r, k), r) == x


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_batch_decomposition_agrees_with_scalar(r):
    k = 12
    g = gen_fib(r, k + 2)
    xs = np.array(sorted({0, g[k + 1] - 1, *range(0, g[k + 1], max(1, g[k + 1] // 5000))}), dtype=np.int64)
    digits = fib_decompose_batch(xs, r, k)
    for x, row in zip(xs.tolist(), digits.tolist()):
        assert row == fib_decompose(x, r, k)
    assert np.array_equal(fib_reconstruct_batch(digits, r), xs)


def test_batch_range_error():
    with pytest.raises(ValueError):
        fib_decompose_batch(np.array([0, gen_fib(2, 7)[6]]), 2, 5)


def test_fib_decompose_range_errors():
    g = gen_fib(2, 7)
    with pytest.raises(ValueError):
        fib_decompose(g[6], 2, 5)
    with pytest.raises(ValueError):
        fib_decompose(-1, 2, 5)


def test_fib_reconstruct_rejects_large_digit():
    with pytest.raises(ValueError):
        fib_reconstruct([0, 3], 2)


def test_invariant_violation_is_assertion():
    assert issubclass(InvariantViolation, AssertionError)
