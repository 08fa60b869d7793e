"""Exact integer helpers: small primes, the dimension bound d_max, and
generalized Fibonacci numbers with digit decomposition in their basis."""

from __future__ import annotations

import math
from enum import Enum
from functools import lru_cache
from typing import Sequence

import numpy as np

from regevcost.errors import InvariantViolation


class ElementStyle(Enum):
    """How the small elements a_1, ..., a_d are chosen."""

    EGR_PRIMES = "egr"  # a_i = p_i
    REGEV_SQUARED_PRIMES = "regev"  # a_i = p_i^2

    @property
    def exponent(self) -> int:
        return 1 if self is ElementStyle.EGR_PRIMES else 2


def _prime_bound(count: int) -> int:
    # Rosser: p_k < k (ln k + ln ln k) for k >= 6.
    if count < 6:
        return 15
    return int(count * (math.log(count) + math.log(math.log(count)))) + 1


@lru_cache(maxsize=None)
def _primes_below(limit: int) -> tuple[int, ...]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def first_primes(d: int) -> list[int]:
    """The first ``d`` primes in increasing order."""
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    primes = _primes_below(_prime_bound(d))
    assert len(primes) >= d
    return list(primes[:d])


def element_product(d: int, r: int, style: ElementStyle) -> int:
    """prod_{i<=d} a_i^r with a_i = p_i or p_i^2 depending on ``style``."""
    e = style.exponent * r
    out = 1
    for p in first_primes(d):
        out *= p**e
    return out


@lru_cache(maxsize=None)
def d_max(n: int, r: int, style: ElementStyle = ElementStyle.EGR_PRIMES) -> int:
    """Greatest d such that prod_{i<=d} a_i^r < 2^n.

    Beyond this point the partial products c_j no longer fit below an n-bit
    modulus and their cost can no longer be neglected.
    """
    if n < 16:
        raise ValueError(f"n must be at least 16, got {n}")
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    bound = 1 << n
    e = style.exponent * r
    # Enough primes: the product of the first k primes exceeds 2^k.
    count = 16
    while True:
        primes = first_primes(count)
        prod = 1
        for i, p in enumerate(primes):
            prod *= p**e
            if prod >= bound:
                if i == 0:
                    raise ValueError(f"no admissible d for n={n}, r={r}")
                return i
        count *= 2


@lru_cache(maxsize=64)
def _gen_fib_cached(r: int, length: int) -> tuple[int, ...]:
    values = [1, 1]
    while len(values) < length:
        values.append(r * values[-1] + values[-2])
    return tuple(values[:length])


def gen_fib(r: int, length: int) -> tuple[int, ...]:
    """G_0, ..., G_{length-1} with G_0 = G_1 = 1 and G_j = r G_{j-1} + G_{j-2}."""
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    return _gen_fib_cached(r, max(length, 0))


def k_max(r: int, log_d: int) -> int:
    """Largest K with G_K^(r) <= 2^log_d."""
    if log_d < 1:
        raise ValueError(f"log_d must be positive, got {log_d}")
    bound = 1 << log_d
    g_prev, g = 1, 1  # G_0, G_1
    k = 1
    while True:
        g_next = r * g + g_prev
        if g_next > bound:
            break
        g_prev, g = g, g_next
        k += 1
    if not (g <= bound < r * g + g_prev):
        raise InvariantViolation(f"k_max postcondition failed for r={r}, log_d={log_d}")
    return k


def fib_decompose(x: int, r: int, k: int) -> list[int]:
    """Digits (z_1, ..., z_K) in {0..r} with sum z_j G_j^(r) == x.

    Greedy from the top index down; total on 0 <= x < G_{K+1}.
    """
    if k < 1:
        raise ValueError(f"K must be positive, got {k}")
    g = gen_fib(r, k + 2)
    if not 0 <= x < g[k + 1]:
        raise ValueError(f"x={x} outside [0, G_{k + 1}) = [0, {g[k + 1]}) for r={r}")
    digits = [0] * k
    rem = x
    for j in range(k, 0, -1):
        z = min(r, rem // g[j])
        digits[j - 1] = z
        rem -= z * g[j]
    if rem:
        raise InvariantViolation(f"greedy decomposition left remainder {rem}")
    return digits


def fib_reconstruct(digits: Sequence[int], r: int) -> int:
    """sum_j digits[j-1] * G_j^(r)."""
    g = gen_fib(r, len(digits) + 1)
    total = 0
    for j, z in enumerate(digits, start=1):
        if not 0 <= z <= r:
            raise ValueError(f"digit {z} at position {j} outside [0, {r}]")
        total += z * g[j]
    return total


def fib_decompose_batch(xs: np.ndarray, r: int, k: int) -> np.ndarray:
    """Vectorized ``fib_decompose``: row i holds the digits of ``xs[i]``.

    Same greedy rule. Works in int32 when G_{K+1} allows it, else int64.
    """
    if k < 1:
        raise ValueError(f"K must be positive, got {k}")
    g = gen_fib(r, k + 2)
    if g[k + 1] >= 1 << 63:
        raise ValueError(f"G_{k + 1} does not fit in int64")
    dtype = np.int32 if g[k + 1] < 1 << 31 else np.int64
    rem = np.array(xs, dtype=dtype)
    if rem.size and (rem.min() < 0 or rem.max() >= g[k + 1]):
        raise ValueError(f"values outside [0, G_{k + 1}) = [0, {g[k + 1]}) for r={r}")
    # Column-major so each digit position is a contiguous slice.
    digits = np.empty((k, rem.size), dtype=dtype).T
    for j in range(k, 0, -1):
        gj = dtype(g[j])
        z = np.minimum(rem // gj, dtype(r))
        digits[:, j - 1] = z
        rem -= z * gj
    if rem.any():
        raise InvariantViolation("greedy decomposition left a remainder")
    return digits


def fib_reconstruct_batch(digits: np.ndarray, r: int) -> np.ndarray:
    digits = np.asarray(digits)
    if digits.size and (digits.min() < 0 or digits.max() > r):
        raise ValueError(f"digits outside [0, {r}]")
    g = gen_fib(r, digits.shape[1] + 2)
    dtype = np.int32 if g[-1] < 1 << 31 else np.int64
    total = np.zeros(digits.shape[0], dtype=dtype)
    for j in range(1, digits.shape[1] + 1):
        total += digits[:, j - 1].astype(dtype, copy=False) * dtype(g[j])
    return total
