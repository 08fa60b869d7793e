"""Classical emulation of exponentiation schedules against a counting
multiplication oracle.

The oracle computes (t + u*v) mod N and counts calls; it is the only operation
that costs anything. Register loads from classical lookup tables, copies and
frees are free, as in the cost metric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from regevcost.errors import InvariantViolation, NonInvertibleError
from regevcost.numtheory import fib_decompose, gen_fib, k_max


class CountingMultOracle:
    """(t, u, v) -> (t + u v) mod N, counting invocations."""

    def __init__(self, modulus: int):
        if modulus < 2:
            raise ValueError(f"modulus must be at least 2, got {modulus}")
        self.modulus = modulus
        self.call_count = 0

    def require_invertible(self, x: int) -> None:
        if math.gcd(x, self.modulus) != 1:
            raise NonInvertibleError(f"{x} is not invertible modulo {self.modulus}")

    def __call__(self, t: int, u: int, v: int) -> int:
        self.require_invertible(u)
        self.require_invertible(v)
        self.call_count += 1
        return (t + u * v) % self.modulus


class _Registers:
    """n-bit value slots; tracks the peak number simultaneously live."""

    def __init__(self) -> None:
        self._values: dict[int, int] = {}
        self._next = 0
        self.peak = 0

    def alloc(self, value: int = 0) -> int:
        slot = self._next
        self._next += 1
        self._values[slot] = value
        self.peak = max(self.peak, len(self._values))
        return slot

    def free(self, slot: int) -> None:
        del self._values[slot]

    def __getitem__(self, slot: int) -> int:
        return self._values[slot]

    def __setitem__(self, slot: int, value: int) -> None:
        self._values[slot] = value


@dataclass(frozen=True)
class ScheduleResult:
    result: int
    calls: int
    peak_registers: int


def binary_schedule_calls(l: int) -> int:
    return 4 * (l - 1)


def ehs_schedule_calls(n_e: int, w: int) -> int:
    return 2 * -(-n_e // w)


def emulate_binary_schedule(c_values: Sequence[int], modulus: int) -> ScheduleResult:
    """prod_j c_j^(2^j) mod N by square-and-multiply into fresh registers.

    Forward pass: load c_{l-1}, then for j = l-2 .. 0 square the last
    register into a fresh one and multiply it by c_j. The result is copied
    out and the forward pass undone in reverse, so 4(l-1) calls in total.
    """
    l = len(c_values)
    if l < 2:
        raise ValueError(f"need at least two values, got {l}")
    oracle = CountingMultOracle(modulus)
    N = modulus
    cs = [c % N for c in c_values]
    regs = _Registers()

    chain = [regs.alloc(cs[-1])]
    for j in range(l - 2, -1, -1):
        prev = regs[chain[-1]]
        slot = regs.alloc(0)
        regs[slot] = oracle(0, prev, prev)
        # In-place multiplication by an invertible operand: one call.
        regs[slot] = oracle(0, regs[slot], cs[j])
        chain.append(slot)

    out = regs.alloc(regs[chain[-1]])

    for j in range(0, l - 1):
        slot = chain.pop()
        prev = regs[chain[-1]]
        regs[slot] = oracle(0, regs[slot], pow(cs[j], -1, N))
        regs[slot] = oracle(regs[slot], prev, (-prev) % N)
        if regs[slot] != 0:
            raise InvariantViolation(f"register for c_{j} not cleared during uncomputation")
        regs.free(slot)
    regs.free(chain.pop())

    result = ScheduleResult(regs[out], oracle.call_count, regs.peak)
    if result.calls != binary_schedule_calls(l):
        raise InvariantViolation(f"binary schedule made {result.calls} calls, expected {4 * (l - 1)}")
    return result


def emulate_ehs_schedule(
    v_values: Sequence[int], control_bits: Sequence[int], modulus: int, w: int = 1
) -> ScheduleResult:
    """prod_i v_i^(c_i) mod N with windowed controlled multiplications.

    Each window of ``w`` control bits selects a classically precomputed product
    (a lookup, free). The accumulator is multiplied by it into a fresh register,
    and the old accumulator is cleared by adding fresh * (-product^-1): two
    calls per window.
    """
    if len(v_values) != len(control_bits):
        raise ValueError("v_values and control_bits differ in length")
    if w < 1:
        raise ValueError(f"window size must be positive, got {w}")
    oracle = CountingMultOracle(modulus)
    N = modulus
    vs = [v % N for v in v_values]
    for v in vs:
        oracle.require_invertible(v)
    regs = _Registers()

    acc = regs.alloc(1)
    n_e = len(vs)
    for start in range(0, n_e, w):
        product = 1
        for v, bit in zip(vs[start : start + w], control_bits[start : start + w]):
            if bit:
                product = product * v % N
        load = regs.alloc(product)
        fresh = regs.alloc(0)
        regs[fresh] = oracle(0, regs[acc], regs[load])
        regs[load] = (-pow(product, -1, N)) % N
        regs[acc] = oracle(regs[acc], regs[load], regs[fresh])
        if regs[acc] != 0:
            raise InvariantViolation("accumulator not cleared after windowed multiplication")
        regs.free(load)
        regs.free(acc)
        acc = fresh

    result = ScheduleResult(regs[acc], oracle.call_count, regs.peak)
    if result.calls != ehs_schedule_calls(n_e, w):
        raise InvariantViolation(f"EHS schedule made {result.calls} calls")
    return result


def verify_fib_product_identity(
    a_values: Sequence[int], z_values: Sequence[int], r: int, D: int, modulus: int
) -> bool:
    """Check prod a_i^(z_i + D/2) == prod_j c_j^(G_j) mod N, c_j = prod a_i^(z_ij).

    Each exponent z_i + D/2 is decomposed in the generalized Fibonacci basis
    with K = K^(r) terms; both sides are then computed directly.
    """
    if D < 2 or D & (D - 1):
        raise ValueError(f"D must be a power of two >= 2, got {D}")
    if len(a_values) != len(z_values):
        raise ValueError("a_values and z_values differ in length")
    N = modulus
    for a in a_values:
        if math.gcd(a, N) != 1:
            raise NonInvertibleError(f"{a} is not invertible modulo {N}")
    K = k_max(r, D.bit_length() - 1)
    g = gen_fib(r, K + 1)

    exponents = [z + D // 2 for z in z_values]
    for z, x in zip(z_values, exponents):
        if not 0 <= x < D:
            raise ValueError(f"z={z} outside [-D/2, D/2) for D={D}")
    digits = [fib_decompose(x, r, K) for x in exponents]

    lhs = 1
    for a, x in zip(a_values, exponents):
        lhs = lhs * pow(a, x, N) % N

    rhs = 1
    for j in range(1, K + 1):
        c_j = 1
        for a, z in zip(a_values, digits):
            c_j = c_j * pow(a, z[j - 1], N) % N
        rhs = rhs * pow(c_j, g[j], N) % N
    return lhs == rhs
