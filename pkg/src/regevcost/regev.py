"""Cost model and parameter selection for Regev's algorithm and its extended
form (EGR), using space-saving generalized Fibonacci exponentiation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from regevcost.errors import InvariantViolation
from regevcost.lattice import ReductionModel, log2_gamma
from regevcost.numtheory import ElementStyle, d_max, k_max

DEFAULT_R_CANDIDATES = range(1, 17)


@dataclass(frozen=True)
class CostBreakdown:
    per_run_ops: int
    overall_ops: int | None  # None when the run count is unbounded
    fib_part: int
    k_part: int


@dataclass(frozen=True)
class RegevParameterization:
    """Everything that determines the EGR multiplication count.

    ``K`` is K^(r), the number of generalized Fibonacci terms, and ``k`` the
    number of arbitrary (non-small) elements. ``m`` is None for perfect
    reduction, where the run count is unbounded.
    """

    n: int
    d: int
    m: int | None
    C: float
    log_d: int
    r: int
    s: int
    K: int
    k: int = 0
    w: int = 10
    style: ElementStyle = ElementStyle.EGR_PRIMES

    @property
    def unbounded_runs(self) -> bool:
        return self.m is None

    @property
    def cost(self) -> CostBreakdown:
        return per_run_ops(self)

    def validate(self) -> None:
        """Check the type invariants; raise InvariantViolation on failure."""
        problems = []
        if self.d > d_max(self.n, self.r, self.style):
            problems.append(f"d={self.d} exceeds d_max={d_max(self.n, self.r, self.style)}")
        if self.log_d != log_d_of(self.C, self.n, self.d):
            problems.append(f"log_d={self.log_d} != {log_d_of(self.C, self.n, self.d)}")
        if self.K != k_max(self.r, self.log_d):
            problems.append(f"K={self.K} != k_max={k_max(self.r, self.log_d)}")
        if self.C <= 0:
            problems.append(f"C={self.C} not positive")
        if not _is_power_of_two(self.s) or self.r % self.s:
            problems.append(f"s={self.s} is not a power of two dividing r={self.r}")
        if problems:
            raise InvariantViolation("; ".join(problems))


def c_lower_bound(n: int, d: int, m: int, log2g: float, kappa: float = 1.0) -> float:
    """Least C allowed by the post-processing bound, o(1) term dropped."""
    sqrt_n = math.sqrt(n)
    return kappa * sqrt_n / d + log2g * (m + d) / sqrt_n + sqrt_n / m


def quantize_above(value: float, decimals: int) -> float:
    """Smallest positive multiple of 10^-decimals strictly greater than ``value``."""
    scale = 10**decimals
    units = math.floor(value * scale) + 1
    return round(units / scale, decimals)


def min_c(n: int, d: int, m: int, log2g: float) -> float:
    return quantize_above(c_lower_bound(n, d, m, log2g), 2)


def post_processing_feasible(
    n: int, d: int, m: int, kappa: float, log2g: float, C: float
) -> bool:
    """Whether the post-processing requirement holds, evaluated in log2 form.

    Uses T = 2^(kappa n / d), R = 2^(C sqrt n), det L < 2^n and the GSA factor
    gamma^(m+d) in place of 2^((m+d)/2).
    """
    lhs = (
        0.5 * math.log2(m + d)
        + (m + d) * log2g
        + 0.5 * math.log2(m + 1)
        + kappa * n / d
    )
    rhs = 0.5 - math.log2(6 * d) + C * math.sqrt(n) - n / m
    return lhs < rhs


def log_d_of(C: float, n: int, d: int) -> int:
    """log2 D with D = 2^ceil(log2(2 sqrt(d) R)) and R = 2^(C sqrt n)."""
    if C <= 0:
        raise ValueError(f"C must be positive, got {C}")
    return math.ceil(C * math.sqrt(n) + math.log2(2 * math.sqrt(d)))


def _is_power_of_two(x: int) -> bool:
    return x > 0 and x & (x - 1) == 0


def f_cost(r: int, s: int) -> int:
    """Multiplications per generalized Fibonacci step, doubled for uncomputation."""
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    if not _is_power_of_two(s) or r % s:
        raise ValueError(f"s={s} must be a power of two dividing r={r}")
    return 2 * (3 * r // s + 4 * (s.bit_length() - 1) + 7)


def select_s(r: int) -> int:
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    if r == 1:
        return 1
    if _is_power_of_two(r):
        return r // 2
    return r & -r


def per_run_ops(p: RegevParameterization) -> CostBreakdown:
    fib_part = f_cost(p.r, p.s) * p.K
    k_part = 2 * -(-(p.k * p.log_d) // p.w) if p.k else 0
    per_run = fib_part + k_part
    overall = None if p.m is None else per_run * p.m
    return CostBreakdown(per_run, overall, fib_part, k_part)


def parameterize(
    n: int,
    d: int,
    m: int | None,
    C: float,
    r: int = 1,
    *,
    k: int = 0,
    w: int = 10,
    style: ElementStyle = ElementStyle.EGR_PRIMES,
    s: int | None = None,
) -> RegevParameterization:
    """Derive log D and K^(r) from (n, d, m, C, r) and validate the result."""
    log_d = log_d_of(C, n, d)
    p = RegevParameterization(
        n=n,
        d=d,
        m=m,
        C=C,
        log_d=log_d,
        r=r,
        s=select_s(r) if s is None else s,
        K=k_max(r, log_d),
        k=k,
        w=w,
        style=style,
    )
    p.validate()
    return p


def _finite_log2_gamma(model: ReductionModel) -> float:
    lg = log2_gamma(model)
    if not isinstance(lg, float):
        raise ValueError("perfect reduction has no finite run count; use perfect_params")
    return lg


def baseline_params(
    n: int,
    model: ReductionModel,
    *,
    r: int = 1,
    k: int = 0,
    w: int = 10,
    style: ElementStyle = ElementStyle.EGR_PRIMES,
) -> RegevParameterization:
    """Regev's original choice d = ceil(sqrt n), m = d + 4."""
    lg = _finite_log2_gamma(model)
    d = math.isqrt(n - 1) + 1
    m = d + 4
    return parameterize(n, d, m, min_c(n, d, m, lg), r, k=k, w=w, style=style)


def params_for_r(
    n: int,
    r: int,
    log2g: float,
    *,
    k: int = 0,
    w: int = 10,
    style: ElementStyle = ElementStyle.EGR_PRIMES,
) -> RegevParameterization:
    """Optimal d and m for a fixed r: m = round(sqrt(n/log2 gamma)), d capped by d_max."""
    m = round(math.sqrt(n / log2g))
    d = min(d_max(n, r, style), m)
    return parameterize(n, d, m, min_c(n, d, m, log2g), r, k=k, w=w, style=style)


def optimize(
    n: int,
    model: ReductionModel,
    style: ElementStyle = ElementStyle.EGR_PRIMES,
    k: int = 0,
    w: int = 10,
    r_candidates: Iterable[int] = DEFAULT_R_CANDIDATES,
) -> RegevParameterization:
    """Exhaustive search over r minimizing f(r, s) K^(r).

    Ties go to the smaller r, then the smaller log D.
    """
    lg = _finite_log2_gamma(model)
    candidates = [params_for_r(n, r, lg, k=k, w=w, style=style) for r in r_candidates]
    if not candidates:
        raise ValueError("empty r candidate range")
    best = min(candidates, key=lambda p: (p.cost.fib_part, p.r, p.log_d))
    if best.d > d_max(n, best.r, style):
        raise InvariantViolation(f"optimizer returned d={best.d} above d_max")
    return best


def perfect_params(
    n: int,
    style: ElementStyle = ElementStyle.EGR_PRIMES,
    *,
    k: int = 0,
    w: int = 10,
) -> RegevParameterization:
    """Perfect reduction: gamma -> 1, m unbounded, C just above sqrt(n)/d (0.001 steps)."""
    d = d_max(n, 1, style)
    C = quantize_above(math.sqrt(n) / d, 3)
    return parameterize(n, d, None, C, 1, k=k, w=w, style=style)


def advantage(regev_ops: int, shor_ops: int) -> Fraction:
    """Exact ratio regev_ops / shor_ops."""
    if shor_ops <= 0:
        raise ValueError("Shor-side operation count must be positive")
    return Fraction(regev_ops, shor_ops)

