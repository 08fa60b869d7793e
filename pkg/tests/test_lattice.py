import math

import mpmath
import pytest

from regevcost.errors import ConfigurationError
from regevcost.lattice import (
    PERFECT_LIMIT,
    PRESETS,
    ReductionKind,
    ReductionModel,
    chen_delta,
    gamma_from_delta,
    log2_gamma,
    parse_reduction,
    root_hermite,
)


def chen_oracle(beta: int) -> mpmath.mpf:
    mpmath.mp.dps = 40
    b = mpmath.mpf(beta)
    return (b / (2 * mpmath.pi * mpmath.e) * (mpmath.pi * b) ** (1 / b)) ** (1 / (2 * (b - 1)))


def test_lll_delta():
    assert root_hermite(ReductionModel.lll()) == 1.0219


def test_bkz40_anchor():
    assert root_hermite(ReductionModel.bkz(40)) == pytest.approx(1.01295, abs=1e-12)


def test_bkz200_matches_high_precision_chen():
    got = root_hermite(ReductionModel.bkz(200))
    assert abs(got - 1.006283) < 1e-6
    assert abs(got - float(chen_oracle(200))) < 1e-12


def test_small_blocks_interpolate_between_anchors():
    lo, hi = root_hermite(ReductionModel.bkz(10)), root_hermite(ReductionModel.bkz(15))
    mid = root_hermite(ReductionModel.bkz(12))
    assert hi < mid < lo
    assert mid == pytest.approx(lo + (hi - lo) * 2 / 5)


def test_perfect_delta_undefined():
    with pytest.raises(ValueError, match="perfect"):
        root_hermite(ReductionModel.perfect())


@pytest.mark.parametrize("delta, gamma", [(1.0219, 1.04428), (1.006283, 1.012605)])
def test_gamma_squares(delta, gamma):
    assert gamma_from_delta(delta) == pytest.approx(gamma, abs=1e-5)


@pytest.mark.parametrize("bad", [1.0, 0.99, -3.0])
def test_gamma_rejects_delta_not_above_one(bad):
    with pytest.raises(ValueError):
        gamma_from_delta(bad)


def test_log2_gamma_values():
    assert log2_gamma(ReductionModel.lll()) == pytest.approx(0.062510, abs=1e-5)
    assert log2_gamma(ReductionModel.bkz(200)) == pytest.approx(0.018071, abs=1e-5)
    assert log2_gamma(ReductionModel.perfect()) is PERFECT_LIMIT


def test_delta_strictly_decreasing_above_40():
    values = [root_hermite(ReductionModel.bkz(b)) for b in range(40, 401, 20)]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_gamma_above_one_for_all_finite_models():
    models = [ReductionModel.lll(), PRESETS["bkz200-calibrated"]]
    models += [ReductionModel.bkz(b) for b in range(2, 500, 7)]
    for model in models:
        assert gamma_from_delta(root_hermite(model)) > 1


@pytest.mark.xfail(strict=True, reason="anchor 1.01295 at 40 and Chen at 41 differ by 4.5e-4")
def test_no_jump_at_block_40():
    jump = abs(root_hermite(ReductionModel.bkz(40)) - root_hermite(ReductionModel.bkz(41)))
    assert jump <= 1e-4


def test_preset_reproduces_bkz200_run_counts():
    lg = log2_gamma(PRESETS["bkz200-calibrated"])
    ms = [round(math.sqrt(n / lg)) for n in (2048, 3072, 4096, 6144, 8192)]
    assert ms == [342, 419, 483, 592, 683]


@pytest.mark.parametrize(
    "text, kind",
    [("lll", ReductionKind.LLL), ("BKZ:60", ReductionKind.BKZ), ("perfect", ReductionKind.PERFECT),
     ("delta:1.01", ReductionKind.EXPLICIT_DELTA), ("paper-bkz200", ReductionKind.EXPLICIT_DELTA), ("bkz200-calibrated", ReductionKind.EXPLICIT_DELTA)],
)
def test_parse_reduction(text, kind):
    assert parse_reduction(text).kind is kind


@pytest.mark.parametrize("text", ["bkz", "bkz:x", "delta:0.9", "bkz:1", "hkz"])
def test_parse_reduction_rejects(text):
    with pytest.raises(ConfigurationError):
        parse_reduction(text)


def test_model_validation():
    with pytest.raises(ValueError):
        ReductionModel.bkz(1)
    with pytest.raises(ValueError):
        ReductionModel.explicit(1.0)


def test_chen_function_matches_oracle_on_range():
    for b in (41, 100, 250, 400):
        assert chen_delta(b) == pytest.approx(float(chen_oracle(b)), rel=1e-13)
