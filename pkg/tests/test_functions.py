import math

import numpy as np
import pytest

from hermquad.functions import (
    DerivativeMismatch,
    FunctionSpec,
    get,
    registry,
    validate_derivatives,
)

SMOOTH = ["cubic", "exp", "sin2pi", "log1p", "quartic"]


def interior_points(spec, count, seed):
    rng = np.random.default_rng(seed)
    lo, hi = spec.sample_interval
    pts = []
    while len(pts) < count:
        p = float(rng.uniform(lo, hi))
        if lo < p < hi and all(abs(p - k) >= spec.kink_margin for k in spec.kinks):
            pts.append(p)
    return pts


def test_registry_contents():
    names = {s.name for s in registry()}
    assert set(SMOOTH) | {"abs32"} <= names
    assert len(registry()) >= 6


@pytest.mark.parametrize("alias, name", [
    ("e^x", "exp"), ("x^3", "cubic"), ("log(x+1)", "log1p"), ("|x|^(3/2)", "abs32"),
])
def test_aliases(alias, name):
    assert get(alias).name == name


def test_unknown_name():
    with pytest.raises(KeyError):
        get("tanh")


def test_exp_derivatives_all_exp():
    f = get("exp")
    xs = np.linspace(-1, 1, 7)
    for k in range(6):
        np.testing.assert_array_equal(f.derivative(k)(xs), np.exp(xs))


def test_quartic_second_derivative():
    xs = np.linspace(-2, 2, 9)
    np.testing.assert_allclose(get("quartic").derivative(2)(xs), 12 * xs**2 - 12 * xs + 2, rtol=1e-14)


def test_cubic_third_derivative_constant():
    f = get("cubic")
    np.testing.assert_array_equal(f.derivative(3)(np.array([-1.0, 0.3, 2.0])), 6.0)
    assert validate_derivatives(f, 3, [0.1, 0.5, 0.9]).passed


def test_sin2pi_second_derivative_value():
    f = get("sin2pi")
    report = validate_derivatives(f, 2, [0.3])
    assert report.passed
    assert f.derivative(2)(0.3) == pytest.approx(-4 * math.pi**2 * math.sin(0.6 * math.pi), rel=1e-14)


@pytest.mark.parametrize("spec", registry(), ids=lambda s: s.name)
def test_all_orders_validate(spec):
    top = min(spec.max_smooth_order or 6, 6)
    for order in range(1, top + 1):
        report = validate_derivatives(spec, order, interior_points(spec, 32, order))
        assert report.passed, report


def test_wrong_derivative_detected():
    bad = FunctionSpec(
        name="bad", label="bad", domain=(-10.0, 10.0),
        nth=lambda k: np.sin if k == 0 else (lambda x: np.cos(x) * 1.001),
    )
    with pytest.raises(DerivativeMismatch):
        validate_derivatives(bad, 1, [0.2, 0.4])
    assert not validate_derivatives(bad, 1, [0.2], raise_on_failure=False).passed


def test_log_domain_guard():
    f = get("log1p")
    with pytest.raises(ValueError):
        f(-1.0)
    with pytest.raises(ValueError):
        f.derivative(2)(np.array([0.0, -1.5]))
    assert f(0.0) == 0.0


def test_limited_smoothness_entries():
    abs32 = get("abs32")
    assert abs32.max_smooth_order == 1
    assert abs32.kinks == (0.0,)
    with pytest.raises(ValueError):
        abs32.derivative(2)
    # the second derivative blows up at the kink
    assert math.isinf(abs32.nth(2)(np.array([0.0]))[0])
    assert get("pow32").max_smooth_order == 1


def test_points_near_kink_rejected():
    with pytest.raises(ValueError):
        validate_derivatives(get("abs32"), 1, [1e-5])


def test_kink_outside_domain_rejected():
    with pytest.raises(ValueError):
        FunctionSpec(name="k", label="k", domain=(0.0, 1.0), nth=lambda k: np.abs, kinks=(2.0,))
