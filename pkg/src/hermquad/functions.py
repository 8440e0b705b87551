"""Test integrands with hand-coded analytic derivatives.

The five smooth functions are the ones used for the bound comparison figure.
Two limited-smoothness entries exercise the n-th-derivative-only error
representation: ``abs32`` is ``|x|^{3/2}`` on [-1, 1] (first derivative
bounded, second unbounded at 0) and ``pow32`` is ``x^{3/2}`` on [0, 1]. The
literal ``x^{3/2}`` is not real-valued on [-1, 0), so both readings ship.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "DerivativeMismatch",
    "FunctionSpec",
    "ValidationReport",
    "get",
    "registry",
    "validate_derivatives",
]

LOG_DOMAIN_EPS = 1e-9

Fn = Callable[[np.ndarray], np.ndarray]


class DerivativeMismatch(AssertionError):
    """A supplied derivative disagrees with finite differences of the order below."""


@dataclass(frozen=True)
class FunctionSpec:
    """An integrand and its derivatives.

    ``nth(k)`` returns the k-th derivative as a vectorised callable (``k = 0``
    is the function itself). ``max_smooth_order`` is ``None`` when every order
    is available. ``kinks`` are points where the top derivative is not smooth;
    integrators split there. ``extrema``, when given, maps
    ``(order, a, b)`` to the exact ``(inf, sup)`` of that derivative on [a, b]
    or ``None`` if it has no closed form for that case.
    """

    name: str
    label: str
    domain: tuple[float, float]
    nth: Callable[[int], Fn]
    max_smooth_order: int | None = None
    kinks: tuple[float, ...] = ()
    sample_interval: tuple[float, float] = (0.0, 1.0)
    default_interval: tuple[float, float] = (0.0, 1.0)
    extrema: Callable[[int, float, float], tuple[float, float] | None] | None = None
    kink_margin: float = 1e-3
    aliases: tuple[str, ...] = field(default=())

    def __post_init__(self):
        lo, hi = self.domain
        for k in self.kinks:
            if not lo < k < hi:
                raise ValueError(f"{self.name}: kink {k} outside domain {self.domain}")

    def has_order(self, k: int) -> bool:
        return self.max_smooth_order is None or k <= self.max_smooth_order

    def derivative(self, k: int) -> Fn:
        if k < 0:
            raise ValueError("derivative order must be non-negative")
        if not self.has_order(k):
            raise ValueError(
                f"{self.name} provides derivatives up to order "
                f"{self.max_smooth_order}, not {k}"
            )
        fk = self.nth(k)
        lo, hi = self.domain

        def guarded(x):
            arr = np.asarray(x, dtype=float)
            if np.any((arr < lo) | (arr > hi)):
                raise ValueError(f"{self.name}: argument outside domain [{lo}, {hi}]")
            return fk(arr)

        return guarded

    def __call__(self, x):
        return self.derivative(0)(x)

    def in_domain(self, a: float, b: float) -> bool:
        lo, hi = self.domain
        return lo <= min(a, b) and max(a, b) <= hi


def _poly_nth(coeffs: Sequence[float]) -> Callable[[int], Fn]:
    base = np.polynomial.Polynomial(coeffs)

    def nth(k: int) -> Fn:
        p = base.deriv(k) if k else base
        return lambda x: p(np.asarray(x, dtype=float)) + 0.0 * np.asarray(x, dtype=float)

    return nth


def _exp_nth(k: int) -> Fn:
    return np.exp


def _sin2pi_nth(k: int) -> Fn:
    w = 2.0 * math.pi
    scale = w**k
    shift = k * math.pi / 2.0
    return lambda x: scale * np.sin(w * np.asarray(x, dtype=float) + shift)


def _log1p_nth(k: int) -> Fn:
    if k == 0:
        return np.log1p
    c = (-1.0) ** (k - 1) * math.factorial(k - 1)
    return lambda x: c / (1.0 + np.asarray(x, dtype=float)) ** k


def _abs32_nth(k: int) -> Fn:
    if k == 0:
        return lambda x: np.abs(x) ** 1.5
    if k == 1:
        return lambda x: 1.5 * np.sign(x) * np.sqrt(np.abs(x))
    if k == 2:
        # unbounded at the origin; reachable only through ``nth`` directly
        def second(x):
            with np.errstate(divide="ignore"):
                return 0.75 / np.sqrt(np.abs(np.asarray(x, dtype=float)))

        return second
    raise ValueError("abs32 derivatives stop at order 2")


def _pow32_nth(k: int) -> Fn:
    if k == 0:
        return lambda x: np.asarray(x, dtype=float) ** 1.5
    if k == 1:
        return lambda x: 1.5 * np.sqrt(np.asarray(x, dtype=float))
    raise ValueError("pow32 derivatives stop at order 1")


def _monotone(fn_of_order: Callable[[int], Fn]):
    """Extrema for derivatives that are monotone on any interval."""

    def extrema(k: int, a: float, b: float):
        lo, hi = sorted((a, b))
        ends = fn_of_order(k)(np.array([lo, hi]))
        return float(ends.min()), float(ends.max())

    return extrema


def _cubic_extrema(k: int, a: float, b: float):
    # x^3 derivatives are x^3, 3x^2, 6x, 6, 0: all monotone except 3x^2
    if k == 1:
        return None
    return _monotone(_poly_nth([0, 0, 0, 1]))(k, a, b)


def _build_registry() -> tuple[FunctionSpec, ...]:
    return (
        FunctionSpec(
            name="cubic", label="x^3", domain=(-math.inf, math.inf),
            nth=_poly_nth([0, 0, 0, 1]), extrema=_cubic_extrema,
            sample_interval=(-1.0, 1.0), aliases=("x^3",),
        ),
        FunctionSpec(
            name="exp", label="e^x", domain=(-math.inf, math.inf),
            nth=_exp_nth, extrema=_monotone(_exp_nth),
            sample_interval=(-1.0, 1.0), aliases=("e^x",),
        ),
        FunctionSpec(
            name="sin2pi", label="sin(2*pi*x)", domain=(-math.inf, math.inf),
            nth=_sin2pi_nth, sample_interval=(-1.0, 1.0), aliases=("sin(2pi x)",),
        ),
        FunctionSpec(
            name="log1p", label="log(x+1)", domain=(-1.0 + LOG_DOMAIN_EPS, math.inf),
            nth=_log1p_nth, extrema=_monotone(_log1p_nth),
            sample_interval=(-0.5, 1.0), aliases=("log(x+1)",),
        ),
        FunctionSpec(
            name="quartic", label="x^4-2x^3+x^2", domain=(-math.inf, math.inf),
            nth=_poly_nth([0, 0, 1, -2, 1]), sample_interval=(-1.0, 1.0),
            aliases=("x^4-2x^3+x^2",),
        ),
        FunctionSpec(
            name="abs32", label="|x|^(3/2)", domain=(-math.inf, math.inf),
            nth=_abs32_nth, max_smooth_order=1, kinks=(0.0,),
            sample_interval=(-1.0, 1.0), default_interval=(-1.0, 1.0),
            extrema=_monotone(_abs32_nth), aliases=("|x|^(3/2)",),
        ),
        FunctionSpec(
            name="pow32", label="x^(3/2)", domain=(0.0, math.inf),
            nth=_pow32_nth, max_smooth_order=1,
            sample_interval=(0.0, 1.0), extrema=_monotone(_pow32_nth),
            aliases=("x^(3/2)",),
        ),
    )


_REGISTRY = _build_registry()
FIGURE_FUNCTIONS = ("cubic", "exp", "sin2pi", "log1p", "quartic")


def registry() -> list[FunctionSpec]:
    return list(_REGISTRY)


def get(name: str) -> FunctionSpec:
    for spec in _REGISTRY:
        if name == spec.name or name in spec.aliases:
            return spec
    names = ", ".join(s.name for s in _REGISTRY)
    raise KeyError(f"unknown function {name!r}; available: {names}")


@dataclass(frozen=True)
class ValidationReport:
    name: str
    order: int
    worst_point: float
    worst_rel_error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.worst_rel_error <= self.tolerance


def _five_point(g: Fn, x: float, h: float) -> float:
    vals = g(np.array([x - 2 * h, x - h, x + h, x + 2 * h]))
    return float((vals[0] - 8 * vals[1] + 8 * vals[2] - vals[3]) / (12 * h))


def _best_difference(g: Fn, x: float, reach: float) -> float:
    """Five-point central difference with the step chosen where successive
    halvings agree best (balances truncation against cancellation).

    The stencil never extends further than ``reach`` from ``x``.
    """
    scale = min(max(1.0, abs(x)) / 8.0, reach / 2.0)
    steps = [scale * 2.0 ** (-e) for e in range(13)]
    ests = [_five_point(g, x, h) for h in steps]
    diffs = [abs(ests[i + 1] - ests[i]) for i in range(len(ests) - 1)]
    i = int(np.argmin(diffs))
    return ests[i + 1]


def validate_derivatives(
    spec: FunctionSpec,
    order: int,
    points: Sequence[float],
    tol: float = 1e-6,
    raise_on_failure: bool = True,
) -> ValidationReport:
    """Compare ``derivative(order)`` with finite differences of ``derivative(order-1)``.

    The error at each point is measured relative to the largest derivative
    magnitude seen over ``points`` (so zero crossings do not blow up the
    ratio). Raises :class:`DerivativeMismatch` when the worst point exceeds ``tol``.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    if not spec.has_order(order):
        raise ValueError(f"{spec.name} has no derivative of order {order}")
    pts = [float(p) for p in points]
    for p in pts:
        for k in spec.kinks:
            if abs(p - k) < spec.kink_margin:
                raise ValueError(f"point {p} within {spec.kink_margin} of kink {k}")
    lower = spec.derivative(order - 1)
    exact = spec.derivative(order)(np.array(pts))
    lo, hi = spec.domain
    fd = []
    for p in pts:
        reach = min([p - lo, hi - p] + [abs(p - k) for k in spec.kinks])
        if reach <= 0:
            raise ValueError(f"point {p} is not interior to {spec.name}'s domain")
        fd.append(_best_difference(lower, p, reach))
    fd = np.array(fd)
    scale = max(float(np.max(np.abs(exact))), np.finfo(float).tiny)
    rel = np.abs(fd - exact) / scale
    worst = int(np.argmax(rel))
    report = ValidationReport(spec.name, order, pts[worst], float(rel[worst]), tol)
    if raise_on_failure and not report.passed:
        raise DerivativeMismatch(
            f"{spec.name}: derivative of order {order} off by "
            f"{report.worst_rel_error:.3e} (relative) at x = {report.worst_point}"
        )
    return report
