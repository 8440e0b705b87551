"""Floating-point error analysis for the Hermite rule.

The exact error of the n-point-derivative Hermite rule is
``E_n = int_a^b (-1)^n f^(n)(x) P(x) dx`` with ``P`` the kernel from
:mod:`hermquad.params`. Since ``P`` integrates to zero, any constant can be
subtracted from ``f^(n)`` for free; subtracting the midrange of ``f^(n)``
gives the improved sup-norm bound. That shortcut is stated for n = 2 in the
literature but only needs ``int P = 0``, which holds for every n, so it is
applied for general n here.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from hermquad.exact import Polynomial, as_fraction, compose_affine, definite_integral
from hermquad.functions import FunctionSpec
from hermquad.hermite import hermite_weights
from hermquad.params import build_kernel, solve_theta

__all__ = [
    "DEFAULT_GRID",
    "DEFAULT_TOL",
    "ErrorReport",
    "IntegrationError",
    "IntegrationResult",
    "KernelNorms",
    "NonFiniteValue",
    "UnboundedDerivative",
    "bound_l2",
    "bounds",
    "composite_rule",
    "derivative_extrema",
    "error_report",
    "extrema",
    "integrate",
    "kernel_error",
    "kernel_for",
    "kernel_norms",
    "kernel_roots",
    "midrange",
    "reference_integral",
    "sturm_sequence",
]

DEFAULT_TOL = 1e-12
DEFAULT_GRID = 4097
ROOT_RTOL = 1e-14


class IntegrationError(ArithmeticError):
    """Adaptive integration could not reach the requested tolerance."""

    def __init__(self, message: str, value: float = math.nan, error: float = math.inf):
        super().__init__(message)
        self.value = value
        self.error = error


class NonFiniteValue(ArithmeticError):
    """An integrand or derivative evaluated to inf or nan."""


class UnboundedDerivative(NonFiniteValue):
    """A derivative produced a non-finite sample."""


# ---------------------------------------------------------------------------
# adaptive Gauss-Kronrod (7, 15)
# ---------------------------------------------------------------------------

_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
# Gauss weights for the nodes _XGK[1], _XGK[3], _XGK[5], _XGK[7]
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KW = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GW = np.zeros(15)
_GW[[1, 3, 5]] = _WG[:3]
_GW[7] = _WG[3]
_GW[[13, 11, 9]] = _WG[:3]


def _gk15(g: Callable, lo: float, hi: float) -> tuple[float, float]:
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    vals = np.asarray(g(mid + half * _NODES), dtype=float)
    if vals.shape != _NODES.shape:
        vals = np.broadcast_to(vals, _NODES.shape)
    if not np.all(np.isfinite(vals)):
        raise NonFiniteValue(f"non-finite integrand value on [{lo}, {hi}]")
    kron = half * float(np.dot(_KW, vals))
    gauss = half * float(np.dot(_GW, vals))
    scale = abs(half) * float(np.dot(_KW, np.abs(vals)))
    err = max(abs(kron - gauss), 50.0 * np.finfo(float).eps * scale)
    return kron, err


@dataclass(frozen=True)
class IntegrationResult:
    value: float
    error: float
    intervals: int


def _adaptive(g, lo, hi, tol, min_width, max_intervals):
    v, e = _gk15(g, lo, hi)
    heap = [(-e, lo, hi, v)]
    frozen = []
    total_err = e
    while heap and total_err > tol and len(heap) + len(frozen) < max_intervals:
        neg_e, l, h, v = heapq.heappop(heap)
        if h - l <= min_width:
            frozen.append((neg_e, l, h, v))
            continue
        m = 0.5 * (l + h)
        v1, e1 = _gk15(g, l, m)
        v2, e2 = _gk15(g, m, h)
        heapq.heappush(heap, (-e1, l, m, v1))
        heapq.heappush(heap, (-e2, m, h, v2))
        total_err = total_err + neg_e + e1 + e2
    pieces = sorted((l, v, -ne) for ne, l, h, v in heap + frozen)
    value = math.fsum(p[1] for p in pieces)
    err = math.fsum(p[2] for p in pieces)
    return value, err, len(pieces)


def integrate(
    g: Callable,
    a: float,
    b: float,
    tol: float = DEFAULT_TOL,
    points: Sequence[float] = (),
    min_width: float | None = None,
    max_intervals: int = 20000,
) -> IntegrationResult:
    """Globally adaptive (7, 15) Gauss-Kronrod integration of a vectorised ``g``.

    The interval is first split at every entry of ``points`` inside (a, b).
    Sub-intervals are bisected, largest error first, until the summed error
    estimate is below ``tol`` or a sub-interval shrinks to ``min_width``;
    :class:`IntegrationError` is raised if the tolerance is still missed.
    Summation is ordered by position, so results do not depend on the
    refinement order.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a, b = float(a), float(b)
    if a == b:
        return IntegrationResult(0.0, 0.0, 0)
    sign = 1.0
    if a > b:
        a, b, sign = b, a, -1.0
    if min_width is None:
        min_width = (b - a) * 2.0**-52
    cuts = [a] + sorted(p for p in set(points) if a < p < b) + [b]
    share = tol / (len(cuts) - 1)
    values, errors, count = [], [], 0
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        v, e, k = _adaptive(g, lo, hi, share, min_width, max_intervals)
        values.append(v)
        errors.append(e)
        count += k
    value = sign * math.fsum(values)
    err = math.fsum(errors)
    if err > tol:
        raise IntegrationError(
            f"requested tolerance {tol:g} not reached on [{a}, {b}]; "
            f"achieved {err:.3g}",
            value, err,
        )
    return IntegrationResult(value, err, count)


def reference_integral(f, a: float, b: float, tol: float = DEFAULT_TOL) -> float:
    """High-accuracy oracle for ``int_a^b f``; splits at declared kinks."""
    if isinstance(f, FunctionSpec):
        if not f.in_domain(a, b):
            raise ValueError(f"[{a}, {b}] is outside the domain of {f.name}")
        return integrate(f.derivative(0), a, b, tol, points=f.kinks).value
    return integrate(f, a, b, tol).value


# ---------------------------------------------------------------------------
# exact root isolation
# ---------------------------------------------------------------------------

def _monic(p: Polynomial) -> Polynomial:
    return p.scale(1 / p.leading) if p else p


def _gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    while q:
        p, q = q, p.divmod(q)[1]
    return _monic(p)


def square_free(p: Polynomial) -> Polynomial:
    """``p / gcd(p, p')``: same roots, all simple."""
    g = _gcd(p, p.derivative())
    return p.divmod(g)[0]


def sturm_sequence(p: Polynomial) -> list[Polynomial]:
    seq = [p, p.derivative()]
    while seq[-1] and seq[-1].degree > 0:
        rem = seq[-2].divmod(seq[-1])[1]
        if not rem:
            break
        seq.append(-rem)
    return [s for s in seq if s]


def _sign_changes(seq: Sequence[Polynomial], x: Fraction) -> int:
    signs = [v > 0 for v in (s(x) for s in seq) if v != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def _count(seq, lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots in the half-open interval (lo, hi]."""
    return _sign_changes(seq, lo) - _sign_changes(seq, hi)


def _refine(q: Polynomial, seq, lo: Fraction, hi: Fraction, scale: Fraction) -> Fraction:
    """Shrink (lo, hi], known to hold exactly one root of ``q``, to ROOT_RTOL."""
    rtol = as_fraction(ROOT_RTOL)
    q_lo, q_hi = q(lo), q(hi)
    if q_hi == 0:
        return hi
    while hi - lo > rtol * max(abs(lo), abs(hi), scale):
        m = (lo + hi) / 2
        q_m = q(m)
        if q_m == 0:
            return m
        if q_lo != 0:
            left = (q_lo > 0) != (q_m > 0)
        else:
            left = _count(seq, lo, m) > 0
        if left:
            hi = m
        else:
            lo, q_lo = m, q_m
    return (lo + hi) / 2


def _exact_roots(P: Polynomial, a, b) -> list[Fraction]:
    if P.is_zero():
        raise ValueError("the zero polynomial has no isolated roots")
    a, b = as_fraction(a), as_fraction(b)
    if a > b:
        a, b = b, a
    if P.degree == 0:
        return []
    q = square_free(P)
    seq = sturm_sequence(q)
    scale = (b - a) * as_fraction(1e-3)
    roots = [a] if q(a) == 0 else []
    stack = [(a, b)]
    found = []
    while stack:
        lo, hi = stack.pop()
        k = _count(seq, lo, hi)
        if k == 0:
            continue
        if k == 1:
            found.append(_refine(q, seq, lo, hi, scale))
            continue
        m = (lo + hi) / 2
        stack.append((lo, m))
        stack.append((m, hi))
    return roots + sorted(found)


def kernel_roots(P: Polynomial, a, b) -> list[float]:
    """Real roots of ``P`` in [a, b], ascending.

    Roots are isolated with a Sturm sequence of the square-free part over
    exact rationals and then bisected to relative precision 1e-14.
    """
    return [float(r) for r in _exact_roots(P, a, b)]


@dataclass(frozen=True)
class KernelNorms:
    l1: float
    l2: float
    roots: tuple[float, ...]


def kernel_norms(P: Polynomial, n: int, a, b) -> KernelNorms:
    """L1 and L2 norms of the kernel on [a, b].

    ``l1`` sums ``|A(r_{i+1}) - A(r_i)|`` over the root-delimited pieces, with
    ``A`` the exact antiderivative; ``l2`` comes from the exact integral of
    ``P^2``. Floats appear only in the final conversion.
    """
    if P.degree is None:
        raise ValueError("kernel is the zero polynomial")
    a, b = as_fraction(a), as_fraction(b)
    if a >= b:
        raise ValueError("need a < b")
    roots = _exact_roots(P, a, b)
    prim = P.antiderivative()
    cuts = [a] + [r for r in roots if a < r < b] + [b]
    l1 = math.fsum(abs(float(prim(hi) - prim(lo))) for lo, hi in zip(cuts[:-1], cuts[1:]))
    l2 = math.sqrt(float(definite_integral(P * P, a, b)))
    return KernelNorms(l1, l2, tuple(float(r) for r in roots))


def kernel_for(n: int, a, b) -> Polynomial:
    """Kernel ``P`` with parameters solved for the Hermite rule on [a, b]."""
    return build_kernel(solve_theta(n, as_fraction(a), as_fraction(b)))


# ---------------------------------------------------------------------------
# error integral, extrema and bounds
# ---------------------------------------------------------------------------

def _centered_evaluator(P: Polynomial, a: Fraction, b: Fraction):
    # expand around the midpoint to keep float cancellation small
    mid = (a + b) / 2
    coeffs = compose_affine(P, 1, mid).to_floats()[::-1]
    midf = float(mid)
    return lambda x: np.polyval(coeffs, np.asarray(x, dtype=float) - midf)


def _require_order(f: FunctionSpec, n: int):
    if not f.has_order(n):
        raise ValueError(
            f"{f.name} provides derivatives up to order {f.max_smooth_order}; "
            f"order {n} is required"
        )


def kernel_error(
    f: FunctionSpec, n: int, P: Polynomial, a, b, tol: float = DEFAULT_TOL
) -> float:
    """``int_a^b (-1)^n f^(n)(x) P(x) dx``, split at the function's kinks."""
    _require_order(f, n)
    fa, fb = as_fraction(a), as_fraction(b)
    fn = f.derivative(n)
    pv = _centered_evaluator(P, fa, fb)
    sign = (-1.0) ** n
    return integrate(lambda x: sign * fn(x) * pv(x), float(a), float(b), tol, points=f.kinks).value


def _golden_min(g, lo: float, hi: float, iters: int = 80) -> tuple[float, float]:
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - invphi * (hi - lo)
    x2 = lo + invphi * (hi - lo)
    g1, g2 = g(x1), g(x2)
    for _ in range(iters):
        if hi - lo <= 1e-15 * max(1.0, abs(lo), abs(hi)):
            break
        if g1 <= g2:
            hi, x2, g2 = x2, x1, g1
            x1 = hi - invphi * (hi - lo)
            g1 = g(x1)
        else:
            lo, x1, g1 = x1, x2, g2
            x2 = lo + invphi * (hi - lo)
            g2 = g(x2)
    return (x1, g1) if g1 <= g2 else (x2, g2)


def extrema(g: Callable, a: float, b: float, grid: int = DEFAULT_GRID) -> tuple[float, float]:
    """Estimate ``(inf, sup)`` of ``g`` on [a, b].

    Dense sampling on ``grid`` equispaced points, then golden-section search
    in the cells adjacent to the extreme samples.
    """
    if grid < 2:
        raise ValueError("grid must have at least 2 points")
    xs = np.linspace(a, b, grid)
    vals = np.asarray(g(xs), dtype=float)
    if not np.all(np.isfinite(vals)):
        bad = xs[~np.isfinite(vals)][0]
        raise UnboundedDerivative(f"non-finite sample at x = {bad}")

    def scalar(x, sgn):
        v = float(np.asarray(g(np.array([x])), dtype=float)[0])
        if not math.isfinite(v):
            raise UnboundedDerivative(f"non-finite sample at x = {x}")
        return sgn * v

    out = []
    for sgn in (1.0, -1.0):
        i = int(np.argmin(sgn * vals))
        best = sgn * vals[i]
        lo, hi = xs[max(i - 1, 0)], xs[min(i + 1, grid - 1)]
        _, refined = _golden_min(lambda x: scalar(x, sgn), lo, hi)
        out.append(sgn * min(best, refined))
    return out[0], out[1]


def midrange(g: Callable, a: float, b: float, grid: int = DEFAULT_GRID) -> float:
    lo, hi = extrema(g, a, b, grid)
    return 0.5 * (lo + hi)


def derivative_extrema(
    f: FunctionSpec, order: int, a: float, b: float, grid: int = DEFAULT_GRID
) -> tuple[float, float]:
    """Closed-form extrema when the function declares them, else sampled."""
    _require_order(f, order)
    if f.extrema is not None:
        known = f.extrema(order, float(a), float(b))
        if known is not None:
            return known
    return extrema(f.derivative(order), float(a), float(b), grid)


def bounds(f: FunctionSpec, n: int, a, b, grid: int = DEFAULT_GRID) -> tuple[float, float]:
    """``(sup|f^(n)| * l1, sup|f^(n) - midrange| * l1)`` with ``l1 = ||P||_1``."""
    lo, hi = derivative_extrema(f, n, a, b, grid)
    l1 = kernel_norms(kernel_for(n, a, b), n, a, b).l1
    sup_abs = max(abs(lo), abs(hi))
    deviation = 0.5 * (hi - lo)
    return sup_abs * l1, deviation * l1


def bound_l2(
    f: FunctionSpec, n: int, a, b, grid: int = DEFAULT_GRID, tol: float = DEFAULT_TOL
) -> float:
    """Cauchy-Schwarz bound ``||f^(n) - midrange||_2 * ||P||_2``."""
    lo, hi = derivative_extrema(f, n, a, b, grid)
    mid = 0.5 * (lo + hi)
    fn = f.derivative(n)
    # the squared integrand can be huge; keep the tolerance above roundoff
    scale = max(1.0, abs(float(b) - float(a)) * (0.5 * (hi - lo)) ** 2)
    sq = integrate(
        lambda x: (fn(x) - mid) ** 2, float(a), float(b), tol * scale, points=f.kinks
    ).value
    l2 = kernel_norms(kernel_for(n, a, b), n, a, b).l2
    return math.sqrt(max(sq, 0.0)) * l2


def composite_rule(f: FunctionSpec, n: int, a, b, pieces: int = 1) -> float:
    """Hermite rule of order n applied on ``pieces`` equal sub-intervals, summed."""
    if not isinstance(pieces, int) or pieces < 1:
        raise ValueError("pieces must be a positive integer")
    _require_order(f, n - 1)
    fa, fb = as_fraction(a), as_fraction(b)
    if fa >= fb:
        raise ValueError("need a < b")
    h = (fb - fa) / pieces
    w = hermite_weights(n, 0, h)
    w_a = [float(x) for x in w.w_a]
    w_b = [float(x) for x in w.w_b]
    nodes = np.array([float(fa + i * h) for i in range(pieces + 1)])
    derivs = [np.asarray(f.derivative(j)(nodes), dtype=float) for j in range(n)]
    for j, d in enumerate(derivs):
        if not np.all(np.isfinite(d)):
            raise UnboundedDerivative(f"non-finite derivative of order {j} at a breakpoint")
    totals = []
    for i in range(pieces):
        totals.append(math.fsum(
            [w_a[j] * derivs[j][i] for j in range(n)]
            + [w_b[j] * derivs[j][i + 1] for j in range(n)]
        ))
    return math.fsum(totals)


@dataclass(frozen=True)
class ErrorReport:
    function: str
    n: int
    interval: tuple[float, float]
    quadrature_value: float
    reference_value: float
    kernel_error: float
    true_error: float
    bound_original: float
    bound_improved: float
    bound_l2: float | None = None
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "function": self.function,
            "n": self.n,
            "a": self.interval[0],
            "b": self.interval[1],
            "quadrature_value": self.quadrature_value,
            "reference_value": self.reference_value,
            "kernel_error": self.kernel_error,
            "true_error": self.true_error,
            "bound_original": self.bound_original,
            "bound_improved": self.bound_improved,
            "bound_l2": self.bound_l2,
            "note": self.note,
        }


def error_report(
    f: FunctionSpec, n: int, a, b, tol: float = DEFAULT_TOL, grid: int = DEFAULT_GRID
) -> ErrorReport:
    _require_order(f, n)
    P = kernel_for(n, a, b)
    quad = composite_rule(f, n, a, b, 1)
    ref = reference_integral(f, float(a), float(b), tol)
    kerr = kernel_error(f, n, P, a, b, tol)
    orig, impr = bounds(f, n, a, b, grid)
    try:
        l2 = bound_l2(f, n, a, b, grid, tol)
    except (IntegrationError, NonFiniteValue):
        l2 = None
    note = ""
    if f.max_smooth_order is not None and f.max_smooth_order < 2 * n:
        note = (
            f"reduced regularity: only derivatives up to order {f.max_smooth_order} "
            f"exist, the classical 2n = {2 * n} derivative error formula does not apply"
        )
    return ErrorReport(
        function=f.name, n=n, interval=(float(a), float(b)),
        quadrature_value=quad, reference_value=ref, kernel_error=kerr,
        true_error=ref - quad, bound_original=orig, bound_improved=impr,
        bound_l2=l2, note=note,
    )
