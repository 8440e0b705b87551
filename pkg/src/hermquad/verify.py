"""Exact structural checks over a range of n, shared by the CLI and tests."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from hermquad.exact import Polynomial, definite_integral
from hermquad.hermite import EndpointData, apply_rule, hermite_interpolant, hermite_weights
from hermquad.params import (
    CLOSED_FORMS,
    Theta,
    alpha_coefficients,
    build_kernel,
    check_orthogonality,
    check_symmetry,
    closed_form_delta,
    solve_theta,
    verify_ribp_identity,
)

DEFAULT_INTERVALS = ((Fraction(0), Fraction(1)), (Fraction(-2, 3), Fraction(5, 7)))


@dataclass(frozen=True)
class Check:
    name: str
    n: int
    interval: tuple[Fraction, Fraction]
    passed: bool
    detail: str = ""

    def line(self) -> str:
        a, b = self.interval
        status = "PASS" if self.passed else "FAIL"
        tail = f"  ({self.detail})" if self.detail else ""
        return f"{status}  n={self.n:<2d} [{a}, {b}]  {self.name}{tail}"


def random_fraction(rng: random.Random, span: int = 20, den: int = 12) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def random_polynomial(rng: random.Random, degree: int) -> Polynomial:
    return Polynomial(random_fraction(rng) for _ in range(degree + 1))


def perturb(theta: Theta) -> Theta:
    """Knock the highest-index parameter off its solved value."""
    if theta.deltas:
        return Theta(theta.n, theta.c, theta.deltas[:-1] + (theta.deltas[-1] + 1,))
    return Theta(theta.n, theta.c + 1, ())


def weights_match_interpolant(n: int, a: Fraction, b: Fraction) -> bool:
    """Each weight equals the integral of the interpolant of a unit data vector."""
    w = hermite_weights(n, a, b)
    zeros = [0] * n
    for j in range(n):
        unit = [0] * n
        unit[j] = 1
        ia = definite_integral(hermite_interpolant(EndpointData(a, b, unit, zeros)), a, b)
        ib = definite_integral(hermite_interpolant(EndpointData(a, b, zeros, unit)), a, b)
        if ia != w.w_a[j] or ib != w.w_b[j]:
            return False
    return True


def monomial_defects(n: int, a: Fraction, b: Fraction, max_degree: int) -> list[Fraction]:
    """``int x^m - rule(x^m)`` for ``m = 0..max_degree``."""
    w = hermite_weights(n, a, b)
    out = []
    for m in range(max_degree + 1):
        mono = Polynomial.monomial(m)
        rule = apply_rule(w, EndpointData.from_polynomial(mono, n, a, b))
        out.append(definite_integral(mono, a, b) - rule)
    return out


def checks_for(
    n: int, a: Fraction, b: Fraction, rng: random.Random, inject_fault: bool = False
) -> Iterator[Check]:
    interval = (a, b)
    w = hermite_weights(n, a, b)
    theta = solve_theta(n, a, b)
    if inject_fault:
        theta = perturb(theta)
    P = build_kernel(theta)
    alphas = alpha_coefficients(theta, a, b)

    yield Check("weights = integral of interpolant", n, interval,
                weights_match_interpolant(n, a, b))

    defects = monomial_defects(n, a, b, 2 * n)
    exact = all(d == 0 for d in defects[:-1])
    yield Check("exact on x^m, m <= 2n-1; inexact at m = 2n", n, interval,
                exact and defects[-1] != 0, f"defect at 2n = {defects[-1]}")

    yield Check("matching a-side", n, interval, alphas.alpha_a == w.w_a)
    yield Check("matching b-side (redundancy)", n, interval, alphas.alpha_b == w.w_b)

    cf_ok = True
    for which in CLOSED_FORMS:
        k = int(which[2:])
        if n >= k:
            cf_ok &= theta.deltas[n - k] == closed_form_delta(n, a, b, which)
    yield Check("closed-form deltas", n, interval, cf_ok)

    yield Check("kernel orthogonality", n, interval, check_orthogonality(P, n, a, b))
    yield Check("kernel symmetry", n, interval, check_symmetry(P, n, a, b))

    ribp_ok = True
    for _ in range(3):
        arbitrary = Theta(n, random_fraction(rng), tuple(random_fraction(rng) for _ in range(n - 1)))
        f = random_polynomial(rng, rng.randint(0, 2 * n + 3))
        ribp_ok &= verify_ribp_identity(arbitrary, f, a, b)
    yield Check("integration-by-parts identity, arbitrary parameters", n, interval, ribp_ok)


def run_checks(
    n_max: int, intervals=DEFAULT_INTERVALS, seed: int = 0, inject_fault: bool = False
) -> list[Check]:
    rng = random.Random(seed)
    out = []
    for n in range(1, n_max + 1):
        for a, b in intervals:
            out.extend(checks_for(n, a, b, rng, inject_fault))
    return out
