"""Exit criteria, one test per criterion, each at its stated tolerance."""

import math
import random
import time
from fractions import Fraction

import pytest
from conftest import ACCEPTANCE_LINES

from hermquad.cli import figure_rows
from hermquad.error import composite_rule, error_report, kernel_for, kernel_norms, reference_integral
from hermquad.exact import Polynomial
from hermquad.functions import get
from hermquad.hermite import hermite_weights
from hermquad.params import (
    Theta,
    alpha_coefficients,
    build_kernel,
    check_orthogonality,
    check_symmetry,
    closed_form_delta,
    solve_theta,
    verify_ribp_identity,
)
from hermquad.verify import monomial_defects, random_fraction, random_polynomial, weights_match_interpolant

SEED = 20260101


def random_interval(rng):
    a = random_fraction(rng)
    b = random_fraction(rng)
    while b == a:
        b = random_fraction(rng)
    return a, b


def record(number: int, title: str, ok: bool, detail: str = ""):
    ACCEPTANCE_LINES.append(
        f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}" + (f"  [{detail}]" if detail else "")
    )
    print(ACCEPTANCE_LINES[-1])
    assert ok, f"criterion {number} failed: {title} {detail}"


def test_criterion_01_weights_vs_integral_oracle():
    rng = random.Random(SEED + 1)
    start = time.perf_counter()
    ok = True
    for n in range(1, 9):
        for _ in range(4):
            a, b = random_interval(rng)
            ok &= weights_match_interpolant(n, a, b)
    elapsed = time.perf_counter() - start
    record(1, "closed-form weights equal integral of interpolant, n=1..8", ok and elapsed < 5.0,
           f"{elapsed:.2f}s of 5s")


def test_criterion_02_exactness_degree():
    rng = random.Random(SEED + 2)
    ok = True
    for n in range(1, 9):
        a, b = random_interval(rng)
        defects = monomial_defects(n, a, b, 2 * n)
        ok &= all(d == 0 for d in defects[:-1]) and defects[-1] != 0
    record(2, "rule exact on x^m for m <= 2n-1, inexact at m = 2n, n=1..8", ok)


def test_criterion_03_closed_form_deltas():
    rng = random.Random(SEED + 3)
    intervals = [random_interval(rng) for _ in range(24)]
    ok = True
    count = 0
    for n in range(2, 13):
        for a, b in intervals:
            theta = solve_theta(n, a, b)
            for which in ("n-2", "n-3", "n-4"):
                k = int(which[2:])
                if n >= k:
                    ok &= theta.deltas[n - k] == closed_form_delta(n, a, b, which)
                    count += 1
    record(3, "recursion deltas equal the three closed forms, n=2..12, 24 intervals", ok,
           f"{count} exact comparisons")


def test_criterion_04_redundancy():
    rng = random.Random(SEED + 4)
    ok = True
    for n in range(1, 13):
        for _ in range(3):
            a, b = random_interval(rng)
            al = alpha_coefficients(solve_theta(n, a, b), a, b)
            w = hermite_weights(n, a, b)
            ok &= al.alpha_a == w.w_a and al.alpha_b == w.w_b
    record(4, "a-side solve forces alpha_b = w_b, n=1..12", ok)


def test_criterion_05_orthogonality_and_symmetry():
    rng = random.Random(SEED + 5)
    ok = True
    for n in range(1, 13):
        a, b = random_interval(rng)
        P = build_kernel(solve_theta(n, a, b))
        ok &= check_orthogonality(P, n, a, b) and check_symmetry(P, n, a, b)
    record(5, "kernel orthogonal to P^(n-1) and (-1)^n symmetric, n=1..12", ok)


def test_criterion_06_sqrt3_over_54():
    l1 = kernel_norms(kernel_for(2, 0, 1), 2, 0, 1).l1
    target = math.sqrt(3) / 54
    rel = abs(l1 - target) / target
    record(6, "n=2 kernel L1 norm on [0,1] equals sqrt(3)/54", rel <= 1e-13, f"rel err {rel:.1e}")


def test_criterion_07_figure_reproduction():
    rows = figure_rows(2, 0.0, 1.0)
    ordered = all(impr <= orig for _, _, orig, impr in rows)
    valid = all(e <= orig + 1e-10 and e <= impr + 1e-10 for _, e, orig, impr in rows)
    cubic = next(r for r in rows if r[0] == "x^3")
    ratio = cubic[3] / cubic[2]
    ratio_ok = abs(ratio - 0.5) <= 2 * 2.0**-52
    record(7, "improved <= original, both valid, cubic ratio 1/2 (5 functions)",
           len(rows) == 5 and ordered and valid and ratio_ok, f"cubic ratio {ratio!r}")


def test_criterion_08_reduced_regularity():
    r = error_report(get("abs32"), 1, -1.0, 1.0)
    gap = abs(r.kernel_error - r.true_error)
    record(8, "|x|^(3/2), n=1 on [-1,1]: kernel error matches true error", gap <= 1e-8,
           f"gap {gap:.1e}")


def test_criterion_09_ribp_identity():
    rng = random.Random(SEED + 9)
    ok = True
    for i in range(200):
        n = 1 + i % 6
        a, b = random_interval(rng)
        theta = Theta(n, random_fraction(rng), tuple(random_fraction(rng) for _ in range(n - 1)))
        f = random_polynomial(rng, rng.randint(0, 2 * n + 3))
        ok &= verify_ribp_identity(theta, f, a, b)
    record(9, "integration-by-parts identity exact for 200 random (theta, f, interval)", ok)


def test_criterion_10_composite_convergence():
    f = get("exp")
    start = time.perf_counter()
    ref = reference_integral(f, 0.0, 1.0)
    errs = {k: abs(ref - composite_rule(f, 2, 0.0, 1.0, k)) for k in (8, 16, 32, 64)}
    elapsed = time.perf_counter() - start
    orders = [math.log2(errs[k] / errs[2 * k]) for k in (8, 16, 32)]
    ok = all(3.8 <= o <= 4.2 for o in orders) and elapsed < 1.0
    record(10, "e^x, n=2 composite order in [3.8, 4.2] over 8..64 pieces",
           ok, f"orders {', '.join(f'{o:.3f}' for o in orders)}; {elapsed * 1000:.0f} ms")
