"""Free parameters of the n-fold reverse integration by parts identity.

Integrating ``f`` by parts ``n`` times with free constants ``c, delta_0, ...,
delta_{n-2}`` gives boundary weights ``alpha_j^a, alpha_j^b`` plus the error
term ``int (-1)^n f^(n)(x) P(x) dx`` with
``P(x) = (x+c)^n/n! + sum_i delta_i x^i/i!``. Choosing the constants so that
the ``a``-side weights equal the Hermite weights makes the ``b``-side match
too, and ``P`` becomes the error kernel of the Hermite rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from hermquad.exact import Polynomial, as_fraction, compose_affine, definite_integral, factorial
from hermquad.hermite import _check_interval, hermite_weights

__all__ = [
    "AlphaSet",
    "CLOSED_FORMS",
    "Theta",
    "alpha_coefficients",
    "build_kernel",
    "check_orthogonality",
    "check_symmetry",
    "closed_form_delta",
    "ribp_sides",
    "solve_theta",
    "verify_ribp_identity",
]


@dataclass(frozen=True)
class Theta:
    """``c`` and ``deltas[i] = delta_i`` for ``i = 0..n-2``."""

    n: int
    c: Fraction
    deltas: tuple[Fraction, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if len(self.deltas) != self.n - 1:
            raise ValueError(f"expected {self.n - 1} deltas, got {len(self.deltas)}")

    @classmethod
    def of(cls, n: int, c, deltas: Sequence = ()) -> Theta:
        return cls(n, as_fraction(c), tuple(as_fraction(d) for d in deltas))


@dataclass(frozen=True)
class AlphaSet:
    n: int
    alpha_a: tuple[Fraction, ...]
    alpha_b: tuple[Fraction, ...]


def solve_theta(n: int, a, b) -> Theta:
    """Solve ``alpha_j^a = w_j^a`` by forward substitution.

    ``j = 0`` fixes ``c = -(a+b)/2``; each later ``j`` determines
    ``delta_{n-1-j}`` from the ones already known.
    """
    a, b = _check_interval(n, a, b)
    w_a = hermite_weights(n, a, b).w_a
    c = -(a + b) / 2
    deltas: list[Fraction | None] = [None] * (n - 1)
    for j in range(1, n):
        val = (-1) ** (j + 1) * w_a[j] - (a + c) ** (j + 1) / factorial(j + 1)
        for i in range(1, j):
            val -= deltas[i + n - 1 - j] * a**i / factorial(i)
        deltas[n - 1 - j] = val
    return Theta(n, c, tuple(deltas))


CLOSED_FORMS = ("n-2", "n-3", "n-4")


def closed_form_delta(n: int, a, b, which: str) -> Fraction:
    """Known closed forms for the three highest-index deltas.

    ``which`` is one of ``"n-2"`` (valid for n >= 2), ``"n-3"`` (n >= 3) or
    ``"n-4"`` (n >= 4).
    """
    a, b = _check_interval(n, a, b)
    if which not in CLOSED_FORMS:
        raise ValueError(f"no closed form for delta_{which}; choose from {CLOSED_FORMS}")
    need = int(which[2:])
    if n < need:
        raise ValueError(f"delta_{which} requires n >= {need}, got n = {n}")
    h2 = (b - a) ** 2
    s = a + b
    if which == "n-2":
        return -h2 / (8 * (2 * n - 1))
    if which == "n-3":
        return s * h2 / (16 * (2 * n - 1))
    return h2 * (h2 + (6 - 4 * n) * s**2) / (128 * (2 * n - 3) * (2 * n - 1))


def _boundary_weight(theta: Theta, x: Fraction, j: int) -> Fraction:
    n = theta.n
    acc = (x + theta.c) ** (j + 1) / factorial(j + 1)
    for i in range(j):
        acc += theta.deltas[i + n - 1 - j] * x**i / factorial(i)
    return acc


def alpha_coefficients(theta: Theta, a, b) -> AlphaSet:
    a, b = as_fraction(a), as_fraction(b)
    n = theta.n
    alpha_b = tuple((-1) ** j * _boundary_weight(theta, b, j) for j in range(n))
    alpha_a = tuple((-1) ** (j + 1) * _boundary_weight(theta, a, j) for j in range(n))
    return AlphaSet(n, alpha_a, alpha_b)


def build_kernel(theta: Theta) -> Polynomial:
    """``P(x) = (x+c)^n/n! + sum_i delta_i x^i/i!``; degree n, leading 1/n!.

    The signed kernel multiplying ``f^(n)`` in the error is ``(-1)^n P``.
    """
    n = theta.n
    p = (Polynomial([theta.c, 1]) ** n).scale(Fraction(1, factorial(n)))
    tail = Polynomial(d / factorial(i) for i, d in enumerate(theta.deltas))
    return p + tail


def check_orthogonality(P: Polynomial, n: int, a, b) -> bool:
    """True iff ``int_a^b x^m P(x) dx == 0`` for every ``m < n``."""
    return all(
        definite_integral(Polynomial.monomial(m) * P, a, b) == 0 for m in range(n)
    )


def check_symmetry(P: Polynomial, n: int, a, b) -> bool:
    """True iff ``P(a+b-x) == (-1)^n P(x)`` coefficient-wise."""
    a, b = as_fraction(a), as_fraction(b)
    return compose_affine(P, -1, a + b) == P.scale((-1) ** n)


def ribp_sides(theta: Theta, f: Polynomial, a, b) -> tuple[Fraction, Fraction]:
    """Both sides of the n-fold integration by parts identity.

    Returns ``(int_a^b f, boundary terms + int (-1)^n f^(n) P)``.
    """
    a, b = as_fraction(a), as_fraction(b)
    n = theta.n
    alphas = alpha_coefficients(theta, a, b)
    rhs = Fraction(0)
    g = f
    for j in range(n):
        rhs += alphas.alpha_a[j] * g(a) + alphas.alpha_b[j] * g(b)
        g = g.derivative()
    rhs += (-1) ** n * definite_integral(g * build_kernel(theta), a, b)
    return definite_integral(f, a, b), rhs


def verify_ribp_identity(theta: Theta, f: Polynomial, a, b) -> bool:
    """Exact check of the identity; holds for any theta, solved or not."""
    lhs, rhs = ribp_sides(theta, f, a, b)
    return lhs == rhs
