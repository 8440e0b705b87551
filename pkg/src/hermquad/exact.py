"""Exact rational scalars and dense univariate polynomials.

Scalars are :class:`fractions.Fraction`, which already keeps numerator and
denominator coprime with a positive denominator after every operation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

import numpy as np

Scalar = Union[int, Fraction]

__all__ = [
    "Polynomial",
    "antiderivative",
    "as_fraction",
    "binomial",
    "compose_affine",
    "definite_integral",
    "derivative",
    "factorial",
    "poly_from_roots",
]


def as_fraction(value) -> Fraction:
    """Convert ints, Fractions, exact strings ("3/4") or floats to a Fraction.

    Floats are converted exactly (every binary64 is a dyadic rational).
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (Rational, str)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"cannot represent {value!r} exactly")
        return Fraction(value)
    raise TypeError(f"cannot convert {type(value).__name__} to Fraction")


def factorial(k: int) -> int:
    if k < 0:
        raise ValueError(f"factorial of negative number {k}")
    return math.factorial(k)


def binomial(k: int, j: int) -> int:
    """k choose j, rejecting j > k instead of returning 0."""
    if k < 0 or j < 0:
        raise ValueError(f"binomial({k}, {j}): arguments must be non-negative")
    if j > k:
        raise ValueError(f"binomial({k}, {j}): j exceeds k")
    return math.comb(k, j)


@dataclass(frozen=True)
class Polynomial:
    """Dense polynomial; ``coeffs[i]`` multiplies ``x**i``.

    Trailing zeros are stripped on construction, so the zero polynomial is the
    empty tuple and its :attr:`degree` is ``None``.
    """

    coeffs: tuple[Fraction, ...] = ()

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def constant(cls, value) -> Polynomial:
        return cls([value])

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> Polynomial:
        return cls([0] * degree + [coeff])

    @classmethod
    def linear(cls, slope, intercept) -> Polynomial:
        """``slope * x + intercept``."""
        return cls([intercept, slope])

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __repr__(self) -> str:
        return f"Polynomial([{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append(f"-{mono}")
            elif mono:
                terms.append(f"({c})*{mono}")
            else:
                terms.append(f"{c}")
        return " + ".join(terms)

    def __neg__(self) -> Polynomial:
        return Polynomial(-c for c in self.coeffs)

    def __add__(self, other) -> Polynomial:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self), len(other))
        return Polynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __sub__(self, other) -> Polynomial:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        return -self + other

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, (Rational, float)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self) + len(other) - 1)
        for i, p in enumerate(self.coeffs):
            if p == 0:
                continue
            for j, q in enumerate(other.coeffs):
                out[i + j] += p * q
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        if k < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, s) -> Polynomial:
        s = as_fraction(s)
        return Polynomial(c * s for c in self.coeffs)

    def __call__(self, x) -> Fraction:
        """Exact evaluation by Horner's rule."""
        x = as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self, k: int = 1) -> Polynomial:
        p = self
        for _ in range(k):
            p = Polynomial(i * c for i, c in enumerate(p.coeffs) if i > 0)
        return p

    def antiderivative(self) -> Polynomial:
        """Antiderivative with zero constant term."""
        return Polynomial([0] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def integrate(self, a, b) -> Fraction:
        return definite_integral(self, a, b)

    def compose_affine(self, alpha, beta) -> Polynomial:
        return compose_affine(self, alpha, beta)

    def divmod(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        """Euclidean division ``self = q * other + r`` with ``deg r < deg other``."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(self) - len(other) + 1
        if dq <= 0:
            return Polynomial(), self
        quot = [Fraction(0)] * dq
        lead = other.leading
        for k in range(dq - 1, -1, -1):
            coef = rem[k + len(other) - 1] / lead
            quot[k] = coef
            if coef:
                for j, oc in enumerate(other.coeffs):
                    rem[k + j] -= coef * oc
        return Polynomial(quot), Polynomial(rem[: len(other) - 1])

    def to_floats(self) -> np.ndarray:
        return np.array([float(c) for c in self.coeffs], dtype=float)

    def evalf(self, x):
        """Floating-point Horner evaluation; accepts scalars or arrays."""
        x = np.asarray(x, dtype=float)
        acc = np.zeros_like(x)
        for c in reversed(self.to_floats()):
            acc = acc * x + c
        return acc


def _coerce(other):
    if isinstance(other, Polynomial):
        return other
    if isinstance(other, (Rational, float)) and not isinstance(other, bool):
        return Polynomial([other])
    return NotImplemented


def derivative(p: Polynomial) -> Polynomial:
    return p.derivative()


def antiderivative(p: Polynomial) -> Polynomial:
    return p.antiderivative()


def definite_integral(p: Polynomial, a, b) -> Fraction:
    prim = p.antiderivative()
    return prim(b) - prim(a)


def compose_affine(p: Polynomial, alpha, beta) -> Polynomial:
    """Return q with ``q(x) = p(alpha*x + beta)``, via Horner on polynomials."""
    inner = Polynomial.linear(alpha, beta)
    acc = Polynomial()
    for c in reversed(p.coeffs):
        acc = acc * inner + c
    return acc


def poly_from_roots(roots: Sequence[Scalar]) -> Polynomial:
    acc = Polynomial([1])
    for r in roots:
        acc = acc * Polynomial([-as_fraction(r), 1])
    return acc
