"""Two-point Hermite interpolation and the matching quadrature weights."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from hermquad.exact import Polynomial, as_fraction, binomial, factorial

__all__ = [
    "EndpointData",
    "WeightSet",
    "apply_rule",
    "hermite_interpolant",
    "hermite_weights",
    "rising_factorial",
]


@dataclass(frozen=True)
class EndpointData:
    """Values ``f(a), f'(a), ..., f^(n-1)(a)`` and the same at ``b``."""

    a: Fraction
    b: Fraction
    derivs_at_a: tuple[Fraction, ...]
    derivs_at_b: tuple[Fraction, ...]

    def __init__(self, a, b, derivs_at_a: Sequence, derivs_at_b: Sequence):
        a, b = as_fraction(a), as_fraction(b)
        if a == b:
            raise ValueError("endpoints must be distinct")
        da = tuple(as_fraction(v) for v in derivs_at_a)
        db = tuple(as_fraction(v) for v in derivs_at_b)
        if len(da) != len(db):
            raise ValueError(
                f"derivative lists differ in length ({len(da)} vs {len(db)})"
            )
        if not da:
            raise ValueError("need at least the function values (n >= 1)")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "derivs_at_a", da)
        object.__setattr__(self, "derivs_at_b", db)

    @property
    def n(self) -> int:
        return len(self.derivs_at_a)

    @classmethod
    def from_polynomial(cls, f: Polynomial, n: int, a, b) -> EndpointData:
        """Sample ``f`` and its first ``n-1`` derivatives at both endpoints."""
        da, db = [], []
        g = f
        for _ in range(n):
            da.append(g(a))
            db.append(g(b))
            g = g.derivative()
        return cls(a, b, da, db)


@dataclass(frozen=True)
class WeightSet:
    n: int
    a: Fraction
    b: Fraction
    w_a: tuple[Fraction, ...]
    w_b: tuple[Fraction, ...]


def _check_interval(n: int, a, b) -> tuple[Fraction, Fraction]:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    a, b = as_fraction(a), as_fraction(b)
    if a == b:
        raise ValueError("endpoints must be distinct")
    return a, b


def hermite_weights(n: int, a, b) -> WeightSet:
    """Exact weights such that the rule equals the integral of H_n(f; x).

    ``w_a[j] = (b-a)^(j+1) * n * sum_{k=j}^{n-1} C(k,j) (n+k-j-1)! / (n+k+1)!``
    and ``w_b[j] = (-1)^j w_a[j]``.
    """
    a, b = _check_interval(n, a, b)
    h = b - a
    w_a = []
    for j in range(n):
        s = sum(
            Fraction(binomial(k, j) * factorial(n + k - j - 1), factorial(n + k + 1))
            for k in range(j, n)
        )
        w_a.append(h ** (j + 1) * n * s)
    w_b = [(-1) ** j * w for j, w in enumerate(w_a)]
    return WeightSet(n, a, b, tuple(w_a), tuple(w_b))


def rising_factorial(n: int, m: int) -> int:
    """``n (n+1) ... (n+m-1)``; empty product for ``m = 0``."""
    out = 1
    for i in range(m):
        out *= n + i
    return out


def _taylor_quotient(derivs: Sequence[Fraction], x0: Fraction, other: Fraction, n: int):
    """k-th derivatives at x0 of ``f(x) / (x - other)^n`` for k < n (Leibniz rule)."""
    d = x0 - other
    out = []
    for k in range(n):
        acc = Fraction(0)
        for m in range(k + 1):
            # d^m/dx^m (x - other)^(-n) = (-1)^m n(n+1)...(n+m-1) (x - other)^(-n-m)
            g_m = Fraction((-1) ** m * rising_factorial(n, m)) / d ** (n + m)
            acc += binomial(k, m) * derivs[k - m] * g_m
        out.append(acc)
    return out


def hermite_interpolant(data: EndpointData) -> Polynomial:
    """The unique degree <= 2n-1 polynomial matching the endpoint data.

    ``H = (x-a)^n sum_k B_k (x-b)^k/k! + (x-b)^n sum_k A_k (x-a)^k/k!`` where
    ``A_k`` (``B_k``) are derivatives of ``f/(x-b)^n`` at ``a`` (``f/(x-a)^n`` at ``b``).
    """
    a, b, n = data.a, data.b, data.n
    A = _taylor_quotient(data.derivs_at_a, a, b, n)
    B = _taylor_quotient(data.derivs_at_b, b, a, n)
    xa = Polynomial([-a, 1])
    xb = Polynomial([-b, 1])
    sum_a = Polynomial()
    sum_b = Polynomial()
    pa = Polynomial([1])
    pb = Polynomial([1])
    for k in range(n):
        sum_a = sum_a + pa.scale(A[k] / factorial(k))
        sum_b = sum_b + pb.scale(B[k] / factorial(k))
        pa = pa * xa
        pb = pb * xb
    return xa**n * sum_b + xb**n * sum_a


def apply_rule(w: WeightSet, data: EndpointData) -> Fraction:
    """``sum_j w_a[j] f^(j)(a) + w_b[j] f^(j)(b)``, exactly."""
    if data.n != w.n:
        raise ValueError(f"rule has n={w.n} but data carries n={data.n}")
    if (data.a, data.b) != (w.a, w.b):
        raise ValueError("rule and data are on different intervals")
    return sum(
        (wa * fa + wb * fb
         for wa, wb, fa, fb in zip(w.w_a, w.w_b, data.derivs_at_a, data.derivs_at_b)),
        Fraction(0),
    )
