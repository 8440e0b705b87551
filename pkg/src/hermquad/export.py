"""Lossless JSON serialisation of a Hermite rule (schema version 1).

Every exact number is written as a ``"p/q"`` string so the document
round-trips without rounding.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from hermquad.exact import Polynomial, as_fraction
from hermquad.hermite import WeightSet, hermite_weights
from hermquad.params import Theta, build_kernel, solve_theta

SCHEMA_VERSION = 1

__all__ = ["RuleExport", "SCHEMA_VERSION", "format_fraction", "parse_fraction"]


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    if not isinstance(text, str) or "/" not in text:
        raise ValueError(f"expected a 'p/q' string, got {text!r}")
    num, den = text.split("/")
    return Fraction(int(num), int(den))


@dataclass(frozen=True)
class RuleExport:
    n: int
    a: Fraction
    b: Fraction
    weights: WeightSet
    theta: Theta
    kernel: Polynomial
    schema_version: int = SCHEMA_VERSION

    @classmethod
    def build(cls, n: int, a, b) -> RuleExport:
        a, b = as_fraction(a), as_fraction(b)
        theta = solve_theta(n, a, b)
        return cls(n, a, b, hermite_weights(n, a, b), theta, build_kernel(theta))

    def to_dict(self) -> dict:
        fs = format_fraction
        return {
            "schema_version": self.schema_version,
            "n": self.n,
            "a": fs(self.a),
            "b": fs(self.b),
            "weights": {
                "w_a": [fs(w) for w in self.weights.w_a],
                "w_b": [fs(w) for w in self.weights.w_b],
            },
            "theta": {
                "c": fs(self.theta.c),
                "deltas": [fs(d) for d in self.theta.deltas],
            },
            "kernel": [fs(c) for c in self.kernel.coeffs],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, doc: dict) -> RuleExport:
        version = doc.get("schema_version")
        if version != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {version!r}")
        pf = parse_fraction
        n = int(doc["n"])
        a, b = pf(doc["a"]), pf(doc["b"])
        w = doc["weights"]
        weights = WeightSet(
            n, a, b, tuple(pf(x) for x in w["w_a"]), tuple(pf(x) for x in w["w_b"])
        )
        if len(weights.w_a) != n or len(weights.w_b) != n:
            raise ValueError("weight lists must have length n")
        th = doc["theta"]
        theta = Theta(n, pf(th["c"]), tuple(pf(d) for d in th["deltas"]))
        kernel = Polynomial(pf(c) for c in doc["kernel"])
        return cls(n, a, b, weights, theta, kernel, version)

    @classmethod
    def from_json(cls, text: str) -> RuleExport:
        return cls.from_dict(json.loads(text))
