"""Recursive construction of genuine primary pseudo-polynomials.

Given a target growth function phi with phi(0) = 1, builds (A_n) with
phi(n) <= A_n <= phi(n) + 2*primorial(n) whose transform terms B_n are all
nonzero multiples of primorial(n).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .arith import binomial_row, primorial_table
from .transforms import IntSequence

GrowthFn = Callable[[int], Fraction]


def phi_primorial() -> GrowthFn:
    """Preset phi(n) = primorial(n)."""
    def phi(n: int) -> Fraction:
        return Fraction(primorial_table(n)[n])
    return phi


def phi_geometric(delta: Fraction) -> GrowthFn:
    """Preset phi(n) = delta^n for an exact rational ratio delta.

    Useful ratios sit strictly between e and 2*sqrt(e); nothing is enforced
    here, any positive rational is accepted.
    """
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError("geometric ratio must be positive")
    def phi(n: int) -> Fraction:
        return delta**n
    return phi


def phi_table(values) -> GrowthFn:
    """Preset backed by explicit values; index beyond the table is an error."""
    vals = [Fraction(v) for v in values]
    def phi(n: int) -> Fraction:
        if n >= len(vals):
            raise ValueError(f"growth table has no value at index {n}")
        return vals[n]
    return phi


def _exact_rational(q) -> Fraction:
    if isinstance(q, float):
        raise TypeError("growth values must be exact rationals, not floats")
    return Fraction(q)


def ceil_div_rational(q: Fraction, m: int) -> int:
    """Exact ceiling of q/m for a rational q and a positive integer m."""
    if m <= 0:
        raise ValueError("divisor must be positive")
    return math.ceil(_exact_rational(q) / m)


@dataclass(frozen=True)
class ConstructStep:
    """One step of the recursion, kept for auditability.

    c = sum_{k<n} C(n,k) B_k, with euclidean division c = u*P + v
    (0 <= v < P); then B_n = w*P and A_n = B_n + c.
    """

    n: int
    c: int
    u: int
    v: int
    w: int
    b: int
    a: int


@dataclass(frozen=True)
class ConstructTrace:
    steps: tuple[ConstructStep, ...]


def construct_genuine(
    phi: GrowthFn, n_max: int
) -> tuple[IntSequence, IntSequence, ConstructTrace]:
    """Run the recursion up to index n_max; returns (A, B, trace).

    At each step the multiplier w is the ceiling correction
    ceil((phi(n)-v)/P) - u when that is nonzero, else 1, which pins A_n into
    [phi(n), phi(n)+2P].  phi values must be exact rationals.
    """
    if n_max < 0:
        raise ValueError("n_max must be a natural number")
    phi0 = _exact_rational(phi(0))
    if phi0 != 1:
        raise ValueError(f"growth function must satisfy phi(0) = 1, got {phi0}")
    prim = primorial_table(n_max)
    bs: list[int] = []
    steps: list[ConstructStep] = []
    a_terms: list[int] = []
    for n in range(n_max + 1):
        row = binomial_row(n)
        c = sum(row[k] * bs[k] for k in range(n))
        p = prim[n]
        u, v = divmod(c, p)
        t = ceil_div_rational(_exact_rational(phi(n)) - v, p)
        w = t - u if t != u else 1
        b = w * p
        a = c + b
        bs.append(b)
        a_terms.append(a)
        steps.append(ConstructStep(n, c, u, v, w, b, a))
    return (
        IntSequence(tuple(a_terms)),
        IntSequence(tuple(bs)),
        ConstructTrace(tuple(steps)),
    )
