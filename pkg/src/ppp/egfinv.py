"""Exponential-generating-function reciprocal construction.

From a primary pseudo-polynomial prefix a with a_0 = 1: b is its binomial
transform, c the coefficient sequence of 1/sum(b_n x^n / n!), and u the
inverse transform of c.  The resulting u is again a primary pseudo-polynomial,
with every prime p <= n dividing c_n.
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from math import factorial

from .arith import binomial_row
from .transforms import IntSequence, binomial_transform, inverse_binomial_transform


@dataclass(frozen=True)
class EgfTriple:
    b: IntSequence
    c: IntSequence
    u: IntSequence

    def to_json_dict(self) -> dict:
        return {
            "b": [str(t) for t in self.b.terms],
            "c": [str(t) for t in self.c.terms],
            "u": [str(t) for t in self.u.terms],
        }


def egf_reciprocal(b: IntSequence) -> IntSequence:
    """c with c_0 = 1 and sum_k C(n,k) b_k c_{n-k} = 0 for 1 <= n <= N.

    The convolution recursion c_n = -sum_{k>=1} C(n,k) b_k c_{n-k} stays in
    the integers because b_0 = 1; any other leading term is refused.
    """
    if b.offset != 0:
        raise ValueError("reciprocal requires offset 0")
    if b[0] != 1:
        raise ValueError(f"reciprocal requires b_0 = 1, got {b[0]}")
    cs = [1]
    for n in range(1, len(b)):
        row = binomial_row(n)
        cs.append(-sum(row[k] * b[k] * cs[n - k] for k in range(1, n + 1)))
    return IntSequence(tuple(cs))


def egf_triple(a: IntSequence) -> EgfTriple:
    """Full pipeline a -> (b, c, u); requires a_0 = 1."""
    if a.offset != 0:
        raise ValueError("construction requires offset 0")
    if a[0] != 1:
        raise ValueError(
            f"construction requires a_0 = 1, got {a[0]}; rescaling is refused "
            "because it changes the divisibility structure"
        )
    b = binomial_transform(a)
    c = egf_reciprocal(b)
    u = inverse_binomial_transform(c)
    return EgfTriple(b, c, u)


def u_over_factorial(u: IntSequence, precision: int = 30) -> list[Decimal]:
    """The ratios u_n / n! as decimals with ``precision`` significant digits.

    Each ratio is the exact rational rounded once.
    """
    if precision < 1:
        raise ValueError("precision must be at least 1 digit")
    out = []
    with localcontext() as ctx:
        ctx.prec = precision
        for i, t in enumerate(u.terms):
            n = u.offset + i
            out.append(Decimal(t) / Decimal(factorial(n)))
    return out
