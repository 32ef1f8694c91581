"""Binomial transform, its inverse, and truncated generating-series identities."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntSequence:
    """A finite prefix of an integer sequence.

    ``terms[i]`` is the value at index ``offset + i``.  All the transform
    formulas assume offset 0; sequences with other offsets must be re-indexed
    explicitly first.
    """

    terms: tuple[int, ...]
    offset: int = 0

    def __post_init__(self):
        if self.offset < 0:
            raise ValueError("offset must be a natural number")
        if not self.terms:
            raise ValueError("sequence prefix must be non-empty")
        for t in self.terms:
            if not isinstance(t, int):
                raise TypeError(f"sequence terms must be integers, got {type(t).__name__}")

    @staticmethod
    def of(values: Iterable[int], offset: int = 0) -> "IntSequence":
        return IntSequence(tuple(int(v) for v in values), offset)

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, i: int) -> int:
        return self.terms[i]

    @property
    def last_index(self) -> int:
        return self.offset + len(self.terms) - 1


@dataclass(frozen=True)
class RationalSeries:
    """Truncated power series with exact rational coefficients."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("series needs at least the constant coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1


def _require_offset_zero(s: IntSequence, what: str) -> None:
    if s.offset != 0:
        raise ValueError(f"{what} requires offset 0 (got {s.offset}); re-index first")


def binomial_transform(a: IntSequence) -> IntSequence:
    """b_n = sum_k (-1)^(n-k) C(n,k) a_k, i.e. the n-th forward difference at 0.

    Computed with the in-place difference triangle: O(N^2) additions and no
    multiplications.
    """
    _require_offset_zero(a, "binomial_transform")
    t = list(a.terms)
    n = len(t)
    for i in range(1, n):
        for j in range(n - 1, i - 1, -1):
            t[j] -= t[j - 1]
    return IntSequence(tuple(t))


def inverse_binomial_transform(b: IntSequence) -> IntSequence:
    """a_n = sum_k C(n,k) b_k, the inverse of :func:`binomial_transform`."""
    _require_offset_zero(b, "inverse_binomial_transform")
    t = list(b.terms)
    n = len(t)
    for i in range(n - 1, 0, -1):
        for j in range(i, n):
            t[j] += t[j - 1]
    return IntSequence(tuple(t))


def ogf_of(s: IntSequence) -> RationalSeries:
    """Ordinary generating function of the prefix, truncated at its length.

    A nonzero offset contributes leading zero coefficients.
    """
    zeros = (Fraction(0),) * s.offset
    return RationalSeries(zeros + tuple(Fraction(t) for t in s.terms))


def _mul_trunc(u: Sequence[int], v: Sequence[int], order: int) -> list[int]:
    out = [0] * (order + 1)
    for i, ui in enumerate(u[: order + 1]):
        if ui == 0:
            continue
        for j, vj in enumerate(v[: order + 1 - i]):
            out[i + j] += ui * vj
    return out


def _compose_trunc(f: Sequence[int], t: Sequence[int], order: int) -> list[int]:
    # Horner composition f(t(x)) mod x^(order+1); valid because t(0) = 0.
    if t[0] != 0:
        raise ValueError("composition requires a series with zero constant term")
    out = [0] * (order + 1)
    for c in reversed(list(f[: order + 1])):
        out = _mul_trunc(out, t, order)
        out[0] += c
    return out


def substitute_check(a: IntSequence, b: IntSequence, order: int) -> bool:
    """Check both generating-series substitution identities through x^order.

    f_b(x) = 1/(1+x) * f_a(x/(1+x)) and f_a(x) = 1/(1-x) * f_b(x/(1-x)),
    expanded by exact truncated composition.  True only if both hold.
    """
    if order < 0:
        raise ValueError("order must be a natural number")
    if len(a) <= order or len(b) <= order:
        raise ValueError(
            f"prefixes too short for order {order}: lengths {len(a)}, {len(b)}"
        )
    fa = [0] * a.offset + list(a.terms)
    fb = [0] * b.offset + list(b.terms)

    # x/(1+x) = x - x^2 + x^3 - ...,   1/(1+x) = 1 - x + x^2 - ...
    t_plus = [0] + [(-1) ** k for k in range(order)]
    inv_plus = [(-1) ** k for k in range(order + 1)]
    lhs1 = fb[: order + 1]
    rhs1 = _mul_trunc(inv_plus, _compose_trunc(fa, t_plus, order), order)

    # x/(1-x) = x + x^2 + ...,   1/(1-x) = 1 + x + x^2 + ...
    t_minus = [0] + [1] * order
    inv_minus = [1] * (order + 1)
    lhs2 = fa[: order + 1]
    rhs2 = _mul_trunc(inv_minus, _compose_trunc(fb, t_minus, order), order)

    return lhs1 == rhs1 and lhs2 == rhs2
