"""Prefix certification of the primary/pseudo-polynomial congruence properties.

All verdicts are relative to the inspected prefix: "certified-up-to-N" never
claims anything about indices beyond N.
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal

import mpmath

from .arith import lcm_table, primes_up_to, primorial_table
from .transforms import IntSequence, binomial_transform

COUNTEREXAMPLE_CAP = 100


def _divides(m: int, w: int) -> bool:
    # Convention: 0 divides only 0.  Used by recurrence reports where the
    # "modulus" slot carries 0 and the witness is a residual.
    if m == 0:
        return w == 0
    return w % m == 0


@dataclass(frozen=True)
class Counterexample:
    n: int
    modulus: int
    witness: int

    def recheck(self) -> bool:
        """A genuine counterexample has a witness the modulus does not divide."""
        return not _divides(self.modulus, self.witness)


@dataclass(frozen=True)
class CertReport:
    certified: bool
    n: int  # top index of the inspected prefix
    counterexamples: tuple[Counterexample, ...] = ()
    truncated: bool = False
    subject: str = ""

    def __post_init__(self):
        if self.certified == bool(self.counterexamples):
            raise ValueError("verdict must be refuted iff counterexamples exist")

    @property
    def verdict(self) -> str:
        return f"certified-up-to-{self.n}" if self.certified else "refuted"

    def describe(self) -> str:
        head = f"{self.subject}: {self.verdict}"
        if self.certified:
            return head + f" (property checked on indices 0..{self.n} only)"
        shown = ", ".join(
            f"(n={c.n}, modulus={c.modulus}, witness={c.witness})"
            for c in self.counterexamples[:5]
        )
        more = " ..." if len(self.counterexamples) > 5 else ""
        trunc = " [counterexample list truncated]" if self.truncated else ""
        return head + f" with {len(self.counterexamples)} counterexample(s): {shown}{more}{trunc}"

    def to_json_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "N": str(self.n),
            "subject": self.subject,
            "truncated": self.truncated,
            "counterexamples": [
                {"n": str(c.n), "modulus": str(c.modulus), "witness": str(c.witness)}
                for c in self.counterexamples
            ],
        }


def make_report(subject: str, n: int, bad: list[Counterexample]) -> CertReport:
    bad.sort(key=lambda c: (c.n, c.modulus))
    truncated = len(bad) > COUNTEREXAMPLE_CAP
    return CertReport(
        certified=not bad,
        n=n,
        counterexamples=tuple(bad[:COUNTEREXAMPLE_CAP]),
        truncated=truncated,
        subject=subject,
    )


def certify_primary_direct(a: IntSequence) -> CertReport:
    """Check a_{n+p} == a_n (mod p) for every prime p and every n with n+p <= N."""
    if a.offset != 0:
        raise ValueError("certification requires offset 0")
    top = len(a) - 1
    bad: list[Counterexample] = []
    for p in primes_up_to(top).primes:
        residues = [t % p for t in a.terms]
        for n in range(top - p + 1):
            if residues[n + p] != residues[n]:
                bad.append(Counterexample(n, p, a[n + p] - a[n]))
    return make_report("primary-direct", top, bad)


def certify_primary_hall(a: IntSequence) -> CertReport:
    """Check that the primorial divides each binomial-transform term."""
    if a.offset != 0:
        raise ValueError("certification requires offset 0")
    top = len(a) - 1
    b = binomial_transform(a)
    prim = primorial_table(top)
    bad = [
        Counterexample(n, prim[n], b[n])
        for n in range(top + 1)
        if b[n] % prim[n] != 0
    ]
    return make_report("primary-hall", top, bad)


def certify_pseudo_hall(a: IntSequence) -> CertReport:
    """Check that lcm{1..n} divides each binomial-transform term."""
    if a.offset != 0:
        raise ValueError("certification requires offset 0")
    top = len(a) - 1
    b = binomial_transform(a)
    lcms = lcm_table(top)
    bad = [
        Counterexample(n, lcms[n], b[n])
        for n in range(top + 1)
        if b[n] % lcms[n] != 0
    ]
    return make_report("pseudo-hall", top, bad)


@dataclass(frozen=True)
class PolyDetect:
    """Outcome of the eventually-polynomial test on a prefix."""

    is_eventually_polynomial: bool
    m: int = 0  # last nonzero transform index when detected
    poly: tuple[tuple[int, int], ...] = ()  # (k, b_k) pairs: Q(X) = sum b_k*C(X,k)


def detect_polynomial(a: IntSequence, tail: int) -> PolyDetect:
    """Report polynomial structure iff the last ``tail`` transform terms vanish.

    When detected, returns the interpolating polynomial in the binomial-
    coefficient basis; it reproduces every prefix value.
    """
    if tail < 0:
        raise ValueError("tail must be a natural number")
    if tail >= len(a):
        raise ValueError(f"tail {tail} must be smaller than the prefix length {len(a)}")
    b = binomial_transform(a)
    window = b.terms[len(b) - tail :]
    if any(window):
        return PolyDetect(False)
    nonzero = [k for k, v in enumerate(b.terms) if v != 0]
    m = nonzero[-1] if nonzero else 0
    poly = tuple((k, b[k]) for k in nonzero)
    return PolyDetect(True, m, poly)


@dataclass(frozen=True)
class GrowthEstimate:
    """Empirical exponential-growth diagnostics, as 30-digit decimals."""

    last: Decimal
    tail_max: Decimal


def growth_exponent(a: IntSequence) -> GrowthEstimate:
    """log|a_N| / N at the last index, and the max over the last quarter.

    Purely diagnostic; no thresholds are applied here.
    """
    if len(a) < 8:
        raise ValueError("growth estimate needs a prefix of length >= 8")
    if not any(a.terms):
        raise ValueError("growth estimate undefined for the all-zero prefix")
    top = a.last_index
    with mpmath.workdps(40):
        def ratio(n: int) -> mpmath.mpf:
            return mpmath.log(abs(a[n - a.offset])) / n

        window = [
            n
            for n in range(max(a.offset + (3 * (top - a.offset)) // 4, a.offset + 1), top + 1)
            if a[n - a.offset] != 0
        ]
        if a[top - a.offset] == 0 or not window:
            raise ValueError("last-quarter window contains no usable nonzero terms")
        last = ratio(top)
        tail_max = max(ratio(n) for n in window)
        return GrowthEstimate(
            Decimal(mpmath.nstr(last, 30)), Decimal(mpmath.nstr(tail_max, 30))
        )
