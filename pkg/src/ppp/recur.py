"""Guess, verify and apply linear recurrences with polynomial coefficients."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .certify import CertReport, Counterexample, make_report
from .transforms import IntSequence

# Largest 62-bit prime; used only to skip hopeless (order, degree) cells.
# Sound: a zero nullspace modulo any prime proves the rational nullspace is
# zero, so the filter can never discard a genuine candidate.
_FILTER_PRIME = 4611686018427387847


class LeadingZeroError(ArithmeticError):
    """Extension hit an index where the leading polynomial vanishes."""

    def __init__(self, n: int):
        self.n = n
        super().__init__(f"leading polynomial vanishes at n={n}")


class NonIntegralError(ArithmeticError):
    """Extension left the integers: the exact division had a remainder."""

    def __init__(self, n: int):
        self.n = n
        super().__init__(f"extension at n={n} is not an integer")


def _poly_eval(coeffs: tuple[int, ...], n: int) -> int:
    v = 0
    for c in reversed(coeffs):
        v = v * n + c
    return v


def _trim(coeffs) -> tuple[int, ...]:
    cs = list(coeffs)
    while len(cs) > 1 and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class PolyRecurrence:
    """sum_j polys[j](n) * a_{n+j} = 0, with integer-coefficient polynomials.

    Canonical form: content 1 and a positive leading coefficient on the
    highest-index nonzero polynomial.  Construct via :meth:`normalized`.
    """

    polys: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.polys:
            raise ValueError("a recurrence needs at least one polynomial")
        if all(all(c == 0 for c in p) for p in self.polys):
            raise ValueError("polynomials must not all be zero")

    @property
    def order(self) -> int:
        return len(self.polys) - 1

    @staticmethod
    def normalized(polys) -> "PolyRecurrence":
        ps = [_trim(p) for p in polys]
        while len(ps) > 1 and ps[-1] == (0,):
            ps.pop()
        content = 0
        for p in ps:
            for c in p:
                content = math.gcd(content, c)
        if content == 0:
            raise ValueError("polynomials must not all be zero")
        ps = [tuple(c // content for c in p) for p in ps]
        lead = ps[-1][-1]
        if lead < 0:
            ps = [tuple(-c for c in p) for p in ps]
        return PolyRecurrence(tuple(ps))

    def degree_vector(self) -> tuple[int, ...]:
        return tuple(-1 if p == (0,) else len(p) - 1 for p in self.polys)

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "polys": [[str(c) for c in p] for p in self.polys],
        }

    @staticmethod
    def from_json_dict(d: dict) -> "PolyRecurrence":
        polys = tuple(tuple(int(c) for c in p) for p in d["polys"])
        r = PolyRecurrence(polys)
        if r.order != int(d["order"]):
            raise ValueError("order field disagrees with the polynomial list")
        return r


@dataclass(frozen=True)
class GuessBudget:
    """Search limits; the margin is the tail reserved for verification."""

    s_max: int
    d_max: int
    verify_margin: int = 10

    def required_length(self) -> int:
        return (self.s_max + 1) * (self.d_max + 1) + self.s_max + self.verify_margin

    def check(self, prefix_len: int) -> None:
        if self.s_max < 0 or self.d_max < 0 or self.verify_margin < 0:
            raise ValueError("budget fields must be natural numbers")
        need = self.required_length()
        if need > prefix_len:
            raise ValueError(
                f"budget infeasible: needs prefix length >= {need}, got {prefix_len}"
            )


def verify_recurrence(a: IntSequence, rec: PolyRecurrence) -> CertReport:
    """Check the recurrence identity exactly at every prefix index.

    Counterexamples carry modulus 0 and the nonzero residual as witness.
    """
    if a.offset != 0:
        raise ValueError("verification requires offset 0")
    s = rec.order
    if len(a) <= s:
        raise ValueError(f"prefix length {len(a)} must exceed the order {s}")
    top = len(a) - 1
    bad = []
    for n in range(top - s + 1):
        residual = sum(_poly_eval(rec.polys[j], n) * a[n + j] for j in range(s + 1))
        if residual != 0:
            bad.append(Counterexample(n, 0, residual))
    return make_report("recurrence", top, bad)


def apply_recurrence(rec: PolyRecurrence, initial: IntSequence, n_max: int) -> IntSequence:
    """Extend the initial terms to index n_max by solving for the top term."""
    if initial.offset != 0:
        raise ValueError("extension requires offset 0")
    s = rec.order
    if len(initial) < s:
        raise ValueError(f"need at least {s} initial terms, got {len(initial)}")
    terms = list(initial.terms)
    for m in range(len(terms), n_max + 1):
        n = m - s
        lead = _poly_eval(rec.polys[s], n)
        if lead == 0:
            raise LeadingZeroError(n)
        rhs = -sum(_poly_eval(rec.polys[j], n) * terms[n + j] for j in range(s))
        q, r = divmod(rhs, lead)
        if r != 0:
            raise NonIntegralError(n)
        terms.append(q)
    return IntSequence(tuple(terms[: n_max + 1]))


def _cells(s_max: int, d_max: int):
    # Ascending order+degree total, ties broken by smaller order.
    cells = [(s, d) for s in range(s_max + 1) for d in range(d_max + 1)]
    cells.sort(key=lambda sd: (sd[0] + sd[1], sd[0]))
    return cells


def _mod_nullspace_is_zero(rows: list[list[int]], ncols: int) -> bool:
    p = _FILTER_PRIME
    mat = [[x % p for x in row] for row in rows]
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(mat)):
            if mat[r][col]:
                pivot = r
                break
        if pivot is None:
            return False  # free column: nullspace nonzero mod p, cannot skip
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = pow(mat[rank][col], -1, p)
        prow = [x * inv % p for x in mat[rank]]
        mat[rank] = prow
        for r in range(rank + 1, len(mat)):
            f = mat[r][col]
            if f:
                mat[r] = [(x - f * y) % p for x, y in zip(mat[r], prow)]
        rank += 1
    return rank == ncols


def _rational_nullspace(rows: list[list[int]], ncols: int) -> list[list[Fraction]]:
    """Nullspace basis via exact Gauss-Jordan elimination over the rationals."""
    mat = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(mat)):
            if mat[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -mat[r][fc]
        basis.append(v)
    return basis


def _integerize(vec: list[Fraction]) -> list[int]:
    den = math.lcm(*(f.denominator for f in vec)) if vec else 1
    ints = [int(f * den) for f in vec]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return [x // g for x in ints] if g else ints


def _candidate_from_vector(vec: list[int], s: int, d: int) -> PolyRecurrence | None:
    polys = [tuple(vec[j * (d + 1) : (j + 1) * (d + 1)]) for j in range(s + 1)]
    if all(all(c == 0 for c in p) for p in polys):
        return None
    return PolyRecurrence.normalized(polys)


def guess_recurrence(a: IntSequence, budget: GuessBudget) -> PolyRecurrence | None:
    """Search for a recurrence holding on the whole prefix.

    Cells (order, degree) are visited in ascending total, ties by smaller
    order.  A cell's homogeneous system uses every index except a reserved
    tail; a candidate is returned only if it also verifies on that tail (and,
    re-checked, on the full prefix).  Returns None when no cell succeeds: a
    budget-relative outcome, not a proof that no recurrence exists.
    """
    if a.offset != 0:
        raise ValueError("guessing requires offset 0")
    budget.check(len(a))
    length = len(a)
    for s, d in _cells(budget.s_max, budget.d_max):
        ncols = (s + 1) * (d + 1)
        solve_top = length - s - budget.verify_margin  # rows: n in [0, solve_top)
        rows = []
        for n in range(solve_top):
            powers = [n**i for i in range(d + 1)]
            row = []
            for j in range(s + 1):
                anj = a[n + j]
                row.extend(anj * pw for pw in powers)
            rows.append(row)
        if _mod_nullspace_is_zero(rows, ncols):
            continue
        basis = _rational_nullspace(rows, ncols)
        if not basis:
            continue
        candidates = []
        for vec in basis:
            cand = _candidate_from_vector(_integerize(vec), s, d)
            if cand is not None:
                candidates.append(cand)
        if not candidates:
            continue
        candidates.sort(key=lambda r: (r.degree_vector(), r.polys))
        for cand in candidates:
            if verify_recurrence(a, cand).certified:
                return cand
    return None
