import math

import pytest

from ppp.recur import (
    GuessBudget,
    LeadingZeroError,
    NonIntegralError,
    PolyRecurrence,
    apply_recurrence,
    guess_recurrence,
    verify_recurrence,
)
from ppp.arith import primorial_table
from ppp.construct import construct_genuine, phi_primorial
from ppp.transforms import IntSequence

# e_{n+2} = (n+4) e_{n+1} - (n+2) e_n, canonically normalized
E_REC = PolyRecurrence(((2, 1), (-4, -1), (1,)))


def e_prefix(n_max):
    return apply_recurrence(E_REC, IntSequence.of([2, 5]), n_max)


def shifted_factorial_sum(n):
    # e_n = sum_{k<=n+1} C(n+1,k) k!
    return sum(math.comb(n + 1, k) * math.factorial(k) for k in range(n + 2))


def test_apply_matches_known_values():
    ext = e_prefix(10)
    assert ext.terms == (2, 5, 16, 65, 326, 1957, 13700, 109601, 986410,
                         9864101, 108505112)


def test_apply_constant_recurrence():
    rec = PolyRecurrence(((-1,), (1,)))  # a_{n+1} = a_n
    assert apply_recurrence(rec, IntSequence.of([7]), 3).terms == (7, 7, 7, 7)


def test_apply_leading_zero():
    # leading polynomial X - 3 vanishes at n = 3
    rec = PolyRecurrence(((1,), (-3, 1)))
    with pytest.raises(LeadingZeroError) as info:
        apply_recurrence(rec, IntSequence.of([6]), 10)
    assert info.value.n == 3


def test_apply_non_integral():
    rec = PolyRecurrence(((-1,), (2,)))  # 2 a_{n+1} = a_n
    with pytest.raises(NonIntegralError) as info:
        apply_recurrence(rec, IntSequence.of([7]), 4)
    assert info.value.n == 0


def test_apply_needs_enough_initial_terms():
    with pytest.raises(ValueError):
        apply_recurrence(E_REC, IntSequence.of([2]), 10)


def test_verify_certifies_e_recurrence():
    assert verify_recurrence(e_prefix(40), E_REC).certified


def test_verify_catches_corruption():
    terms = list(e_prefix(40).terms)
    terms[17] += 1
    rep = verify_recurrence(IntSequence.of(terms), E_REC)
    assert not rep.certified
    failing = {c.n for c in rep.counterexamples}
    # index 17 participates in equations n = 15, 16, 17
    assert failing == {15, 16, 17}
    assert all(c.modulus == 0 and c.witness != 0 for c in rep.counterexamples)


def test_verify_constant():
    rec = PolyRecurrence(((-1,), (1,)))
    assert verify_recurrence(IntSequence.of([5] * 8), rec).certified


def test_normalization_canonical_form():
    messy = PolyRecurrence.normalized([(4, 2), (-8, -2), (2, 0, 0)])
    assert messy.polys == ((2, 1), (-4, -1), (1,))
    # idempotent
    assert PolyRecurrence.normalized(messy.polys) == messy
    # sign flip lands on the same form
    flipped = PolyRecurrence.normalized([(-4, -2), (8, 2), (-2,)])
    assert flipped == messy


def test_normalization_rejects_zero():
    with pytest.raises(ValueError):
        PolyRecurrence.normalized([(0, 0), (0,)])


def test_guess_first_order_linear():
    a = IntSequence.of(range(1, 40))  # a_n = n + 1
    rec = guess_recurrence(a, GuessBudget(1, 1))
    assert rec == PolyRecurrence(((-2, -1), (1, 1)))
    assert verify_recurrence(a, rec).certified


def test_guess_recovers_e_recurrence():
    rec = guess_recurrence(e_prefix(39), GuessBudget(4, 4))
    assert rec == E_REC


def test_guess_scaling_invariance():
    a = e_prefix(39)
    doubled = IntSequence.of([2 * t for t in a.terms])
    assert guess_recurrence(doubled, GuessBudget(4, 4)) == guess_recurrence(a, GuessBudget(4, 4))


def test_guess_full_prefix_soundness(rng):
    # random C-finite-style inputs: the guess must verify everywhere
    for _ in range(10):
        x, y = rng.randint(-4, 4), rng.randint(-4, 4)
        terms = [rng.randint(-9, 9), rng.randint(-9, 9)]
        for _ in range(38):
            terms.append(x * terms[-1] + y * terms[-2])
        rec = guess_recurrence(IntSequence.of(terms), GuessBudget(3, 2))
        if rec is not None:
            assert verify_recurrence(IntSequence.of(terms), rec).certified


def test_guess_negative_control_primorials():
    a = IntSequence.of(primorial_table(59))
    assert guess_recurrence(a, GuessBudget(4, 4)) is None


def test_guess_negative_control_constructed():
    a, _, _ = construct_genuine(phi_primorial(), 59)
    assert guess_recurrence(a, GuessBudget(4, 4)) is None


def test_budget_infeasible():
    with pytest.raises(ValueError):
        guess_recurrence(IntSequence.of(range(10)), GuessBudget(4, 4))


def test_roundtrip_guess_apply_matches_oracles():
    rec = guess_recurrence(e_prefix(39), GuessBudget(4, 4))
    ext = apply_recurrence(rec, IntSequence.of([2, 5]), 200)
    for n in range(201):
        assert ext[n] == shifted_factorial_sum(n)


def test_json_round_trip():
    d = E_REC.to_json_dict()
    assert d == {"order": 2, "polys": [["2", "1"], ["-4", "-1"], ["1"]]}
    assert PolyRecurrence.from_json_dict(d) == E_REC
    with pytest.raises(ValueError):
        PolyRecurrence.from_json_dict({"order": 1, "polys": [["1"]]})
