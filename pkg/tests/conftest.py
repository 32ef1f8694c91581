import random
from fractions import Fraction
from math import comb, factorial

import pytest

from ppp.transforms import IntSequence


def direct_transform(terms):
    """Per-term alternating binomial sum; the independent oracle."""
    return [
        sum((-1) ** (n - k) * comb(n, k) * terms[k] for k in range(n + 1))
        for n in range(len(terms))
    ]


def direct_inverse(terms):
    return [
        sum(comb(n, k) * terms[k] for k in range(n + 1))
        for n in range(len(terms))
    ]


def random_prefix(rng: random.Random, max_len=64, bits=128) -> IntSequence:
    length = rng.randint(2, max_len)
    terms = [rng.getrandbits(bits) * rng.choice((1, -1)) for _ in range(length)]
    return IntSequence.of(terms)


def e_bracket(k=300):
    """Exact rationals lo < e < hi with gap 2/(k+1)!."""
    partial = sum(Fraction(1, factorial(i)) for i in range(k + 1))
    return partial, partial + Fraction(2, factorial(k + 1))


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
