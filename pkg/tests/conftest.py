"""Shared fixtures and generators for the suite."""

import random
from fractions import Fraction

import pytest

from llct import session
from llct.exact import Scalar
from llct.wd import WDRep, SpehBlock, InertialAtom, UNR, sp


@pytest.fixture(autouse=True)
def fixed_q():
    session.set_q(3)
    yield


# Rational pool whose pairwise products, and products with powers of q = 3,
# never collide with 1: distinct primes away from 3 plus their inverses.
SAFE_POOL = [Fraction(2), Fraction(5), Fraction(7), Fraction(11),
             Fraction(1, 2), Fraction(1, 5), Fraction(1, 7), Fraction(13)]


def random_alpha(rng, qexp_range=2):
    c = rng.choice(SAFE_POOL)
    e = rng.randint(-qexp_range, qexp_range)
    return Scalar.make(c, qexp2=2 * e)


def random_unramified_rep(rng, max_rank=8, max_m=4) -> WDRep:
    blocks = []
    rank = 0
    while rank < max_rank:
        m = rng.randint(1, min(max_m, max_rank - rank))
        blocks.append(sp(random_alpha(rng), m))
        rank += m
        if rng.random() < 0.3:
            break
    return WDRep(blocks)


RAMIFIED_ATOMS = [
    InertialAtom("a", dim=2, f=2, cond=1, weight=0),
    InertialAtom("b", dim=1, f=3, cond=2, weight=1),
    InertialAtom("c", dim=3, f=1, cond=1, weight=0),
]


def random_mixed_rep(rng, max_rank=8) -> WDRep:
    blocks = []
    rank = 0
    while rank < max_rank:
        if rng.random() < 0.4:
            atom = rng.choice(RAMIFIED_ATOMS)
        else:
            atom = UNR
        m = rng.randint(1, 2)
        if rank + atom.dim * m > max_rank:
            break
        blocks.append(SpehBlock(atom, random_alpha(rng), m))
        rank += atom.dim * m
        if rng.random() < 0.3:
            break
    if not blocks:
        blocks = [sp(random_alpha(rng), 1)]
    return WDRep(blocks)


def seeded(n: int) -> random.Random:
    return random.Random(n)
