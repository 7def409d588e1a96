"""Shared test helpers (input generation only; oracles live in oracles.py)."""

import random

from flatcert import Slope, SpottedArc, TwistUnit, canonicalize


def S(p: int, q: int) -> Slope:
    return canonicalize(p, q)


def random_slope(rng: random.Random, height: int = 60) -> Slope:
    while True:
        p = rng.randint(-height, height)
        q = rng.randint(0, height)
        if (p, q) != (0, 0):
            return canonicalize(p, q)


def random_half_arc(rng: random.Random, height: int = 60) -> SpottedArc:
    return SpottedArc(random_slope(rng, height), rng.randint(-25, 25), TwistUnit.HALF)
