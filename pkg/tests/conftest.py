"""Shared fixtures and brute-force oracles for the test suite.

The oracles work purely by lattice-point enumeration over explicit boxes
(numpy membership matrices) and stay independent of the staircase code they
check.
"""

from __future__ import annotations

import itertools
import random

import numpy as np
import pytest

from monolim import AmbientRing, MonomialIdeal


@pytest.fixture(scope="session")
def R2() -> AmbientRing:
    return AmbientRing.default(2)


@pytest.fixture(scope="session")
def R3() -> AmbientRing:
    return AmbientRing.default(3)


def box_points(bounds):
    """All lattice points of prod [0, b_i)."""
    return np.array(list(itertools.product(*[range(b) for b in bounds])),
                    dtype=np.int64).reshape(-1, len(bounds))


def membership(gens, pts: np.ndarray) -> np.ndarray:
    """Boolean membership of each point in the staircase of ``gens``."""
    if not gens:
        return np.zeros(len(pts), dtype=bool)
    G = np.array(gens, dtype=np.int64)
    return (pts[:, None, :] >= G[None, :, :]).all(axis=2).any(axis=1)


def joint_box(*ideals, margin: int = 2):
    d = ideals[0].ring.d
    hi = [0] * d
    for ideal in ideals:
        for g in ideal.gens:
            hi = [max(a, b) for a, b in zip(hi, g)]
    return [h + margin for h in hi]


def oracle_colength(I: MonomialIdeal):
    """Count of non-members inside the pure-power box; None if not primary."""
    d = I.ring.d
    pure = [I.pure_power(j) for j in range(d)]
    if any(p is None for p in pure):
        return None
    if I.is_unit:
        return 0
    pts = box_points([max(p, 1) for p in pure])
    return int((~membership(I.gens, pts)).sum())


def oracle_colon_members(I, J, pts: np.ndarray) -> np.ndarray:
    """a is a member of I : J iff a + g lies in I for every generator g of J."""
    out = np.ones(len(pts), dtype=bool)
    for g in J.gens:
        out &= membership(I.gens, pts + np.array(g, dtype=np.int64))
    return out


def random_exponent(rng: random.Random, d: int, max_exp: int):
    return tuple(rng.randint(0, max_exp) for _ in range(d))


def random_ideal(rng: random.Random, ring: AmbientRing, max_exp: int = 8,
                 max_gens: int = 5, nonzero: bool = True) -> MonomialIdeal:
    gens = [random_exponent(rng, ring.d, max_exp)
            for _ in range(rng.randint(1 if nonzero else 0, max_gens))]
    gens = [g for g in gens if any(g)] or ([(1,) + (0,) * (ring.d - 1)] if nonzero else [])
    return MonomialIdeal.from_gens(ring, gens)


def random_primary_ideal(rng: random.Random, ring: AmbientRing,
                         max_exp: int = 8, extra_gens: int = 3) -> MonomialIdeal:
    d = ring.d
    gens = []
    for j in range(d):
        e = [0] * d
        e[j] = rng.randint(1, max_exp)
        gens.append(tuple(e))
    for _ in range(rng.randint(0, extra_gens)):
        g = random_exponent(rng, d, max_exp)
        if any(g):
            gens.append(g)
    return MonomialIdeal.from_gens(ring, gens)
