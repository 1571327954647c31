"""Seeded random generators shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from pivotal import (
    CoalitionDistribution,
    CoalitionalGame,
    from_size_profile,
    is_exchangeable,
)
from pivotal._bits import iter_submasks


def random_game(rng: random.Random, n: int, magnitude: int = 12,
                max_denominator: int = 8) -> CoalitionalGame:
    values = [Fraction(0)]
    for _ in range((1 << n) - 1):
        values.append(
            Fraction(rng.randint(-magnitude, magnitude), rng.randint(1, max_denominator))
        )
    return CoalitionalGame(n, tuple(values))


def random_simple_game(rng: random.Random, n: int, density: float = 0.25) -> CoalitionalGame:
    """Random monotone 0/1 game: upward closure of random seed coalitions."""
    full = (1 << n) - 1
    winning = [False] * (full + 1)
    for mask in range(1, full + 1):
        if rng.random() < density:
            winning[mask] = True
    for b in range(n):
        bit = 1 << b
        for mask in range(full + 1):
            if mask & bit and winning[mask ^ bit]:
                winning[mask] = True
    winning[full] = True
    one, zero = Fraction(1), Fraction(0)
    return CoalitionalGame(n, tuple(one if w else zero for w in winning))


def random_distribution(rng: random.Random, n: int) -> CoalitionDistribution:
    while True:
        weights = [rng.randint(0, 9) for _ in range(1 << n)]
        total = sum(weights)
        if total:
            return CoalitionDistribution(
                n, tuple(Fraction(w, total) for w in weights)
            )


def random_exchangeable(rng: random.Random, n: int) -> CoalitionDistribution:
    while True:
        profile = [rng.randint(0, 9) for _ in range(n + 1)]
        total = sum(profile)
        if total:
            return from_size_profile([Fraction(q, total) for q in profile])


def random_non_exchangeable(rng: random.Random, n: int) -> CoalitionDistribution:
    assert n >= 2
    for _ in range(1000):
        p = random_distribution(rng, n)
        if not is_exchangeable(p):
            return p
    raise AssertionError("failed to draw a non-exchangeable distribution")


def game_with_equivalent_pair(rng: random.Random, n: int, i: int, j: int) -> CoalitionalGame:
    """Random game adjusted so players i and j are equivalent by construction."""
    game = random_game(rng, n)
    values = list(game.values)
    bit_i = 1 << (i - 1)
    bit_j = 1 << (j - 1)
    rest = ((1 << n) - 1) ^ bit_i ^ bit_j
    for sub in iter_submasks(rest):
        values[sub | bit_j] = values[sub | bit_i]
    return CoalitionalGame(n, tuple(values))
