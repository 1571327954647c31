"""Shapley value engines and the power-index entry point for simple games.

Two exact engines are provided: the n!-ordering average (the definition,
kept as a slow oracle) and the coalition-weighted sum (production).  Both
return the same rational vector wherever both are allowed to run.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import permutations

from . import _kernels
from ._rational import integer_scaled
from .errors import GuardLimitError
from .games import CoalitionalGame, PowerVector, is_simple

#: The ordering enumeration touches n * n! table entries.
PERMUTATION_PLAYER_LIMIT = 8
#: The coalition sum touches n * 2**n table entries.
COALITION_PLAYER_LIMIT = 24


def shapley_by_permutations(
    game: CoalitionalGame, *, unchecked: bool = False
) -> PowerVector:
    """Average marginal contribution over all n! player orderings."""
    n = game.n
    if not unchecked and n > PERMUTATION_PLAYER_LIMIT:
        raise GuardLimitError(
            f"n={n} exceeds PERMUTATION_PLAYER_LIMIT={PERMUTATION_PLAYER_LIMIT}; "
            "pass unchecked=True to force the n! enumeration"
        )
    values = game.values
    totals = [Fraction(0)] * n
    for order in permutations(range(n)):
        prefix = 0
        for pos in order:
            before = values[prefix]
            prefix |= 1 << pos
            totals[pos] += values[prefix] - before
    n_fact = math.factorial(n)
    return PowerVector(n, tuple(total / n_fact for total in totals))


def _scaled_table(game: CoalitionalGame):
    scaled = integer_scaled(game.values)
    if scaled is None:
        return 1, game.values
    return scaled


def shapley_by_coalitions(
    game: CoalitionalGame, *, unchecked: bool = False
) -> PowerVector:
    """Coalition-weighted marginal sum; equals the ordering average exactly."""
    n = game.n
    if not unchecked and n > COALITION_PLAYER_LIMIT:
        raise GuardLimitError(
            f"n={n} exceeds COALITION_PLAYER_LIMIT={COALITION_PLAYER_LIMIT}"
        )
    scale, table = _scaled_table(game)
    diffs = _kernels.shapley_diff_sums(table, n)
    fact = [math.factorial(k) for k in range(n + 1)]
    denominator = fact[n] * scale
    entries = []
    for i in range(n):
        row = diffs[i]
        total = sum(row[s] * fact[s] * fact[n - 1 - s] for s in range(n) if row[s])
        entries.append(Fraction(total) / denominator)
    return PowerVector(n, tuple(entries))


def shapley_shubik_index(game: CoalitionalGame) -> PowerVector:
    """Voting power of each player in a simple game (their pivot probability)."""
    if not is_simple(game):
        raise ValueError("SSI requires a simple game")
    return shapley_by_coalitions(game)
