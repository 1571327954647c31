"""Joint probability distributions over cooperation patterns.

A distribution assigns an exact rational mass to every coalition (the set of
players who end up cooperating).  Exchangeability — masses that depend only
on the coalition's size — is the property that decides whether the roll-call
value collapses to the Shapley value, so this module also provides the exact
test and a deterministic violation witness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ._bits import swap_bits
from ._rational import Rational, as_fraction
from .errors import GuardLimitError
from .games import MAX_PLAYERS, Coalition, _check_player_count

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class CoalitionDistribution:
    """Probability mass function over all 2**n coalitions, exact and complete."""

    n: int
    pmf: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        _check_player_count(self.n)
        if len(self.pmf) != 1 << self.n:
            raise ValueError(
                f"mass table has {len(self.pmf)} entries, expected {1 << self.n}"
            )
        total = _ZERO
        for mask, mass in enumerate(self.pmf):
            if mass < 0:
                raise ValueError(f"p[{mask}] is negative: {mass}")
            total += mass
        if total != 1:
            raise ValueError(f"masses sum to {total}, expected 1")

    def mass(self, s: Coalition) -> Fraction:
        if s.n != self.n:
            raise ValueError("player-count mismatch")
        return self.pmf[s.mask]


def explicit_distribution(
    n: int, masses: Sequence[Rational]
) -> CoalitionDistribution:
    """Distribution given verbatim as one mass per coalition mask."""
    table = tuple(as_fraction(m, where=f"p[{k}]") for k, m in enumerate(masses))
    return CoalitionDistribution(n, table)


def independent_distribution(x: Sequence[Rational]) -> CoalitionDistribution:
    """Independent votes: player i cooperates with probability x[i-1]."""
    probs = [as_fraction(value, where=f"x[{k}]") for k, value in enumerate(x)]
    n = len(probs)
    _check_player_count(n)
    for k, prob in enumerate(probs):
        if not 0 <= prob <= 1:
            raise ValueError(f"x[{k}] = {prob} is outside [0, 1]")
    table = [_ONE] * (1 << n)
    for k, prob in enumerate(probs):
        bit = 1 << k
        against = 1 - prob
        for mask in range(1 << n):
            table[mask] *= prob if mask & bit else against
    return CoalitionDistribution(n, tuple(table))


def uniform_distribution(n: int) -> CoalitionDistribution:
    """Every coalition equally likely: mass 2**-n throughout."""
    _check_player_count(n)
    mass = Fraction(1, 1 << n)
    return CoalitionDistribution(n, (mass,) * (1 << n))


def point_mass(n: int, s: Coalition) -> CoalitionDistribution:
    """All probability on one cooperation pattern."""
    _check_player_count(n)
    if s.n != n:
        raise ValueError("player-count mismatch")
    table = [_ZERO] * (1 << n)
    table[s.mask] = _ONE
    return CoalitionDistribution(n, tuple(table))


def from_size_profile(q: Sequence[Rational]) -> CoalitionDistribution:
    """Exchangeable distribution with q[k] the total mass of size-k coalitions.

    The mass q[k] is split evenly over the C(n, k) coalitions of size k, so
    the result depends only on coalition size by construction.
    """
    profile = [as_fraction(value, where=f"q[{k}]") for k, value in enumerate(q)]
    n = len(profile) - 1
    _check_player_count(n)
    per_size = []
    for k, total in enumerate(profile):
        if total < 0:
            raise ValueError(f"q[{k}] is negative: {total}")
        per_size.append(total / math.comb(n, k))
    table = tuple(per_size[mask.bit_count()] for mask in range(1 << n))
    return CoalitionDistribution(n, table)


def is_exchangeable(p: CoalitionDistribution) -> bool:
    """True when the mass of a coalition depends only on its size."""
    reference: list[Optional[Fraction]] = [None] * (p.n + 1)
    for mask, mass in enumerate(p.pmf):
        size = mask.bit_count()
        if reference[size] is None:
            reference[size] = mass
        elif reference[size] != mass:
            return False
    return True


def exchangeability_violation(
    p: CoalitionDistribution,
) -> Optional[tuple[Coalition, int, int]]:
    """A witness (X, i, j) with p(X ∪ {i}) ≠ p(X ∪ {j}), or None.

    X avoids both players, so the two coalitions have equal size and differ
    by swapping i for j.  Cardinality classes are scanned in increasing size
    and the lexicographically first violating triple is returned, making the
    witness deterministic.
    """
    n = p.n
    pmf = p.pmf
    for size in range(0, n - 1):
        for xmask in range(1 << n):
            if xmask.bit_count() != size:
                continue
            outside = ((1 << n) - 1) ^ xmask
            for i in range(1, n + 1):
                bit_i = 1 << (i - 1)
                if not outside & bit_i:
                    continue
                for j in range(i + 1, n + 1):
                    bit_j = 1 << (j - 1)
                    if not outside & bit_j:
                        continue
                    if pmf[xmask | bit_i] != pmf[xmask | bit_j]:
                        return Coalition(xmask, n), i, j
    return None


def transpose_distribution(
    p: CoalitionDistribution, i: int, j: int
) -> CoalitionDistribution:
    """Relabel players i and j in every coalition mask."""
    if not (1 <= i <= p.n and 1 <= j <= p.n):
        raise ValueError(f"players {i}, {j} out of range 1..{p.n}")
    table = [_ZERO] * (1 << p.n)
    for mask, mass in enumerate(p.pmf):
        table[swap_bits(mask, i - 1, j - 1)] = mass
    return CoalitionDistribution(p.n, tuple(table))
