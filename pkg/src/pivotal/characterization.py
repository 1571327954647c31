"""Constructive separation of the roll-call value from the Shapley value.

When a distribution p is not exchangeable there is some coalition X and a
pair of players i, j with p(X ∪ {i}) ≠ p(X ∪ {j}).  This module builds a
probe game in which i and j are interchangeable yet whose roll-call value
under p differs between them by exactly p(X ∪ {j}) - p(X ∪ {i}) — a
concrete game on which the roll-call value cannot be the Shapley value.

The construction rests on an explicitly invertible matrix indexed by the
subsets of an m-element ground set, plus a family of alternating binomial
identities; both are exposed so they can be verified directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from ._bits import compact_mask, iter_supermasks
from ._rational import Rational, as_fraction
from .errors import GuardLimitError
from .games import Coalition, CoalitionalGame, PowerVector
from .distributions import CoalitionDistribution, exchangeability_violation
from .rollcall import rollcall_value_exact
from .shapley import shapley_by_coalitions

#: Dense 2**m x 2**m rational matrices stay desk-sized up to here.
MATRIX_GROUND_LIMIT = 8
#: The probe game sums 2**(n-2) unanimity coefficients over 2**n tables.
PROBE_PLAYER_LIMIT = 10

_ZERO = Fraction(0)


def binomial(a: int, b: int) -> int:
    """C(a, b) with the vanishing convention for b < 0 or b > a."""
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


@dataclass(frozen=True)
class OverlapMatrix:
    """A 2**m x 2**m exact rational matrix indexed by subset pairs (R, S)."""

    m: int
    rows: tuple[tuple[Fraction, ...], ...]

    def entry(self, r_mask: int, s_mask: int) -> Fraction:
        return self.rows[r_mask][s_mask]


def _check_ground(m: int) -> None:
    if not isinstance(m, int) or m < 0:
        raise ValueError(f"ground-set size must be a non-negative integer, got {m!r}")
    if m > MATRIX_GROUND_LIMIT:
        raise GuardLimitError(
            f"m={m} exceeds MATRIX_GROUND_LIMIT={MATRIX_GROUND_LIMIT}"
        )


def overlap_matrix(m: int) -> OverlapMatrix:
    """Matrix with entry 1 / (1 + |R \\ S|) for subsets R, S of an m-set."""
    _check_ground(m)
    size = 1 << m
    rows = tuple(
        tuple(Fraction(1, 1 + (r & ~s).bit_count()) for s in range(size))
        for r in range(size)
    )
    return OverlapMatrix(m, rows)


def overlap_matrix_inverse(m: int) -> OverlapMatrix:
    """Closed-form inverse: C(m+1, m+|R\\S|) * (-1)**|R Δ S|.

    The binomial vanishes as soon as |R \\ S| >= 2, so each row has few
    nonzero entries.
    """
    _check_ground(m)
    size = 1 << m
    rows = tuple(
        tuple(
            Fraction(
                binomial(m + 1, m + (r & ~s).bit_count())
                * (-1 if (r ^ s).bit_count() & 1 else 1)
            )
            for s in range(size)
        )
        for r in range(size)
    )
    return OverlapMatrix(m, rows)


def verify_overlap_inverse(m: int) -> bool:
    """Exact check that the forward matrix times the closed-form inverse is I.

    Both matrices are rescaled to integers (the forward entries by the lcm
    of 1..m+1, the inverse entries are already integers), multiplied as
    int64 arrays — exactness is guaranteed by a headroom check — and
    compared against the scaled identity.
    """
    _check_ground(m)
    size = 1 << m
    common = math.lcm(*range(1, m + 2))
    forward = np.empty((size, size), dtype=np.int64)
    inverse = np.empty((size, size), dtype=np.int64)
    largest_inverse = binomial(m + 1, (m + 1) // 2)
    # Dot products are bounded by 2**m * common * max|inverse entry|.
    if size * common * largest_inverse >= 1 << 62:
        raise AssertionError("int64 headroom exhausted; raise the guard with care")
    for r in range(size):
        for s in range(size):
            defect = (r & ~s).bit_count()
            forward[r, s] = common // (1 + defect)
            sign = -1 if (r ^ s).bit_count() & 1 else 1
            inverse[r, s] = binomial(m + 1, m + defect) * sign
    product = forward @ inverse
    return bool(
        np.array_equal(product, common * np.identity(size, dtype=np.int64))
    )


def alternating_binomial_sum(n: int) -> int:
    """Direct summation of sum_k C(n, k) * (-1)**k (equals 1 at n=0, else 0)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return sum(math.comb(n, k) * (-1) ** k for k in range(n + 1))


def _alternating_reciprocal(n: int, shift: Fraction) -> tuple[Fraction, Fraction]:
    lhs = sum(
        (Fraction(math.comb(n, k)) / (k + shift) if k % 2 == 0
         else -Fraction(math.comb(n, k)) / (k + shift))
        for k in range(n + 1)
    )
    denominator = Fraction(1)
    for k in range(n + 1):
        denominator *= shift + k
    rhs = math.factorial(n) / denominator
    return lhs, rhs


def reciprocal_sum_identity(n: int) -> tuple[Fraction, Fraction]:
    """sum_k C(n,k) (-1)**k / (k+1) summed directly, with closed form 1/(n+1)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    lhs, _ = _alternating_reciprocal(n, Fraction(1))
    return lhs, Fraction(1, n + 1)


def reciprocal_sum_identity_at(n: int, x: Rational) -> tuple[Fraction, Fraction]:
    """sum_k C(n,k) (-1)**k / (k+x) with closed form n! / ((x)(x+1)...(x+n))."""
    if n < 0:
        raise ValueError("n must be non-negative")
    shift = as_fraction(x, where="x")
    if shift <= 0:
        raise ValueError(f"x must be positive, got {shift}")
    return _alternating_reciprocal(n, shift)


def reciprocal_sum_identity_shifted(
    n: int, x: Rational
) -> tuple[Fraction, Fraction]:
    """sum_k C(n,k) (-1)**k / (k+1+x) with closed form n! / prod(1+x+k)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    offset = as_fraction(x, where="x")
    if offset <= -1:
        raise ValueError(f"x must exceed -1, got {offset}")
    return _alternating_reciprocal(n, 1 + offset)


def _check_probe_args(n: int, i: int, j: int, x: Coalition) -> tuple[int, int]:
    if n < 2:
        raise GuardLimitError("the probe construction needs at least two players")
    if n > PROBE_PLAYER_LIMIT:
        raise GuardLimitError(
            f"n={n} exceeds PROBE_PLAYER_LIMIT={PROBE_PLAYER_LIMIT}"
        )
    if not 1 <= i <= n:
        raise ValueError(f"player {i!r} out of range 1..{n}")
    if not 1 <= j <= n:
        raise ValueError(f"player {j!r} out of range 1..{n}")
    if i == j:
        raise ValueError("players must be distinct")
    if x.n != n:
        raise ValueError("player-count mismatch")
    bit_i = 1 << (i - 1)
    bit_j = 1 << (j - 1)
    if x.mask & (bit_i | bit_j):
        raise ValueError("the target coalition must avoid both probed players")
    return bit_i, bit_j


def _probe_coefficients(n: int, bit_i: int, bit_j: int, x: Coalition) -> list[int]:
    """Unanimity coefficients of the probe game over the reduced ground set.

    Index r in the returned list is the compacted mask of T \\ {i, j}; the
    coefficient is the (X, r) entry of the closed-form inverse matrix, which
    is what makes the later mass-extraction sum collapse to an indicator.
    """
    ground = ((1 << n) - 1) ^ bit_i ^ bit_j
    m = n - 2
    x_dense = compact_mask(x.mask, ground)
    coefficients = []
    for r_dense in range(1 << m):
        defect = (x_dense & ~r_dense).bit_count()
        sign = -1 if (x_dense ^ r_dense).bit_count() & 1 else 1
        coefficients.append(binomial(m + 1, m + defect) * sign)
    return coefficients


def equivalence_probe_game(n: int, i: int, j: int, x: Coalition) -> CoalitionalGame:
    """Game in which players i and j are equivalent but whose roll-call values
    under a distribution p differ by p(X ∪ {j}) - p(X ∪ {i}).

    Built as an integer combination of unanimity games whose carriers all
    contain both i and j (hence the equivalence); the coefficients come from
    the inverse overlap matrix over the remaining n-2 players.
    """
    bit_i, bit_j = _check_probe_args(n, i, j, x)
    ground = ((1 << n) - 1) ^ bit_i ^ bit_j
    m = n - 2
    coefficients = _probe_coefficients(n, bit_i, bit_j, x)
    # Subset-sum transform: carrier_sums[s] = sum of coefficients over
    # dense masks r ⊆ s, i.e. the total weight of carriers inside s.
    carrier_sums = list(coefficients)
    for b in range(m):
        bit = 1 << b
        for mask in range(1 << m):
            if mask & bit:
                carrier_sums[mask] += carrier_sums[mask ^ bit]
    pair = bit_i | bit_j
    cache: dict[int, Fraction] = {}
    table = []
    for mask in range(1 << n):
        if mask & pair != pair:
            table.append(_ZERO)
            continue
        total = carrier_sums[compact_mask(mask & ground, ground)]
        entry = cache.get(total)
        if entry is None:
            entry = cache.setdefault(total, Fraction(total))
        table.append(entry)
    return CoalitionalGame(n, tuple(table))


def probe_selector_sum(
    n: int, i: int, j: int, x: Coalition, s: Coalition
) -> Fraction:
    """The probe's defining sum: 1 when S equals the target X, else 0.

    Computes sum over carriers T ⊇ {i, j} of coefficient(T) / (1 + |(T \\
    {i,j}) \\ S|), which is one entry of (inverse matrix) x (forward matrix).
    """
    bit_i, bit_j = _check_probe_args(n, i, j, x)
    if s.n != n:
        raise ValueError("player-count mismatch")
    if s.mask & (bit_i | bit_j):
        raise ValueError("the test coalition must avoid both probed players")
    ground = ((1 << n) - 1) ^ bit_i ^ bit_j
    m = n - 2
    s_dense = compact_mask(s.mask, ground)
    coefficients = _probe_coefficients(n, bit_i, bit_j, x)
    total = _ZERO
    for r_dense in range(1 << m):
        coefficient = coefficients[r_dense]
        if coefficient:
            total += Fraction(coefficient, 1 + (r_dense & ~s_dense).bit_count())
    return total


def unanimity_rollcall_terms(
    t: Coalition, i: int, j: int, p: CoalitionDistribution
) -> tuple[Fraction, Fraction, Fraction]:
    """Player i's roll-call value in the unanimity game on carrier t, split
    three ways by the realized votes.

    Term 1: every carrier member cooperates and i is called last among them.
    Term 2: neither i nor j cooperates and i is called first among the
    carrier members who refuse.  Term 3: the same with j cooperating.
    The three terms sum to the full roll-call value of player i.
    """
    n = p.n
    if t.n != n:
        raise ValueError("player-count mismatch")
    if i not in t or j not in t:
        raise ValueError("both players must belong to the carrier")
    if i == j:
        raise ValueError("players must be distinct")
    tmask = t.mask
    bit_i = 1 << (i - 1)
    bit_j = 1 << (j - 1)
    pmf = p.pmf
    size = tmask.bit_count()

    term1 = _ZERO
    for smask in iter_supermasks(tmask, n):
        if pmf[smask]:
            term1 += pmf[smask] / size

    term2 = _ZERO
    term3 = _ZERO
    outside = ((1 << n) - 1) ^ bit_i ^ bit_j
    sub = 0
    while True:
        missing = (tmask & ~sub).bit_count()
        if pmf[sub]:
            term2 += pmf[sub] / missing
        if pmf[sub | bit_j]:
            term3 += pmf[sub | bit_j] / (missing - 1)
        if sub == outside:
            break
        sub = (sub - outside) & outside
    return term1, term2, term3


@dataclass(frozen=True)
class ExchangeabilityWitness:
    """A game separating the roll-call value from the Shapley value.

    Players i and j are equivalent in the game, so its Shapley values agree
    at i and j, while the roll-call values do not.
    """

    game: CoalitionalGame
    i: int
    j: int
    rollcall_values: PowerVector
    shapley_values: PowerVector


def witness_non_exchangeability(
    p: CoalitionDistribution,
) -> Optional[ExchangeabilityWitness]:
    """Build a separating game for p, or None when p is exchangeable.

    The first mass violation (X, i, j) is turned into a probe game; the
    resulting roll-call asymmetry is re-verified exactly before returning.
    """
    if p.n < 2:
        raise GuardLimitError("witness construction needs at least two players")
    violation = exchangeability_violation(p)
    if violation is None:
        return None
    x, i, j = violation
    game = equivalence_probe_game(p.n, i, j, x)
    rollcall_values = rollcall_value_exact(game, p)
    if rollcall_values.for_player(i) == rollcall_values.for_player(j):
        raise AssertionError(
            "probe game failed to separate the roll-call values; "
            "this contradicts the mass violation"
        )
    shapley_values = shapley_by_coalitions(game)
    return ExchangeabilityWitness(game, i, j, rollcall_values, shapley_values)
