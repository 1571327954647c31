"""The roll-call model: sequential votes, pivotality, and the roll-call value.

A roll call pairs an ordering of the players with the set of those who end
up cooperating ("yes" voters).  A player's marginal contribution at their
turn is the surplus they create by cooperating — or, via the dual game, the
potential surplus they rescind by refusing.  Averaging marginal
contributions over uniformly random orderings and a coalition distribution
p yields the roll-call value, computed here by a brute-force reference
enumeration, a fast exact engine, and a seeded Monte Carlo estimator.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from . import _kernels
from ._rational import Rational, as_fraction
from .errors import GuardLimitError
from .games import Coalition, CoalitionalGame, PowerVector, is_simple
from .distributions import CoalitionDistribution
from .shapley import _scaled_table

#: The reference engine enumerates n! * 2**n roll calls.
REFERENCE_PLAYER_LIMIT = 6
#: The exact engine does ~n * 3**(n-1) work plus 2**n rational updates.
EXACT_PLAYER_LIMIT = 14

_ZERO = Fraction(0)

#: Samples per Monte Carlo chunk; chunking fixes the substream layout, so
#: estimates depend only on (seed, samples), never on worker count.
MC_CHUNK_SIZE = 8192


@dataclass(frozen=True)
class RollCall:
    """One realized roll call: who is called when, and who cooperates."""

    order: tuple[int, ...]
    cooperators: Coalition

    def __post_init__(self) -> None:
        n = self.cooperators.n
        if sorted(self.order) != list(range(1, n + 1)):
            raise ValueError(
                f"order {self.order!r} is not a permutation of 1..{n}"
            )

    @property
    def n(self) -> int:
        return self.cooperators.n


def predecessors(r: RollCall, i: int) -> Coalition:
    """Players called before player i."""
    n = r.n
    if not 1 <= i <= n:
        raise ValueError(f"player {i!r} out of range 1..{n}")
    mask = 0
    for caller in r.order:
        if caller == i:
            return Coalition(mask, n)
        mask |= 1 << (caller - 1)
    raise AssertionError("unreachable: order is a permutation")


def yes_predecessors(r: RollCall, i: int) -> Coalition:
    """Cooperating players called before player i."""
    before = predecessors(r, i)
    return Coalition(before.mask & r.cooperators.mask, r.n)


def no_predecessors(r: RollCall, i: int) -> Coalition:
    """Non-cooperating players called before player i."""
    before = predecessors(r, i)
    return Coalition(before.mask & ~r.cooperators.mask, r.n)


def marginal_contribution(v: CoalitionalGame, r: RollCall, i: int) -> Fraction:
    """Surplus created (cooperator) or rescinded (refuser) at player i's turn.

    For a cooperator this is the worth added to the yes-predecessors; for a
    refuser it is the drop in the worth still achievable by everyone who has
    not yet said no.
    """
    if v.n != r.n:
        raise ValueError("player-count mismatch")
    full = (1 << v.n) - 1
    bit = 1 << (i - 1)
    if r.cooperators.mask & bit:
        yes = yes_predecessors(r, i).mask
        return v.values[yes | bit] - v.values[yes]
    no = no_predecessors(r, i).mask
    return v.values[full ^ no] - v.values[full ^ (no | bit)]


def is_pivotal(v: CoalitionalGame, r: RollCall, i: int) -> bool:
    """True when player i's vote seals the outcome of a simple game."""
    if not is_simple(v):
        raise ValueError("pivotality requires a simple game")
    return marginal_contribution(v, r, i) == 1


def _check_dimensions(v: CoalitionalGame, p: CoalitionDistribution) -> None:
    if v.n != p.n:
        raise ValueError("player-count mismatch")


def rollcall_value_reference(
    v: CoalitionalGame, p: CoalitionDistribution, *, unchecked: bool = False
) -> PowerVector:
    """Expected marginal contribution by direct enumeration of all roll calls.

    Every (ordering, coalition) pair with positive mass is visited; the
    telescoping of each roll call's contributions to v(N) is asserted along
    the way.  Exponential-factorial cost, guarded at REFERENCE_PLAYER_LIMIT.
    """
    _check_dimensions(v, p)
    n = v.n
    if not unchecked and n > REFERENCE_PLAYER_LIMIT:
        raise GuardLimitError(
            f"n={n} exceeds REFERENCE_PLAYER_LIMIT={REFERENCE_PLAYER_LIMIT}; "
            "pass unchecked=True to force the full enumeration"
        )
    scale, table = _scaled_table(v)
    full = (1 << n) - 1
    grand = table[full]
    totals = [_ZERO] * n
    orderings = list(permutations(range(n)))
    for smask in range(full + 1):
        mass = p.pmf[smask]
        if mass == 0:
            continue
        sums = [0] * n
        for order in orderings:
            yes = 0
            no = 0
            telescope = 0
            for pos in order:
                bit = 1 << pos
                if smask & bit:
                    margin = table[yes | bit] - table[yes]
                    yes |= bit
                else:
                    margin = table[full ^ no] - table[full ^ (no | bit)]
                    no |= bit
                if margin:
                    sums[pos] += margin
                    telescope += margin
            if telescope != grand:
                raise AssertionError(
                    "marginal contributions of a roll call do not telescope to v(N)"
                )
        for i in range(n):
            if sums[i]:
                totals[i] += mass * sums[i]
    denominator = math.factorial(n) * scale
    entries = tuple(total / denominator for total in totals)
    _assert_efficient(entries, v.values[full])
    return PowerVector(n, entries)


def rollcall_value_exact(
    v: CoalitionalGame, p: CoalitionDistribution, *, unchecked: bool = False
) -> PowerVector:
    """Fast exact roll-call value.

    Conditioned on the cooperator set S, the orderings restricted to S (or
    to its complement, for refusers) are uniform, so each player's expected
    contribution is a one-player allocation of the game restricted to S —
    or of the dual game restricted to the complement.  Summing those
    allocations against the masses of p gives the value with ~3**n work
    instead of n! * 2**n.
    """
    _check_dimensions(v, p)
    n = v.n
    if not unchecked and n > EXACT_PLAYER_LIMIT:
        raise GuardLimitError(
            f"n={n} exceeds EXACT_PLAYER_LIMIT={EXACT_PLAYER_LIMIT}; "
            "pass unchecked=True at your own (memory and time) risk"
        )
    scale, table = _scaled_table(v)
    yes_sums, no_sums = _kernels.rollcall_subgame_sums(table, n)
    fact = [math.factorial(k) for k in range(n + 1)]
    full = (1 << n) - 1
    pmf = p.pmf
    totals = [_ZERO] * n
    for gmask in range(1, full + 1):
        mass_g = pmf[gmask]
        mass_c = pmf[full ^ gmask]
        if mass_g == 0 and mass_c == 0:
            continue
        denominator = fact[gmask.bit_count()] * scale
        yes_row = yes_sums[gmask]
        no_row = no_sums[gmask]
        rest = gmask
        while rest:
            low = rest & -rest
            i = low.bit_length() - 1
            contribution = mass_g * yes_row[i] + mass_c * no_row[i]
            if contribution:
                totals[i] += contribution / denominator
            rest ^= low
    entries = tuple(totals)
    _assert_efficient(entries, v.values[full])
    return PowerVector(n, entries)


def _assert_efficient(entries: Sequence[Fraction], grand: Fraction) -> None:
    if sum(entries, _ZERO) != grand:
        raise AssertionError("per-player values do not sum to v(N)")


@dataclass(frozen=True)
class CoalitionSampler:
    """Declarative sampler for the cooperator set of a roll call.

    ``mode`` 0 samples by inverse CDF over an explicit cumulative mass table;
    mode 1 flips an independent coin per player.  Declarative (rather than a
    callback) so both kernel backends can drive it.
    """

    n: int
    mode: int
    data: tuple[float, ...]


def sampler_from_distribution(p: CoalitionDistribution) -> CoalitionSampler:
    """Inverse-CDF sampler over an explicit mass table."""
    cumulative = []
    running = _ZERO
    for mass in p.pmf:
        running += mass
        cumulative.append(float(running))
    cumulative[-1] = 1.0
    return CoalitionSampler(p.n, 0, tuple(cumulative))


def bernoulli_sampler(x: Sequence[Rational | float]) -> CoalitionSampler:
    """Independent-votes sampler; never materializes the 2**n mass table."""
    probs = []
    for k, value in enumerate(x):
        prob = float(value) if isinstance(value, float) else float(
            as_fraction(value, where=f"x[{k}]")
        )
        if not 0.0 <= prob <= 1.0:
            raise ValueError(f"x[{k}] = {prob} is outside [0, 1]")
        probs.append(prob)
    if not 1 <= len(probs) <= 24:
        raise ValueError(f"player count {len(probs)} out of range 1..24")
    return CoalitionSampler(len(probs), 1, tuple(probs))


@dataclass(frozen=True)
class MonteCarloEstimate:
    """Sampled roll-call value: per-player means and standard errors."""

    n: int
    values: tuple[float, ...]
    std_errors: tuple[float, ...]
    samples: int


def rollcall_value_monte_carlo(
    v: CoalitionalGame,
    sampler: CoalitionSampler,
    samples: int,
    seed: int,
    *,
    workers: int = 1,
) -> MonteCarloEstimate:
    """Estimate the roll-call value from ``samples`` random roll calls.

    Deterministic for a fixed (seed, samples) pair: the sample budget is cut
    into fixed-size chunks, each chunk draws from its own substream of the
    generator, and chunk results are reduced in index order — so the output
    is bitwise identical no matter how many workers run, and identical
    between the compiled and pure kernel backends.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    if sampler.n != v.n:
        raise ValueError("player-count mismatch")
    n = v.n
    table = _kernels.float_buffer([float(value) for value in v.values])
    data = _kernels.float_buffer(list(sampler.data))

    jobs = []
    remaining = samples
    chunk = 0
    while remaining > 0:
        count = MC_CHUNK_SIZE if remaining >= MC_CHUNK_SIZE else remaining
        jobs.append((chunk, count))
        remaining -= count
        chunk += 1

    def run(job: tuple[int, int]) -> tuple[list[float], list[float]]:
        index, count = job
        return _kernels.mc_chunk(
            table, n, sampler.mode, data, count, _kernels.stream_seed(seed, index)
        )

    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, jobs))
    else:
        results = [run(job) for job in jobs]

    sums = [0.0] * n
    squares = [0.0] * n
    for chunk_sums, chunk_squares in results:
        for i in range(n):
            sums[i] += chunk_sums[i]
            squares[i] += chunk_squares[i]

    estimates = tuple(total / samples for total in sums)
    if samples < 2:
        errors = tuple(0.0 for _ in range(n))
    else:
        errors = []
        for total, square in zip(sums, squares):
            variance = (square - total * total / samples) / (samples - 1)
            if variance < 0.0:
                variance = 0.0
            errors.append(math.sqrt(variance / samples))
        errors = tuple(errors)
    return MonteCarloEstimate(n, estimates, errors, samples)
