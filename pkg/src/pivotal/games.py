"""Coalitional games with exact rational worths over bitmask coalitions.

Players are numbered 1..n and a coalition is a bitmask in which bit (i-1)
encodes membership of player i.  Worth tables are dense tuples of
``fractions.Fraction`` indexed by mask, so every construction and predicate
here is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ._bits import bit_positions, iter_submasks
from ._rational import Rational, as_fraction
from .errors import GuardLimitError

#: Explicit 2**n tables are capped here; 2**24 rationals is already ~134 MB.
MAX_PLAYERS = 24

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _check_player_count(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"player count must be a positive integer, got {n!r}")
    if n > MAX_PLAYERS:
        raise GuardLimitError(
            f"player count {n} exceeds MAX_PLAYERS={MAX_PLAYERS} "
            "(explicit 2**n tables)"
        )


def _check_player(n: int, player: int) -> None:
    if not isinstance(player, int) or not 1 <= player <= n:
        raise ValueError(f"player {player!r} out of range 1..{n}")


@dataclass(frozen=True)
class Coalition:
    """A subset of the players 1..n, encoded as a bitmask."""

    mask: int
    n: int

    def __post_init__(self) -> None:
        _check_player_count(self.n)
        if not 0 <= self.mask < (1 << self.n):
            raise ValueError(f"mask {self.mask:#x} out of range for n={self.n}")

    @classmethod
    def from_players(cls, n: int, players: Iterable[int]) -> "Coalition":
        _check_player_count(n)
        mask = 0
        for player in players:
            _check_player(n, player)
            mask |= 1 << (player - 1)
        return cls(mask, n)

    @classmethod
    def empty(cls, n: int) -> "Coalition":
        return cls(0, n)

    @classmethod
    def full(cls, n: int) -> "Coalition":
        return cls((1 << n) - 1, n)

    def members(self) -> tuple[int, ...]:
        return tuple(pos + 1 for pos in bit_positions(self.mask))

    def cardinality(self) -> int:
        return self.mask.bit_count()

    def __len__(self) -> int:
        return self.cardinality()

    def __contains__(self, player: int) -> bool:
        return 1 <= player <= self.n and bool(self.mask >> (player - 1) & 1)

    def with_player(self, player: int) -> "Coalition":
        _check_player(self.n, player)
        return Coalition(self.mask | 1 << (player - 1), self.n)

    def without_player(self, player: int) -> "Coalition":
        _check_player(self.n, player)
        return Coalition(self.mask & ~(1 << (player - 1)), self.n)

    def complement(self) -> "Coalition":
        return Coalition(self.mask ^ ((1 << self.n) - 1), self.n)

    def is_subset_of(self, other: "Coalition") -> bool:
        return self.n == other.n and self.mask & ~other.mask == 0

    def __str__(self) -> str:
        if not self.mask:
            return "∅"
        return "{" + ",".join(str(p) for p in self.members()) + "}"


@dataclass(frozen=True)
class CoalitionalGame:
    """Dense worth table ``values[mask] = v(S)`` with ``v(∅) = 0``."""

    n: int
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        _check_player_count(self.n)
        if len(self.values) != 1 << self.n:
            raise ValueError(
                f"value table has {len(self.values)} entries, expected {1 << self.n}"
            )
        if self.values[0] != 0:
            raise ValueError("the empty coalition must have worth 0")

    @classmethod
    def from_values(cls, n: int, values: Iterable[Rational]) -> "CoalitionalGame":
        table = tuple(
            as_fraction(v, where=f"values[{k}]") for k, v in enumerate(values)
        )
        return cls(n, table)

    def value(self, s: Coalition) -> Fraction:
        if s.n != self.n:
            raise ValueError("player-count mismatch")
        return self.values[s.mask]

    def grand_value(self) -> Fraction:
        return self.values[-1]


@dataclass(frozen=True)
class PowerVector:
    """One exact rational per player; entry (i-1) belongs to player i."""

    n: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.n:
            raise ValueError(f"expected {self.n} entries, got {len(self.entries)}")

    def for_player(self, player: int) -> Fraction:
        _check_player(self.n, player)
        return self.entries[player - 1]

    def total(self) -> Fraction:
        return sum(self.entries, _ZERO)

    def __iter__(self):
        return iter(self.entries)


def evaluate(game: CoalitionalGame, s: Coalition) -> Fraction:
    """Worth of coalition ``s`` in ``game``."""
    return game.value(s)


def weighted_game(quota: Rational, weights: Sequence[Rational]) -> CoalitionalGame:
    """Simple game won by the coalitions whose total weight reaches the quota."""
    q = as_fraction(quota, where="quota")
    ws = [as_fraction(w, where=f"weights[{k}]") for k, w in enumerate(weights)]
    n = len(ws)
    _check_player_count(n)
    if q <= 0:
        raise ValueError(f"quota must be positive, got {q}")
    for k, w in enumerate(ws):
        if w < 0:
            raise ValueError(f"weights[{k}] is negative: {w}")
    if sum(ws) < q:
        raise ValueError("grand coalition losing")

    # Incremental weight sums over the mask counter: mask and mask^(lowest bit)
    # differ by one player, so each entry costs one addition.
    totals = [_ZERO] * (1 << n)
    table = [_ZERO] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        totals[mask] = totals[mask ^ low] + ws[low.bit_length() - 1]
        if totals[mask] >= q:
            table[mask] = _ONE
    return CoalitionalGame(n, tuple(table))


def unanimity_game(n: int, t: Coalition) -> CoalitionalGame:
    """Game worth 1 exactly on the coalitions containing the carrier ``t``."""
    _check_player_count(n)
    if t.n != n:
        raise ValueError("player-count mismatch")
    if t.mask == 0:
        raise ValueError("unanimity carrier must be nonempty")
    tmask = t.mask
    table = tuple(
        _ONE if mask & tmask == tmask else _ZERO for mask in range(1 << n)
    )
    return CoalitionalGame(n, table)


def dual(game: CoalitionalGame) -> CoalitionalGame:
    """The game ``v*(S) = v(N) - v(N \\ S)``: surplus rescinded by refusals."""
    full = (1 << game.n) - 1
    grand = game.values[full]
    cache: dict[Fraction, Fraction] = {}
    table = []
    for mask in range(full + 1):
        value = grand - game.values[full ^ mask]
        table.append(cache.setdefault(value, value))
    return CoalitionalGame(game.n, tuple(table))


def is_simple(game: CoalitionalGame) -> bool:
    """True for monotone 0/1 games with a winning grand coalition."""
    table = game.values
    if table[-1] != 1:
        return False
    for value in table:
        if value != 0 and value != 1:
            return False
    n = game.n
    for mask in range(1 << n):
        value = table[mask]
        rest = ((1 << n) - 1) ^ mask
        while rest:
            low = rest & -rest
            if value > table[mask | low]:
                return False
            rest ^= low
    return True


def is_null_player(game: CoalitionalGame, player: int) -> bool:
    """True when adding ``player`` never changes any coalition's worth."""
    _check_player(game.n, player)
    bit = 1 << (player - 1)
    rest = ((1 << game.n) - 1) ^ bit
    table = game.values
    return all(table[sub] == table[sub | bit] for sub in iter_submasks(rest))


def are_equivalent(game: CoalitionalGame, i: int, j: int) -> bool:
    """True when players ``i`` and ``j`` are interchangeable in every coalition."""
    _check_player(game.n, i)
    _check_player(game.n, j)
    if i == j:
        raise ValueError("players must be distinct")
    bit_i = 1 << (i - 1)
    bit_j = 1 << (j - 1)
    rest = ((1 << game.n) - 1) ^ bit_i ^ bit_j
    table = game.values
    return all(
        table[sub | bit_i] == table[sub | bit_j] for sub in iter_submasks(rest)
    )


def linear_combination(
    coeffs: Sequence[Rational], games: Sequence[CoalitionalGame]
) -> CoalitionalGame:
    """Pointwise combination ``sum(coeffs[k] * games[k])`` of worth tables."""
    if not games:
        raise ValueError("need at least one game")
    if len(coeffs) != len(games):
        raise ValueError(f"{len(coeffs)} coefficients for {len(games)} games")
    n = games[0].n
    if any(g.n != n for g in games):
        raise ValueError("player-count mismatch")
    cs = [as_fraction(c, where=f"coeffs[{k}]") for k, c in enumerate(coeffs)]
    table = [_ZERO] * (1 << n)
    for c, g in zip(cs, games):
        if c == 0:
            continue
        for mask, value in enumerate(g.values):
            if value:
                table[mask] += c * value
    return CoalitionalGame(n, tuple(table))


def unanimity_decomposition(game: CoalitionalGame) -> dict[Coalition, Fraction]:
    """Coordinates of the game in the unanimity basis.

    Returns the coefficient for every nonempty carrier; reconstructing via
    :func:`linear_combination` of the matching unanimity games is an exact
    round trip.
    """
    n = game.n
    coeffs = list(game.values)
    # In-place superset-difference transform: after processing bit b,
    # coeffs[T] has been alternating-summed over the b-th coordinate.
    for b in range(n):
        bit = 1 << b
        for mask in range(1 << n):
            if mask & bit:
                coeffs[mask] -= coeffs[mask ^ bit]
    return {
        Coalition(mask, n): coeffs[mask] for mask in range(1, 1 << n)
    }
