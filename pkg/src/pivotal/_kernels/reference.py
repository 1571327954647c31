"""Pure-Python kernels for the library's hot loops.

The compiled module ``_fast`` reimplements each function here with identical
semantics; the Monte Carlo kernel is bit-for-bit reproducible across the two
backends (same generator, same operation order, IEEE doubles throughout).
The enumeration kernels are generic over the element type: they work on
plain ints of any magnitude and on ``fractions.Fraction``.
"""

from __future__ import annotations

from typing import Sequence

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_INV_2_53 = 1.0 / 9007199254740992.0  # 2**-53


def mix64(z: int) -> int:
    """Finalizing avalanche of the splitmix64 generator."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def stream_seed(seed: int, chunk: int) -> int:
    """Initial generator state for one Monte Carlo chunk.

    Derived from (seed, chunk index) only, so a run partitioned into chunks
    is reproducible no matter how the chunks are scheduled.
    """
    return mix64(((seed & MASK64) + GOLDEN * (chunk + 1)) & MASK64)


def shapley_diff_sums(values: Sequence, n: int) -> list[list]:
    """Marginal sums grouped by coalition size.

    ``out[i][s]`` is the sum of ``values[S | bit_i] - values[S]`` over all
    masks S of cardinality s that avoid player index i (0-based).
    """
    out = [[0] * n for _ in range(n)]
    full = (1 << n) - 1
    for mask in range(full + 1):
        size = mask.bit_count()
        base = values[mask]
        rest = full ^ mask
        while rest:
            low = rest & -rest
            diff = values[mask | low] - base
            if diff:
                out[low.bit_length() - 1][size] += diff
            rest ^= low
    return out


def rollcall_subgame_sums(values: Sequence, n: int) -> tuple[list[list], list[list]]:
    """Factorial-weighted marginal sums for every subgame.

    For each nonempty mask G and player index i in G (0-based):

    * ``yes_sums[G][i]``: sum over A ⊆ G\\{i} of
      ``|A|! * (|G|-1-|A|)! * (values[A|bit_i] - values[A])`` — the
      unnormalized one-player allocation of the game restricted to G.
    * ``no_sums[G][i]``: the same sums for the rescinded-surplus table,
      ``values[full^A] - values[full^(A|bit_i)]``.

    Dividing by ``|G|!`` yields the per-subgame allocations.
    """
    full = (1 << n) - 1
    fact = [1] * (n + 1)
    for k in range(1, n + 1):
        fact[k] = fact[k - 1] * k
    yes_sums = [[0] * n for _ in range(full + 1)]
    no_sums = [[0] * n for _ in range(full + 1)]
    for gmask in range(1, full + 1):
        g = gmask.bit_count()
        yes_row = yes_sums[gmask]
        no_row = no_sums[gmask]
        sub = 0
        while True:
            free = gmask ^ sub
            if free:
                weight = fact[sub.bit_count()] * fact[g - 1 - sub.bit_count()]
                yes_base = values[sub]
                no_base_idx = full ^ sub
                no_base = values[no_base_idx]
                while free:
                    low = free & -free
                    i = low.bit_length() - 1
                    diff = values[sub | low] - yes_base
                    if diff:
                        yes_row[i] += weight * diff
                    diff = no_base - values[no_base_idx ^ low]
                    if diff:
                        no_row[i] += weight * diff
                    free ^= low
            if sub == gmask:
                break
            sub = (sub - gmask) & gmask
    return yes_sums, no_sums


def mc_chunk(
    table: Sequence[float],
    n: int,
    mode: int,
    data: Sequence[float],
    count: int,
    state: int,
) -> tuple[list[float], list[float]]:
    """Accumulate ``count`` sampled roll calls into per-player sums.

    ``mode`` 0 draws the cooperator set by inverse CDF over ``data``
    (cumulative masses, one per mask); mode 1 flips one coin per player with
    ``data[i]`` the probability of cooperation.  Orderings are uniform
    Fisher-Yates shuffles.  Returns per-player sums and sums of squares of
    the marginal contributions.
    """
    full = (1 << n) - 1
    grand = table[full]
    tol = 1e-9 * (1.0 if abs(grand) < 1.0 else abs(grand))
    sums = [0.0] * n
    squares = [0.0] * n
    order = list(range(n))
    for _ in range(count):
        for idx in range(n):
            order[idx] = idx
        for idx in range(n - 1, 0, -1):
            # Unbiased bounded draw (multiply-shift with rejection).
            bound = idx + 1
            state = (state + GOLDEN) & MASK64
            prod = mix64(state) * bound
            low = prod & MASK64
            if low < bound:
                threshold = ((1 << 64) - bound) % bound
                while low < threshold:
                    state = (state + GOLDEN) & MASK64
                    prod = mix64(state) * bound
                    low = prod & MASK64
            j = prod >> 64
            order[idx], order[j] = order[j], order[idx]
        if mode == 0:
            state = (state + GOLDEN) & MASK64
            u = (mix64(state) >> 11) * _INV_2_53
            lo = 0
            hi = full
            while lo < hi:
                mid = (lo + hi) >> 1
                if u < data[mid]:
                    hi = mid
                else:
                    lo = mid + 1
            smask = lo
        else:
            smask = 0
            for player in range(n):
                state = (state + GOLDEN) & MASK64
                u = (mix64(state) >> 11) * _INV_2_53
                if u < data[player]:
                    smask |= 1 << player
        yes = 0
        no = 0
        telescope = 0.0
        for k in range(n):
            pos = order[k]
            bit = 1 << pos
            if smask & bit:
                margin = table[yes | bit] - table[yes]
                yes |= bit
            else:
                margin = table[full ^ no] - table[full ^ (no | bit)]
                no |= bit
            sums[pos] += margin
            squares[pos] += margin * margin
            telescope += margin
        if telescope - grand > tol or grand - telescope > tol:
            raise AssertionError(
                "marginal contributions of a roll call do not telescope to v(N)"
            )
    return sums, squares
