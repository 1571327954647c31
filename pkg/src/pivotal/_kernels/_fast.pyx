# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels; contracts documented in reference.py.

Outputs match the pure kernels exactly: the integer sums are exact because
the dispatcher guarantees int64 headroom, and the Monte Carlo kernel performs
the same IEEE double operations in the same order as the pure loop (the
extension is built with FMA contraction disabled).
"""

import numpy as np

from libc.math cimport fabs

cdef extern from *:
    ctypedef unsigned long long uint128 "unsigned __int128"
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

ctypedef unsigned long long u64
ctypedef long long i64

cdef u64 GOLDEN = 0x9E3779B97F4A7C15ULL
cdef double INV_2_53 = 1.0 / 9007199254740992.0

cdef inline u64 mix64(u64 z) nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


def shapley_diff_sums(i64[::1] values, int n):
    out_arr = np.zeros((n, n), dtype=np.int64)
    cdef i64[:, ::1] out = out_arr
    cdef u64 full = (<u64>1 << n) - 1
    cdef u64 mask, rest, low
    cdef int size, i
    cdef i64 base, diff
    with nogil:
        for mask in range(full + 1):
            size = __builtin_popcountll(mask)
            base = values[mask]
            rest = full ^ mask
            while rest:
                i = __builtin_ctzll(rest)
                low = <u64>1 << i
                diff = values[mask | low] - base
                if diff != 0:
                    out[i, size] += diff
                rest ^= low
    return out_arr


def rollcall_subgame_sums(i64[::1] values, int n):
    cdef u64 full = (<u64>1 << n) - 1
    yes_arr = np.zeros((<long long>full + 1, n), dtype=np.int64)
    no_arr = np.zeros((<long long>full + 1, n), dtype=np.int64)
    cdef i64[:, ::1] yes_sums = yes_arr
    cdef i64[:, ::1] no_sums = no_arr
    cdef i64[32] fact
    cdef int k
    fact[0] = 1
    for k in range(1, n + 1):
        fact[k] = fact[k - 1] * k
    cdef u64 gmask, sub, free, low, no_base_idx
    cdef int g, i
    cdef i64 weight, yes_base, no_base, diff
    with nogil:
        for gmask in range(1, full + 1):
            g = __builtin_popcountll(gmask)
            sub = 0
            while True:
                free = gmask ^ sub
                if free != 0:
                    k = __builtin_popcountll(sub)
                    weight = fact[k] * fact[g - 1 - k]
                    yes_base = values[sub]
                    no_base_idx = full ^ sub
                    no_base = values[no_base_idx]
                    while free:
                        i = __builtin_ctzll(free)
                        low = <u64>1 << i
                        diff = values[sub | low] - yes_base
                        if diff != 0:
                            yes_sums[gmask, i] += weight * diff
                        diff = no_base - values[no_base_idx ^ low]
                        if diff != 0:
                            no_sums[gmask, i] += weight * diff
                        free ^= low
                if sub == gmask:
                    break
                sub = (sub - gmask) & gmask
    return yes_arr, no_arr


def mc_chunk(double[::1] table, int n, int mode, double[::1] data,
             long long count, u64 state):
    cdef u64 full = (<u64>1 << n) - 1
    cdef double grand = table[full]
    cdef double tol = 1e-9 * (1.0 if fabs(grand) < 1.0 else fabs(grand))
    sums_arr = np.zeros(n, dtype=np.float64)
    squares_arr = np.zeros(n, dtype=np.float64)
    cdef double[::1] sums = sums_arr
    cdef double[::1] squares = squares_arr
    cdef int order[32]
    cdef long long smp, lo, hi, mid
    cdef int idx, j, k, pos, player, bad = 0
    cdef u64 prod_low, bound, threshold, bit, yes, no, smask
    cdef uint128 prod
    cdef double u, margin, telescope
    with nogil:
        for smp in range(count):
            for idx in range(n):
                order[idx] = idx
            for idx in range(n - 1, 0, -1):
                bound = <u64>(idx + 1)
                state = state + GOLDEN
                prod = <uint128>mix64(state) * bound
                prod_low = <u64>prod
                if prod_low < bound:
                    threshold = (0 - bound) % bound
                    while prod_low < threshold:
                        state = state + GOLDEN
                        prod = <uint128>mix64(state) * bound
                        prod_low = <u64>prod
                j = <int>(prod >> 64)
                k = order[idx]
                order[idx] = order[j]
                order[j] = k
            if mode == 0:
                state = state + GOLDEN
                u = <double>(mix64(state) >> 11) * INV_2_53
                lo = 0
                hi = <long long>full
                while lo < hi:
                    mid = (lo + hi) >> 1
                    if u < data[mid]:
                        hi = mid
                    else:
                        lo = mid + 1
                smask = <u64>lo
            else:
                smask = 0
                for player in range(n):
                    state = state + GOLDEN
                    u = <double>(mix64(state) >> 11) * INV_2_53
                    if u < data[player]:
                        smask |= <u64>1 << player
            yes = 0
            no = 0
            telescope = 0.0
            for k in range(n):
                pos = order[k]
                bit = <u64>1 << pos
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
                bad = 1
                break
    if bad:
        raise AssertionError(
            "marginal contributions of a roll call do not telescope to v(N)"
        )
    return sums_arr, squares_arr
