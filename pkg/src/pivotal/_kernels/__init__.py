"""Kernel backend selection: compiled extension with pure-Python fallback.

The compiled kernels are used when the extension imported cleanly, the
environment variable ``PIVOTAL_PURE`` is unset, and the inputs provably fit
int64 arithmetic; otherwise the generic pure kernels run.  Results are
identical either way — exact for the integer kernels, bit-for-bit for the
Monte Carlo kernel.
"""

from __future__ import annotations

import math
import os
from typing import Sequence

from . import reference
from .reference import GOLDEN, MASK64, mix64, stream_seed

try:
    from . import _fast
except ImportError:
    _fast = None
if os.environ.get("PIVOTAL_PURE", "") in ("1", "true", "yes"):
    _fast = None

_INT64_LIMIT = 1 << 63


def backend() -> str:
    """Name of the active backend: ``"compiled"`` or ``"pure"``."""
    return "pure" if _fast is None else "compiled"


def _max_abs_int(values: Sequence) -> int | None:
    """Largest magnitude if every entry is a plain int, else None."""
    largest = 0
    for value in values:
        if type(value) is not int:
            return None
        if value < 0:
            value = -value
        if value > largest:
            largest = value
    return largest


def shapley_diff_sums(values: Sequence, n: int) -> list[list]:
    if _fast is not None:
        largest = _max_abs_int(values)
        # Per-(player, size) sums are bounded by 2*V*C(n-1, s).
        if largest is not None and 2 * largest * math.comb(n - 1, (n - 1) // 2) < _INT64_LIMIT:
            import numpy as np

            out = _fast.shapley_diff_sums(np.asarray(values, dtype=np.int64), n)
            return out.tolist()
    return reference.shapley_diff_sums(values, n)


def rollcall_subgame_sums(values: Sequence, n: int) -> tuple[list[list], list[list]]:
    if _fast is not None and n <= 20:
        largest = _max_abs_int(values)
        # Per-(subgame, player) weighted sums are bounded by 2*V*|G|!.
        if largest is not None and 2 * largest * math.factorial(n) < _INT64_LIMIT:
            import numpy as np

            yes_sums, no_sums = _fast.rollcall_subgame_sums(
                np.asarray(values, dtype=np.int64), n
            )
            return yes_sums.tolist(), no_sums.tolist()
    return reference.rollcall_subgame_sums(values, n)


def float_buffer(values: Sequence[float]):
    """Container for float tables in whatever layout the backend wants."""
    if _fast is not None:
        import numpy as np

        return np.asarray(values, dtype=np.float64)
    return [float(v) for v in values]


def mc_chunk(table, n: int, mode: int, data, count: int, state: int):
    if _fast is not None:
        sums, squares = _fast.mc_chunk(table, n, mode, data, count, state)
        return sums.tolist(), squares.tolist()
    return reference.mc_chunk(table, n, mode, data, count, state)
