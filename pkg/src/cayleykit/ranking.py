"""Lehmer-code ranking of permutations.

Permutations are 0-based image tuples; ranks run 0 .. n!-1 in lexicographic
order of the image tuple, so the identity always has rank 0.
"""

from __future__ import annotations

from itertools import permutations
from math import factorial

import numpy as np


def perm_rank(perm) -> int:
    """Lexicographic rank of a permutation given as a 0-based image tuple."""
    n = len(perm)
    r = 0
    seen = 0
    for i, v in enumerate(perm):
        smaller = v - (seen & ((1 << v) - 1)).bit_count()
        r = r * (n - i) + smaller
        seen |= 1 << v
    return r


def perm_unrank(r: int, n: int) -> tuple:
    """Inverse of perm_rank."""
    digits = []
    for base in range(1, n + 1):
        r, d = divmod(r, base)
        digits.append(d)
    digits.reverse()
    items = list(range(n))
    return tuple(items.pop(d) for d in digits)


def all_perms_array(n: int) -> np.ndarray:
    """(n!, n) uint8 array of every permutation in rank order."""
    flat = np.fromiter(
        (v for p in permutations(range(n)) for v in p),
        dtype=np.uint8,
        count=factorial(n) * n,
    )
    return flat.reshape(factorial(n), n)


def rank_rows(rows: np.ndarray) -> np.ndarray:
    """Vectorized perm_rank over the rows of an (m, n) permutation array."""
    m, n = rows.shape
    ranks = np.zeros(m, dtype=np.int64)
    cols = rows.astype(np.int64)
    for i in range(n):
        digit = cols[:, i].copy()
        for j in range(i):
            digit -= cols[:, j] < cols[:, i]
        ranks = ranks * (n - i) + digit
    return ranks
