"""Distance oracles over Cayley graphs, geodesic sets, balls and table caches.

Strategy selection: analytic formulas where a closed form exists (Z^2 by the
L1 norm, cyclic groups, adjacent transpositions by inversion count), a full
BFS distance table for symmetric models with n <= 9, and bidirectional BFS
for symmetric models with 10 <= n <= 12.  Distances between arbitrary pairs
reduce to lengths through left-invariance: d(g, h) = l(g^-1 h).
"""

from __future__ import annotations

import os
import struct
from dataclasses import dataclass
from math import factorial
from pathlib import Path

import numpy as np

from .errors import CacheError, CapabilityError, ModelError, UnreachableError
from .groups import (
    CyclicModel,
    FreeAbelianModel,
    GroupModel,
    SymmetricModel,
)
from .ranking import all_perms_array, perm_rank, perm_unrank, rank_rows

UNREACHED = 255
DEFAULT_WORD_CAP = 1_000_000


@dataclass
class GeodesicSet:
    """Geodesics from source to target; count is always exact, words may be capped."""

    source: object
    target: object
    distance: int
    count: int
    words: tuple
    truncated: bool


def _inversions(perm) -> int:
    n = len(perm)
    inv = 0
    for i in range(n):
        pi = perm[i]
        for j in range(i + 1, n):
            if pi > perm[j]:
                inv += 1
    return inv


class DistanceOracle:
    """Geodesic distance queries for one model under one strategy."""

    def __init__(self, model: GroupModel, strategy: str | None = None, cache_dir=None):
        self.model = model
        self.strategy = strategy or _default_strategy(model)
        _check_strategy(model, self.strategy)
        if self.strategy == "table":
            self._init_table(cache_dir)

    # -- table internals ----------------------------------------------------

    def _init_table(self, cache_dir):
        model = self.model
        n = model.n
        gens = model.generating_set.generators
        perms = all_perms_array(n)
        k = len(gens)
        nf = len(perms)
        gen_tables = np.empty((k, nf), dtype=np.int32)
        for j, s in enumerate(gens):
            s_arr = np.array(s, dtype=np.uint8)
            gen_tables[j] = rank_rows(s_arr[perms])
        inv_gen_tables = np.empty_like(gen_tables)
        idx = np.arange(nf, dtype=np.int32)
        for j in range(k):
            inv_gen_tables[j][gen_tables[j]] = idx
        self.gen_tables = gen_tables
        self.inv_gen_tables = inv_gen_tables
        self.inverse_ranks = rank_rows(
            np.argsort(perms, axis=1).astype(np.uint8)
        ).astype(np.int32)
        cached = None
        if cache_dir is not None:
            path = cache_path(model, cache_dir)
            if path.exists():
                cached = load_table_cache(model, path)
        if cached is not None:
            self.lengths = cached
            self.parent_gen = None
        else:
            self.lengths, self.parent_gen = _bfs_table(gen_tables)

    def rank(self, g) -> int:
        return perm_rank(g)

    def unrank(self, r: int):
        return perm_unrank(r, self.model.n)

    def parents(self) -> np.ndarray:
        """Per-rank generator index of one BFS parent (rebuilt if cache-loaded)."""
        if self.parent_gen is None:
            self.lengths, self.parent_gen = _bfs_table(self.gen_tables)
        return self.parent_gen

    def word_ranks(self, r: int) -> list[int]:
        """Generator indices of one geodesic word from the identity to rank r."""
        self.parents()
        letters = []
        while r != 0:
            j = int(self.parent_gen[r])
            if j == UNREACHED:
                raise UnreachableError(f"rank {r} not reachable in {self.model.name}")
            letters.append(j)
            r = int(self.inv_gen_tables[j][r])
        letters.reverse()
        return letters

    # -- distances -----------------------------------------------------------

    def length(self, g) -> int:
        model = self.model
        if self.strategy == "table":
            d = int(self.lengths[perm_rank(model.check_element(g))])
            if d == UNREACHED:
                raise UnreachableError(
                    f"{model.format_element(g)} not reachable in {model.name}"
                )
            return d
        return self.distance(model.identity, g)

    def distance(self, g, h) -> int:
        model = self.model
        if self.strategy == "analytic":
            return self._analytic_distance(g, h)
        t = model.multiply(model.inverse(g), h)
        if self.strategy == "table":
            d = int(self.lengths[perm_rank(t)])
            if d == UNREACHED:
                raise UnreachableError(
                    f"no word from {model.format_element(g)} to {model.format_element(h)}"
                )
            return d
        return _bidirectional_distance(model, model.identity, t)

    def _analytic_distance(self, g, h) -> int:
        model = self.model
        if isinstance(model, FreeAbelianModel):
            return abs(h[0] - g[0]) + abs(h[1] - g[1])
        if isinstance(model, CyclicModel):
            k = (model.check_element(h) - model.check_element(g)) % model.n
            if model.inverse_closed_set:
                return min(k, model.n - k)
            return k
        # adjacent transpositions: Coxeter length = inversion count
        return _inversions(model.multiply(model.inverse(g), h))

    def diameter(self) -> int:
        model = self.model
        if isinstance(model, CyclicModel):
            return model.n // 2 if model.inverse_closed_set else model.n - 1
        if isinstance(model, SymmetricModel) and model.kind == "adjacent":
            return model.n * (model.n - 1) // 2
        if self.strategy == "table":
            reached = self.lengths[self.lengths != UNREACHED]
            return int(reached.max())
        raise CapabilityError(f"diameter unsupported for {model.name} ({self.strategy})")

    # -- neighborhoods and geodesics -----------------------------------------

    def ball(self, g, radius: int) -> set:
        """Elements h with d(g, h) <= radius."""
        if radius < 0:
            raise ModelError(f"radius must be nonnegative, got {radius}")
        model = self.model
        gens = model.generating_set.generators
        seen = {model.check_element(g)}
        frontier = [g]
        for _ in range(radius):
            nxt = []
            for x in frontier:
                for s in gens:
                    y = model.multiply(x, s)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            if not nxt:
                break
            frontier = nxt
        return seen

    def geodesics(self, g, h, enumerate_words: bool = False, cap: int = DEFAULT_WORD_CAP) -> GeodesicSet:
        """All geodesic words from g to h; count stays exact when words are capped."""
        model = self.model
        gens = model.generating_set.generators
        total = self.distance(g, h)
        memo = {h: 1}

        def count_from(x):
            c = memo.get(x)
            if c is not None:
                return c
            dx = self.distance(x, h)
            c = 0
            for s in gens:
                y = model.multiply(x, s)
                if self.distance(y, h) == dx - 1:
                    c += count_from(y)
            memo[x] = c
            return c

        count = count_from(g)
        words: list[tuple] = []
        truncated = False
        if enumerate_words:
            prefix: list[int] = []

            def dfs(x, dx):
                nonlocal truncated
                if truncated:
                    return
                if dx == 0:
                    if len(words) < cap:
                        words.append(tuple(prefix))
                    else:
                        truncated = True
                    return
                for j, s in enumerate(gens):
                    y = model.multiply(x, s)
                    if self.distance(y, h) == dx - 1:
                        prefix.append(j)
                        dfs(y, dx - 1)
                        prefix.pop()
                        if truncated:
                            return

            dfs(g, total)
        return GeodesicSet(g, h, total, count, tuple(words), truncated)


def _default_strategy(model: GroupModel) -> str:
    if isinstance(model, (FreeAbelianModel, CyclicModel)):
        return "analytic"
    if isinstance(model, SymmetricModel):
        if model.kind == "adjacent":
            return "analytic"
        if model.n <= 9:
            return "table"
        return "bidirectional"
    raise ModelError(f"no strategy for {model!r}")


def _check_strategy(model: GroupModel, strategy: str):
    ok = {
        "analytic": isinstance(model, (FreeAbelianModel, CyclicModel))
        or (isinstance(model, SymmetricModel) and model.kind == "adjacent"),
        "table": isinstance(model, SymmetricModel) and model.n <= 9,
        "bidirectional": isinstance(model, SymmetricModel),
    }.get(strategy)
    if ok is None:
        raise ModelError(f"unknown strategy {strategy!r}")
    if not ok:
        raise CapabilityError(f"strategy {strategy!r} unsupported for {model.name}")


def build_oracle(model: GroupModel, strategy: str | None = None, cache_dir=None) -> DistanceOracle:
    return DistanceOracle(model, strategy, cache_dir)


def _bfs_table(gen_tables: np.ndarray):
    """Level-synchronous BFS from the identity over rank-indexed generator tables."""
    k, nf = gen_tables.shape
    dist = np.full(nf, UNREACHED, dtype=np.uint8)
    parent = np.full(nf, UNREACHED, dtype=np.uint8)
    dist[0] = 0
    frontier = np.zeros(1, dtype=np.int32)
    level = 0
    while frontier.size:
        level += 1
        fresh_parts = []
        for j in range(k):
            cand = gen_tables[j][frontier]
            fresh = np.unique(cand[dist[cand] == UNREACHED])
            if fresh.size:
                dist[fresh] = level
                parent[fresh] = j
                fresh_parts.append(fresh)
        frontier = (
            np.concatenate(fresh_parts) if fresh_parts else np.empty(0, dtype=np.int32)
        )
    return dist, parent


def _bidirectional_distance(model: GroupModel, g, h) -> int:
    if g == h:
        return 0
    gens = model.generating_set.generators
    inv_gens = tuple(model.inverse(s) for s in gens)
    fwd = {g: 0}
    bwd = {h: 0}
    fwd_frontier, bwd_frontier = [g], [h]
    df = db = 0
    best = None
    while fwd_frontier and bwd_frontier:
        if best is not None and df + db + 1 >= best:
            return best
        if len(fwd_frontier) <= len(bwd_frontier):
            seen, frontier, other, step, depth = fwd, fwd_frontier, bwd, gens, df + 1
        else:
            seen, frontier, other, step, depth = bwd, bwd_frontier, fwd, inv_gens, db + 1
        new = []
        for x in frontier:
            for s in step:
                y = model.multiply(x, s)
                if y not in seen:
                    seen[y] = depth
                    new.append(y)
                    if y in other:
                        total = depth + other[y]
                        if best is None or total < best:
                            best = total
        if seen is fwd:
            fwd_frontier, df = new, depth
        else:
            bwd_frontier, db = new, depth
    if best is not None:
        return best
    raise UnreachableError(
        f"no word from {model.format_element(g)} to {model.format_element(h)}"
    )


# ---------------------------------------------------------------------------
# distance table cache files
#
# Layout (little-endian for multi-byte fields):
#   magic "CAYD" | version u8 | descriptor length u16 + utf-8 bytes |
#   FNV-1a 64-bit hash of the generator text u64 | n u8 | n! distance bytes
#   in Lehmer-rank order (255 = unreached).

CACHE_MAGIC = b"CAYD"
CACHE_VERSION = 1


def _fnv1a64(data: bytes) -> int:
    h = 14695981039346656037
    for byte in data:
        h ^= byte
        h = (h * 1099511628211) & 0xFFFFFFFFFFFFFFFF
    return h


def generator_text(model: GroupModel) -> str:
    return ";".join(model.format_element(s) for s in model.generating_set)


def cache_path(model: GroupModel, cache_dir) -> Path:
    import re as _re

    stem = _re.sub(r"[^A-Za-z0-9._-]+", "-", model.name)
    return Path(cache_dir) / f"{stem}.cayd"


def default_cache_dir() -> Path | None:
    env = os.environ.get("CAYLEYKIT_CACHE_DIR")
    return Path(env) if env else None


def save_table_cache(model: GroupModel, lengths: np.ndarray, path) -> Path:
    if not isinstance(model, SymmetricModel):
        raise CapabilityError(f"table caches apply to symmetric models, not {model.name}")
    if len(lengths) != factorial(model.n):
        raise CacheError(f"table has {len(lengths)} entries, expected {factorial(model.n)}")
    desc = model.name.encode("utf-8")
    header = CACHE_MAGIC + struct.pack("<BH", CACHE_VERSION, len(desc)) + desc
    header += struct.pack("<QB", _fnv1a64(generator_text(model).encode("utf-8")), model.n)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(header + lengths.astype(np.uint8).tobytes())
    return path


def load_table_cache(model: GroupModel, path) -> np.ndarray:
    raw = Path(path).read_bytes()
    if raw[:4] != CACHE_MAGIC:
        raise CacheError(f"{path}: bad magic")
    version, desc_len = struct.unpack_from("<BH", raw, 4)
    if version != CACHE_VERSION:
        raise CacheError(f"{path}: unsupported version {version}")
    pos = 7
    desc = raw[pos : pos + desc_len].decode("utf-8")
    pos += desc_len
    stored_hash, n = struct.unpack_from("<QB", raw, pos)
    pos += 9
    if desc != model.name:
        raise CacheError(f"{path}: descriptor {desc!r} does not match model {model.name!r}")
    want = _fnv1a64(generator_text(model).encode("utf-8"))
    if stored_hash != want:
        raise CacheError(f"{path}: generator-set hash mismatch")
    if n != model.n:
        raise CacheError(f"{path}: n={n} does not match model n={model.n}")
    payload = raw[pos:]
    if len(payload) != factorial(n):
        raise CacheError(f"{path}: payload has {len(payload)} bytes, expected {factorial(n)}")
    return np.frombuffer(payload, dtype=np.uint8).copy()


def verify_table_cache(model: GroupModel, path) -> None:
    """Load a cache and run the distance sanity sweep; raises CacheError on damage."""
    lengths = load_table_cache(model, path)
    oracle = DistanceOracle(model, "table")  # fresh tables for the sweep
    gen_tables, inv_gen_tables = oracle.gen_tables, oracle.inv_gen_tables
    if lengths[0] != 0:
        raise CacheError(f"{path}: identity distance is {lengths[0]}, not 0")
    if int(np.count_nonzero(lengths == 0)) != 1:
        raise CacheError(f"{path}: multiple zero entries")
    reached = lengths != UNREACHED
    dist16 = lengths.astype(np.int16)
    for j in range(len(gen_tables)):
        nbr = dist16[gen_tables[j][reached]]
        if np.any(nbr > dist16[reached] + 1):
            raise CacheError(f"{path}: distance jump along generator {j}")
        if np.any(nbr == UNREACHED):
            raise CacheError(f"{path}: reached element with unreached successor")
    prev_best = np.min(
        np.stack([dist16[inv_gen_tables[j]] for j in range(len(gen_tables))]), axis=0
    )
    interior = reached & (lengths > 0)
    if np.any(prev_best[interior] != dist16[interior] - 1):
        raise CacheError(f"{path}: element with no predecessor one step closer")
