"""Graded intervals of the prefix order: construction, statistics and shape tests.

An interval [g, h] holds every element on some geodesic from g to h, graded by
distance from g.  Construction walks rank sets outward from g: a candidate
g'*s joins rank i exactly when d(g'*s, h) = n - i, which forces d(g, g'*s) = i.
Rank sets keep first-discovered order (parent order, then generator index), so
builds are deterministic.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field

from .cayley import DistanceOracle
from .errors import ModelError


@dataclass
class GradedInterval:
    model: object
    bottom: object
    top: object
    length: int
    rank_sets: list
    cover_edges: list
    element_rank: dict = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.element_rank)

    @property
    def rank_profile(self) -> tuple:
        return tuple(len(r) for r in self.rank_sets)

    def __contains__(self, el) -> bool:
        return el in self.element_rank


def build_interval(oracle: DistanceOracle, g, h) -> GradedInterval:
    """All elements on geodesics from g to h, graded by distance from g."""
    model = oracle.model
    g = model.check_element(g)
    h = model.check_element(h)
    n = oracle.distance(g, h)
    gens = model.generating_set.generators
    rank_sets = [[g]]
    edges = []
    element_rank = {g: 0}
    for i in range(1, n + 1):
        ri = []
        for gp in rank_sets[i - 1]:
            for j, s in enumerate(gens):
                y = model.multiply(gp, s)
                if oracle.distance(y, h) == n - i:
                    if y not in element_rank:
                        element_rank[y] = i
                        ri.append(y)
                    edges.append((gp, j, y))
        rank_sets.append(ri)
    return GradedInterval(model, g, h, n, rank_sets, edges, element_rank)


def prefix_le(oracle: DistanceOracle, g1, g2) -> bool:
    """g1 <= g2 in the prefix order: l(g2) = l(g1) + d(g1, g2)."""
    from .errors import UnreachableError

    try:
        return oracle.length(g2) == oracle.length(g1) + oracle.distance(g1, g2)
    except UnreachableError:
        return False


def translate_interval(interval: GradedInterval, t) -> GradedInterval:
    """Left-translate every element by t; the graded structure is unchanged."""
    model = interval.model
    t = model.check_element(t)
    mul = model.multiply
    rank_sets = [[mul(t, x) for x in rs] for rs in interval.rank_sets]
    edges = [(mul(t, x), j, mul(t, y)) for x, j, y in interval.cover_edges]
    element_rank = {mul(t, x): r for x, r in interval.element_rank.items()}
    return GradedInterval(
        model,
        mul(t, interval.bottom),
        mul(t, interval.top),
        interval.length,
        rank_sets,
        edges,
        element_rank,
    )


# ---------------------------------------------------------------------------
# counting and order-theoretic statistics


def count_geodesics(interval: GradedInterval) -> int:
    """Number of geodesic words from bottom to top (paths in the cover DAG)."""
    counts = {interval.bottom: 1}
    children = {}
    for x, _, y in interval.cover_edges:
        children.setdefault(x, []).append(y)
    for rs in interval.rank_sets[:-1]:
        for x in rs:
            cx = counts.get(x, 0)
            for y in children.get(x, ()):
                counts[y] = counts.get(y, 0) + cx
    return counts.get(interval.top, 1 if interval.length == 0 else 0)


def _indexed(interval: GradedInterval):
    """Element -> dense index in rank-major discovery order."""
    index = {}
    for rs in interval.rank_sets:
        for x in rs:
            index[x] = len(index)
    return index


def _up_down_masks(interval: GradedInterval):
    """Reflexive up-sets and down-sets as bitmasks over the dense index."""
    index = _indexed(interval)
    m = len(index)
    children = [[] for _ in range(m)]
    parents = [[] for _ in range(m)]
    for x, _, y in interval.cover_edges:
        xi, yi = index[x], index[y]
        if yi not in children[xi]:
            children[xi].append(yi)
            parents[yi].append(xi)
    up = [0] * m
    for i in range(m - 1, -1, -1):
        mask = 1 << i
        for c in children[i]:
            mask |= up[c]
        up[i] = mask
    down = [0] * m
    for i in range(m):
        mask = 1 << i
        for p in parents[i]:
            mask |= down[p]
        down[i] = mask
    return index, up, down


def _hopcroft_karp(adj, m: int) -> int:
    """Maximum matching; adj[u] is a bitmask of right-side neighbours."""
    INF = float("inf")
    match_u = [-1] * m
    match_v = [-1] * m
    total = 0
    while True:
        dist = [INF] * m
        queue = [u for u in range(m) if match_u[u] == -1]
        for u in queue:
            dist[u] = 0
        free_reached = False
        qi = 0
        while qi < len(queue):
            u = queue[qi]
            qi += 1
            mask = adj[u]
            while mask:
                v = (mask & -mask).bit_length() - 1
                mask &= mask - 1
                w = match_v[v]
                if w == -1:
                    free_reached = True
                elif dist[w] is INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if not free_reached:
            return total

        def augment(u):
            mask = adj[u]
            while mask:
                v = (mask & -mask).bit_length() - 1
                mask &= mask - 1
                w = match_v[v]
                if w == -1 or (dist[w] == dist[u] + 1 and augment(w)):
                    match_u[u] = v
                    match_v[v] = u
                    return True
            dist[u] = INF
            return False

        for u in range(m):
            if match_u[u] == -1 and augment(u):
                total += 1


def max_antichain(interval: GradedInterval) -> int:
    """Largest antichain size, by Dilworth duality with a minimum chain cover."""
    index, up, down = _up_down_masks(interval)
    m = len(index)
    adj = [up[i] & ~(1 << i) for i in range(m)]  # strict comparabilities
    return m - _hopcroft_karp(adj, m)


def is_lattice(interval: GradedInterval) -> bool:
    """True iff every pair has a unique least upper and greatest lower bound."""
    index, up, down = _up_down_masks(interval)
    m = len(index)
    for i in range(m):
        for j in range(i + 1, m):
            ups = up[i] & up[j]
            least = ups & -ups  # lowest dense index = lowest rank
            if ups & ~up[least.bit_length() - 1]:
                return False
            dns = down[i] & down[j]
            top_bit = dns.bit_length() - 1
            if dns & ~down[top_bit]:
                return False
    return True


def is_sperner(interval: GradedInterval, antichain: int | None = None) -> bool:
    if antichain is None:
        antichain = max_antichain(interval)
    return antichain <= max(interval.rank_profile)


@dataclass
class IntervalStats:
    size: int
    length: int
    rank_profile: tuple
    geodesic_count: int
    max_antichain: int
    is_sperner: bool
    is_lattice: bool


def interval_stats(interval: GradedInterval) -> IntervalStats:
    antichain = max_antichain(interval)
    return IntervalStats(
        size=interval.size,
        length=interval.length,
        rank_profile=interval.rank_profile,
        geodesic_count=count_geodesics(interval),
        max_antichain=antichain,
        is_sperner=is_sperner(interval, antichain),
        is_lattice=is_lattice(interval),
    )


# ---------------------------------------------------------------------------
# rank-preserving isomorphism of cover DAGs


def _refine_colors(rank_of, children, parents, m):
    colors = list(rank_of)
    while True:
        sig = [
            (
                colors[i],
                tuple(sorted(colors[c] for c in children[i])),
                tuple(sorted(colors[p] for p in parents[i])),
            )
            for i in range(m)
        ]
        palette = {s: c for c, s in enumerate(sorted(set(sig)))}
        new = [palette[s] for s in sig]
        if new == colors:
            return colors
        colors = new


def _dag_arrays(interval: GradedInterval):
    index = _indexed(interval)
    m = len(index)
    rank_of = [0] * m
    for r, rs in enumerate(interval.rank_sets):
        for x in rs:
            rank_of[index[x]] = r
    children = [set() for _ in range(m)]
    parents = [set() for _ in range(m)]
    for x, _, y in interval.cover_edges:
        children[index[x]].add(index[y])
        parents[index[y]].add(index[x])
    return m, rank_of, children, parents


def order_isomorphic(a: GradedInterval, b: GradedInterval) -> bool:
    """Exact rank-preserving isomorphism test on the cover DAGs."""
    if a.size != b.size or a.rank_profile != b.rank_profile:
        return False
    if len(a.cover_edges) != len(b.cover_edges):
        return False
    m, rank_a, ch_a, pa_a = _dag_arrays(a)
    _, rank_b, ch_b, pa_b = _dag_arrays(b)
    col_a = _refine_colors(rank_a, ch_a, pa_a, m)
    col_b = _refine_colors(rank_b, ch_b, pa_b, m)
    from collections import Counter

    if Counter(col_a) != Counter(col_b):
        return False
    # rank-major order guarantees all parents are mapped before their children
    order = sorted(range(m), key=lambda i: (rank_a[i], col_a[i], i))
    by_color = {}
    for i in range(m):
        by_color.setdefault((rank_b[i], col_b[i]), []).append(i)
    mapping = [-1] * m
    used = [False] * m

    limit = sys.getrecursionlimit()
    if m * 2 + 100 > limit:
        sys.setrecursionlimit(m * 2 + 100)

    def extend(pos):
        if pos == m:
            return True
        i = order[pos]
        want_parents = {mapping[p] for p in pa_a[i]}
        for j in by_color.get((rank_a[i], col_a[i]), ()):
            if used[j] or pa_b[j] != want_parents:
                continue
            mapping[i] = j
            used[j] = True
            if extend(pos + 1):
                return True
            mapping[i] = -1
            used[j] = False
        return False

    try:
        return extend(0)
    finally:
        sys.setrecursionlimit(limit)


# ---------------------------------------------------------------------------
# partial builds


@dataclass
class PartialInterval:
    model: object
    bottom: object
    top: object
    length: int
    k: int
    front_sets: list
    back_sets: list

    @property
    def front_profile(self) -> tuple:
        return tuple(len(r) for r in self.front_sets)

    @property
    def back_profile(self) -> tuple:
        return tuple(len(r) for r in self.back_sets)


def partial_interval(oracle: DistanceOracle, g, h, k: int) -> PartialInterval:
    """First and last k grades of [g, h] without building the middle.

    front_sets holds grades 0..k outward from g; back_sets holds distances
    0..k inward from h (back_sets[0] = {h}).  k >= d(g, h) reproduces the
    full interval on both sides.
    """
    if k < 0:
        raise ModelError(f"k must be nonnegative, got {k}")
    model = oracle.model
    g = model.check_element(g)
    h = model.check_element(h)
    n = oracle.distance(g, h)
    gens = model.generating_set.generators
    depth = min(k, n)

    front = [[g]]
    seen = {g}
    for i in range(1, depth + 1):
        ri = []
        for gp in front[i - 1]:
            for s in gens:
                y = model.multiply(gp, s)
                if y not in seen and oracle.distance(y, h) == n - i:
                    seen.add(y)
                    ri.append(y)
        front.append(ri)

    inv_gens = [model.inverse(s) for s in gens]
    back = [[h]]
    seen_b = {h}
    for j in range(1, depth + 1):
        bj = []
        for hp in back[j - 1]:
            for s_inv in inv_gens:
                y = model.multiply(hp, s_inv)
                if y not in seen_b and oracle.distance(g, y) == n - j:
                    seen_b.add(y)
                    bj.append(y)
        back.append(bj)
    return PartialInterval(model, g, h, n, k, front, back)


# ---------------------------------------------------------------------------
# exports


def interval_to_json(interval: GradedInterval) -> dict:
    fmt = interval.model.format_element
    return {
        "model": interval.model.name,
        "bottom": fmt(interval.bottom),
        "top": fmt(interval.top),
        "length": interval.length,
        "size": interval.size,
        "rank_profile": list(interval.rank_profile),
        "rank_sets": [[fmt(x) for x in rs] for rs in interval.rank_sets],
        "cover_edges": [[fmt(x), j, fmt(y)] for x, j, y in interval.cover_edges],
    }


def interval_to_dot(interval: GradedInterval) -> str:
    fmt = interval.model.format_element
    gens = interval.model.generating_set.generators
    lines = ["digraph interval {", "  rankdir=BT;", "  node [shape=box];"]
    for rs in interval.rank_sets:
        names = "; ".join(f'"{fmt(x)}"' for x in rs)
        lines.append("  { rank=same; %s; }" % names)
    for x, j, y in interval.cover_edges:
        lines.append(f'  "{fmt(x)}" -> "{fmt(y)}" [label="{fmt(gens[j])}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
