"""Logical topologies: the NSFNET reference network and randomized mesh variants.

Ensemble members (ACMNs) keep NSFNET's node count, link count and degree
sequence by default; they are produced by seeded degree-preserving double
edge swaps. A uniform random-graph mode is available as an alternative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

NSFNET_NODE_NAMES = (
    "WA", "CA1", "CA2", "UT", "CO", "TX", "NE",
    "IL", "PA", "GA", "MI", "NY", "NJ", "MD",
)

# 14-node / 21-link NSFNET with link lengths in km (fibre route estimates).
_NSFNET_LINKS = (
    (0, 1, 1386), (0, 2, 2162), (0, 7, 3692),
    (1, 2, 982), (1, 3, 1379),
    (2, 5, 3214),
    (3, 4, 736), (3, 10, 3149),
    (4, 5, 1826), (4, 6, 954),
    (5, 9, 1551), (5, 13, 2889),
    (6, 7, 943),
    (7, 8, 941),
    (8, 9, 1171), (8, 11, 488), (8, 12, 603),
    (10, 11, 676), (10, 12, 1029),
    (11, 13, 516),
    (12, 13, 436),
)

DEFAULT_NODE_COUNT = 14
DEFAULT_LINK_COUNT = 21


class TopologyError(ValueError):
    pass


@dataclass(frozen=True)
class LogicalTopology:
    """Undirected simple graph; links stored canonically ((a, b), a < b, sorted)."""

    name: str
    node_count: int
    links: tuple[tuple[int, int], ...]

    @property
    def link_count(self) -> int:
        return len(self.links)

    def degrees(self) -> list[int]:
        deg = [0] * self.node_count
        for a, b in self.links:
            deg[a] += 1
            deg[b] += 1
        return deg

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.node_count)]
        for a, b in self.links:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def link_index(self) -> dict[tuple[int, int], int]:
        return {lk: i for i, lk in enumerate(self.links)}


def canonical_links(links) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((min(a, b), max(a, b)) for a, b in links))


def make_topology(name, node_count, links) -> LogicalTopology:
    t = LogicalTopology(name, node_count, canonical_links(links))
    validate(t)
    return t


def validate(t: LogicalTopology, min_degree: int = 2) -> None:
    """Raise TopologyError unless t is a connected simple graph with min degree."""
    seen = set()
    for a, b in t.links:
        if a == b:
            raise TopologyError(f"{t.name}: self-loop at node {a}")
        if not (0 <= a < t.node_count and 0 <= b < t.node_count):
            raise TopologyError(f"{t.name}: link ({a},{b}) out of range")
        if (a, b) in seen:
            raise TopologyError(f"{t.name}: parallel link ({a},{b})")
        seen.add((a, b))
    if min(t.degrees()) < min_degree:
        raise TopologyError(f"{t.name}: node with degree < {min_degree}")
    if not _connected(t.adjacency(), t.node_count):
        raise TopologyError(f"{t.name}: graph is disconnected")


def _connected(adj, n) -> bool:
    stack = [0]
    seen = {0}
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == n


def load_nsfnet() -> tuple[LogicalTopology, tuple[float, ...]]:
    """Return the embedded NSFNET graph and its per-link distances in km.

    Distances average 1463 km over the 21 links; shortest-path geometry gives
    a mean node-pair distance of about 3070 km and a normalized diameter of
    about 2.13.
    """
    links = canonical_links([(a, b) for a, b, _ in _NSFNET_LINKS])
    km = {(min(a, b), max(a, b)): float(d) for a, b, d in _NSFNET_LINKS}
    t = make_topology("nsfnet", DEFAULT_NODE_COUNT, links)
    return t, tuple(km[lk] for lk in t.links)


def node_pairs(t: LogicalTopology) -> list[tuple[int, int]]:
    """All unordered node pairs (a, b), a < b, in lexicographic order."""
    return [(a, b) for a in range(t.node_count) for b in range(a + 1, t.node_count)]


def generate_acmn(
    seed: int,
    swaps: int = 100,
    mode: str = "edge-swap",
    max_attempts: int = 100_000,
) -> LogicalTopology:
    """Generate one random mesh variant, deterministically in `seed`.

    mode "edge-swap" (default): start from NSFNET and apply `swaps` accepted
    degree-preserving double edge swaps, rejecting any swap that would create
    a self-loop or parallel link or disconnect the graph.

    mode "uniform": rejection-sample a uniform random 14-node / 21-link simple
    graph until it is connected with minimum degree 2.

    Raises TopologyError if `max_attempts` proposals are exhausted.
    """
    rng = np.random.default_rng(seed)
    if mode == "edge-swap":
        links = _swap_randomize(rng, swaps, max_attempts)
    elif mode == "uniform":
        links = _uniform_random(rng, max_attempts)
    else:
        raise ValueError(f"unknown generation mode {mode!r}")
    return make_topology(f"acmn-{mode}-{seed}", DEFAULT_NODE_COUNT, links)


def _swap_randomize(rng, swaps, max_attempts):
    base, _ = load_nsfnet()
    n = base.node_count
    edges = list(base.links)
    eset = set(edges)
    adj = base.adjacency()
    accepted = 0
    for _ in range(max_attempts):
        if accepted >= swaps:
            return edges
        i, j = rng.integers(0, len(edges), size=2)
        if i == j:
            continue
        a, b = edges[i]
        c, d = edges[j]
        if rng.integers(0, 2):
            b, a = a, b
        # rewire (a,b),(c,d) -> (a,d),(c,b)
        e1 = (min(a, d), max(a, d))
        e2 = (min(c, b), max(c, b))
        if a == d or c == b or e1 in eset or e2 in eset or e1 == e2:
            continue
        adj[a].discard(b); adj[b].discard(a)
        adj[c].discard(d); adj[d].discard(c)
        adj[a].add(d); adj[d].add(a)
        adj[c].add(b); adj[b].add(c)
        if _connected(adj, n):
            eset.discard((min(a, b), max(a, b)))
            eset.discard((min(c, d), max(c, d)))
            eset.add(e1); eset.add(e2)
            edges[i] = e1
            edges[j] = e2
            accepted += 1
        else:
            adj[a].discard(d); adj[d].discard(a)
            adj[c].discard(b); adj[b].discard(c)
            adj[a].add(b); adj[b].add(a)
            adj[c].add(d); adj[d].add(c)
    raise TopologyError(f"edge-swap generation did not reach {swaps} swaps "
                        f"within {max_attempts} attempts")


def _uniform_random(rng, max_attempts):
    n = DEFAULT_NODE_COUNT
    m = DEFAULT_LINK_COUNT
    all_pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    for _ in range(max_attempts):
        pick = rng.choice(len(all_pairs), size=m, replace=False)
        links = [all_pairs[i] for i in sorted(pick)]
        deg = [0] * n
        adj = [set() for _ in range(n)]
        for a, b in links:
            deg[a] += 1; deg[b] += 1
            adj[a].add(b); adj[b].add(a)
        if min(deg) >= 2 and _connected(adj, n):
            return links
    raise TopologyError(f"uniform generation failed within {max_attempts} attempts")


def to_json_dict(t: LogicalTopology, length_km=None) -> dict:
    d = {"name": t.name, "nodes": t.node_count,
         "links": [list(lk) for lk in t.links]}
    if length_km is not None:
        d["length_km"] = [float(x) for x in length_km]
    return d


def from_json_dict(d: dict) -> tuple[LogicalTopology, tuple[float, ...] | None]:
    t = make_topology(d.get("name", "unnamed"), int(d["nodes"]), d["links"])
    km = d.get("length_km")
    if km is not None:
        if len(km) != t.link_count:
            raise TopologyError("length_km does not match link count")
        # lengths are given in file link order; re-key to canonical order
        file_pairs = [(min(a, b), max(a, b)) for a, b in d["links"]]
        by_link = {lk: float(x) for lk, x in zip(file_pairs, km)}
        km = tuple(by_link[lk] for lk in t.links)
    return t, km
