"""Seeded random instances.

All randomness comes from SplitMix64 (Steele, Lea & Flood 2014) so corpora
are reproducible from a single 64-bit seed in any language:

    next():      state = (state + 0x9E3779B97F4A7C15) mod 2**64
                 z = state
                 z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
                 z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
                 return z ^ (z >> 31)
    below(n):    draw x = next() until x < 2**64 - (2**64 mod n); return x mod n
    chance(p):   (next() >> 11) < round(p * 2**53)

Instance ``k`` of a corpus uses the ``k``-th output of a master generator
seeded with the corpus seed as its own seed.
"""

from __future__ import annotations

from .core import GameDag
from .rulesets import DagGame, Nim, NodeKayles, dag_from_children

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        limit = (1 << 64) - (1 << 64) % n
        while True:
            x = self.next()
            if x < limit:
                return x % n

    def chance(self, p: float) -> bool:
        return (self.next() >> 11) < round(p * (1 << 53))


def instance_seeds(seed: int, count: int) -> list[int]:
    master = SplitMix64(seed)
    return [master.next() for _ in range(count)]


def random_nim(rng: SplitMix64, piles: int, max_stones: int) -> Nim:
    """Exactly ``piles`` piles, each uniform in ``0..max_stones``."""
    if piles < 0 or max_stones < 0:
        raise ValueError("pile count and size must be non-negative")
    return Nim(tuple(rng.below(max_stones + 1) for _ in range(piles)))


def random_kayles(rng: SplitMix64, vertices: int, edge_prob: float) -> NodeKayles:
    """G(n, p) on vertices ``0..n-1``; pairs drawn in lexicographic order."""
    if vertices < 0 or not 0 <= edge_prob <= 1:
        raise ValueError("need vertices >= 0 and 0 <= edge_prob <= 1")
    edges = [(i, j) for i in range(vertices) for j in range(i + 1, vertices) if rng.chance(edge_prob)]
    return NodeKayles.from_edges(range(vertices), edges)


def random_dag(rng: SplitMix64, nodes: int, edge_prob: float = 0.05) -> GameDag:
    """Random DAG on ``0..n-1`` rooted at 0, all edges pointing to larger ids.

    Every node ``j > 0`` first receives one parent uniform in ``0..j-1``
    (so everything is reachable), then each other pair ``i < j`` becomes an
    edge with probability ``edge_prob``.
    """
    if nodes < 1 or not 0 <= edge_prob <= 1:
        raise ValueError("need nodes >= 1 and 0 <= edge_prob <= 1")
    children: list[set[int]] = [set() for _ in range(nodes)]
    for j in range(1, nodes):
        children[rng.below(j)].add(j)
    for i in range(nodes):
        for j in range(i + 1, nodes):
            if j not in children[i] and rng.chance(edge_prob):
                children[i].add(j)
    return dag_from_children([sorted(c) for c in children])


KINDS = ("nim", "kayles", "dag")


def corpus_instance(seed: int, kind: str, caps: dict):
    """One corpus game of the given kind, within ``caps``.

    caps keys: ``piles``, ``stones``, ``kayles``, ``kayles_p``, ``dag``,
    ``dag_p`` (maxima; sizes are drawn uniformly from 1..max, stones from
    0..max).
    """
    rng = SplitMix64(seed)
    if kind == "nim":
        return random_nim(rng, 1 + rng.below(caps["piles"]), caps["stones"])
    if kind == "kayles":
        return random_kayles(rng, 1 + rng.below(caps["kayles"]), caps.get("kayles_p", 0.4))
    if kind == "dag":
        return DagGame.root(random_dag(rng, 1 + rng.below(caps["dag"]), caps.get("dag_p", 0.05)))
    raise ValueError(f"unknown kind {kind!r}")


DEFAULT_CAPS = {"piles": 4, "stones": 4, "kayles": 7, "kayles_p": 0.4, "dag": 60, "dag_p": 0.05}
PAIR_CAPS = {"piles": 3, "stones": 3, "kayles": 5, "kayles_p": 0.4, "dag": 15, "dag_p": 0.1}


def corpus(seed: int, count: int, caps: dict | None = None) -> list:
    """``count`` games cycling through Nim, Node Kayles and DAG instances."""
    caps = DEFAULT_CAPS if caps is None else caps
    return [corpus_instance(s, KINDS[k % 3], caps) for k, s in enumerate(instance_seeds(seed, count))]


def pair_corpus(seed: int, count: int, caps: dict | None = None) -> list[tuple]:
    caps = PAIR_CAPS if caps is None else caps
    seeds = instance_seeds(seed, 2 * count)
    return [
        (
            corpus_instance(seeds[2 * k], KINDS[k % 3], caps),
            corpus_instance(seeds[2 * k + 1], KINDS[(k // 3) % 3], caps),
        )
        for k in range(count)
    ]
