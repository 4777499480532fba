"""Deterministic graph families for tests, golden files and the ``gen`` command.

Randomness comes from SplitMix64 (Steele, Lea, Flood 2014), fully specified
by the constants below, so a given ``GenSpec`` yields the same graph on every
platform and Python version:

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)            (all arithmetic mod 2**64)
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from .graph import Graph, GraphError

log = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB

MAX_RESAMPLES = 10_000
FAMILIES = ("tree", "cycle", "subdividedK2r", "randomConnected", "treePlusChords")


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * MIX1) & MASK64
        z = ((z ^ (z >> 27)) * MIX2) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` by rejection, free of modulo bias."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next()
            if x < limit:
                return x % bound

    def bernoulli(self, p: Fraction) -> bool:
        return self.below(p.denominator) < p.numerator


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int = 0
    r: int = 3
    t: int = 1
    p: Fraction = Fraction(1, 2)
    chords: int = 0
    seed: int = 0


def _random_tree_edges(n: int, rng: SplitMix64) -> list[tuple[int, int]]:
    return [(rng.below(v), v) for v in range(1, n)]


def generate(spec: GenSpec) -> Graph:
    f = spec.family
    if f not in FAMILIES:
        raise GraphError(f"unknown family {f!r}; expected one of {', '.join(FAMILIES)}")
    if f == "subdividedK2r":
        return subdivided_k2r(spec.r, spec.t)
    if spec.n < 1:
        raise GraphError("n must be >= 1")
    rng = SplitMix64(spec.seed)
    if f == "tree":
        return Graph.from_edges(spec.n, _random_tree_edges(spec.n, rng))
    if f == "cycle":
        if spec.n < 3:
            raise GraphError("a cycle needs n >= 3")
        return Graph.from_edges(spec.n, [(i, (i + 1) % spec.n) for i in range(spec.n)])
    if f == "randomConnected":
        return random_connected(spec.n, Fraction(spec.p), rng)
    return tree_plus_chords(spec.n, spec.chords, rng)


def subdivided_k2r(r: int, t: int) -> Graph:
    """K_{2,r} with every edge replaced by a path of ``t`` edges.

    Vertex 0 and 1 are the two hubs, ``2..r+1`` the middle vertices, and the
    subdivision vertices follow.
    """
    if r < 2 or t < 1:
        raise GraphError("subdividedK2r needs r >= 2 and t >= 1")
    edges = []
    nxt = r + 2
    for hub in (0, 1):
        for k in range(r):
            prev = hub
            for _ in range(t - 1):
                edges.append((prev, nxt))
                prev = nxt
                nxt += 1
            edges.append((prev, 2 + k))
    return Graph.from_edges(nxt, edges)


def random_connected(n: int, p: Fraction, rng: SplitMix64) -> Graph:
    """G(n, p) conditioned on connectivity by rejection."""
    if not 0 <= p <= 1:
        raise GraphError("edge probability must lie in [0, 1]")
    if n == 1:
        return Graph.from_edges(1, [])
    for attempt in range(1, MAX_RESAMPLES + 1):
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.bernoulli(p)]
        try:
            g = Graph.from_edges(n, edges)
        except GraphError:
            continue
        if attempt > 1:
            log.info("randomConnected(n=%d, p=%s): connected after %d samples", n, p, attempt)
        return g
    raise GraphError(f"randomConnected(n={n}, p={p}) not connected after {MAX_RESAMPLES} samples")


def tree_plus_chords(n: int, k: int, rng: SplitMix64) -> Graph:
    edges = _random_tree_edges(n, rng)
    present = {(min(u, v), max(u, v)) for u, v in edges}
    free = n * (n - 1) // 2 - len(present)
    if k > free:
        raise GraphError(f"only {free} non-edges available for {k} chords")
    while k > 0:
        u, v = rng.below(n), rng.below(n)
        key = (min(u, v), max(u, v))
        if u == v or key in present:
            continue
        present.add(key)
        edges.append(key)
        k -= 1
    return Graph.from_edges(n, edges)


def expected_witness(spec: GenSpec) -> str | None:
    """Known outcome of the outerplanar pipeline for families with a closed form."""
    if spec.family == "tree":
        return "Embedding@1"
    if spec.family == "subdividedK2r" and spec.r >= 3:
        return f"FarTriple for lambda < {Fraction(spec.t - 1, 2)}"
    if spec.family == "cycle":
        return "Embedding@1 (cycle closed in the host when the cycle has big clusters)"
    return None
