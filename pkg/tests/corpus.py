"""The seeded 200-instance corpus shared by the acceptance and property suites."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from lpembed.generators import GenSpec, SplitMix64, generate

CORPUS_SEED = 20240611


@lru_cache(maxsize=None)
def corpus_specs() -> tuple[GenSpec, ...]:
    rng = SplitMix64(CORPUS_SEED)
    specs = []
    for k in range(60):
        n = 8 + rng.below(121)
        # just above the connectivity threshold ln(n)/n, so rejection stays cheap
        # while diameters stay non-trivial
        p = Fraction(math.ceil(math.log(n)) + 1 + rng.below(3), n)
        specs.append(GenSpec("randomConnected", n=n, p=p, seed=1000 + k))
    for k in range(50):
        n = 10 + rng.below(119)
        specs.append(GenSpec("treePlusChords", n=n, chords=1 + rng.below(6), seed=2000 + k))
    for n in [3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 20, 25, 30, 40, 50, 60, 70, 80, 90, 100]:
        specs.append(GenSpec("cycle", n=n))
    for k in range(20):
        specs.append(GenSpec("cycle", n=105 + 5 * k))
    for r, t in [(2, 1), (2, 5), (3, 1), (3, 2), (3, 3), (3, 4), (3, 5), (3, 6), (3, 8), (3, 10),
                 (4, 2), (4, 4), (4, 6), (4, 9), (5, 3), (5, 5), (5, 7), (6, 4), (2, 12), (3, 12)]:
        specs.append(GenSpec("subdividedK2r", r=r, t=t))
    for k in range(30):
        specs.append(GenSpec("tree", n=1 + rng.below(128), seed=3000 + k))
    assert len(specs) == 200
    return tuple(specs)


def spec_id(spec: GenSpec) -> str:
    if spec.family == "subdividedK2r":
        return f"K2r-{spec.r}-{spec.t}"
    return f"{spec.family}-{spec.n}-{spec.seed}"


@lru_cache(maxsize=None)
def corpus_graph(spec: GenSpec):
    return generate(spec)
