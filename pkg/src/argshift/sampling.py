"""Deterministic seeded sampling.

Every randomized check in the workbench draws from a per-trial stream
keyed by (seed, labels, counter), so results are reproducible under a
fixed seed and independent of evaluation order.  CPython seeds Random
from strings via SHA-512, which is stable across runs and platforms.
"""

from __future__ import annotations

import random
from fractions import Fraction


def rng_stream(seed: int, *labels: object) -> random.Random:
    key = "argshift|" + "|".join(str(x) for x in (seed,) + labels)
    return random.Random(key)


def integer_point(rng: random.Random, dim: int, bound: int,
                  nonzero: bool = True) -> tuple[Fraction, ...]:
    """Point with integer coordinates in [-bound, bound]."""
    if bound < 1:
        raise ValueError("bound must be positive")
    while True:
        pt = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(dim))
        if not nonzero or any(x != 0 for x in pt):
            return pt
