"""Deterministic seeded sampling of rational points and elements.

Every randomized routine in the package derives a private stream seed from
(seed, domain tag, trial index) with a fixed 64-bit mixing function, so runs
are reproducible bit-for-bit and trial t never depends on how many other
trials run around it.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

__all__ = ["derive_seed", "rng", "random_coords", "random_components", "DEFAULT_BOUND"]

DEFAULT_BOUND = 1000

# Domain tags keep the seeded streams of different subsystems disjoint.
TAG_INDEX = 1
TAG_COADJOINT = 2
TAG_OMEGA = 3
TAG_REGULARITY = 4
TAG_INVARIANCE = 5
TAG_IDEAL = 6
TAG_NULLFIBER = 7
TAG_STRATA = 8
TAG_HOMOGENEITY = 9

_MASK = (1 << 64) - 1


def _mix(x: int) -> int:
    # splitmix64 finalizer; stable across platforms and Python versions.
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return (z ^ (z >> 31)) & _MASK


def derive_seed(seed: int, *parts: int) -> int:
    """Stable stream seed for (seed, *parts); independent of call order."""
    acc = _mix(seed & _MASK)
    for p in parts:
        acc = _mix(acc ^ _mix(p & _MASK))
    return acc


def rng(seed: int, *parts: int) -> random.Random:
    return random.Random(derive_seed(seed, *parts))


def random_coords(names: Sequence[str], r: random.Random,
                  bound: int = DEFAULT_BOUND) -> dict[str, Fraction]:
    """Point with integer coordinates uniform in [-bound, bound]."""
    return {name: Fraction(r.randint(-bound, bound)) for name in names}


def random_components(names: Sequence[str], depth: int, r: random.Random,
                      bound: int = DEFAULT_BOUND) -> list[dict[str, Fraction]]:
    """A (depth+1)-component tuple of random points over the same basis."""
    return [random_coords(names, r, bound) for _ in range(depth + 1)]
