"""Reproducible rational sample points.

Each sample is derived from ``(seed, index)`` alone, so any subset of trials can
be replayed, and parallel execution order never changes the sequence.
"""

from __future__ import annotations

import os
import random
from fractions import Fraction
from typing import Sequence

MAX_NUMERATOR = 100
MAX_DENOMINATOR = 100
SEED_ENV = "HYPERCERT_SEED"


def rng_for(seed: int, index: int, stream: str = "") -> random.Random:
    return random.Random(f"{seed}:{stream}:{index}")


def random_rational(rng: random.Random, bound: int = MAX_NUMERATOR, den: int = MAX_DENOMINATOR) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, den))


def random_vector(rng: random.Random, n: int) -> tuple[Fraction, ...]:
    return tuple(random_rational(rng) for _ in range(n))


def structured_points(e: Sequence[Fraction]) -> list[tuple[Fraction, ...]]:
    """Standard basis vectors followed by e + e_i and e - e_i."""
    n = len(e)
    pts = []
    for i in range(n):
        pts.append(tuple(Fraction(int(i == j)) for j in range(n)))
    for sign in (1, -1):
        for i in range(n):
            pts.append(tuple(e[j] + sign * int(i == j) for j in range(n)))
    return pts


def project_off(x: Sequence[Fraction], e: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Move x along e into the hyperplane {x_k = 0}, k the first coordinate with e_k != 0."""
    k = next(i for i, v in enumerate(e) if v)
    s = x[k] / e[k]
    return tuple(xi - s * ei for xi, ei in zip(x, e))


def sample_point(seed: int, index: int, e: Sequence[Fraction], complement: bool = False,
                 structured: bool = True) -> tuple[Fraction, ...]:
    n = len(e)
    if structured and index < 3 * n:
        sign, i = divmod(index, n)
        unit = tuple(Fraction(int(i == j)) for j in range(n))
        x = unit if sign == 0 else tuple(a + (1 if sign == 1 else -1) * b for a, b in zip(e, unit))
    else:
        x = random_vector(rng_for(seed, index, "point"), len(e))
    return project_off(x, e) if complement else x


def resolve_seed(seed: int | None) -> int:
    """Explicit seed, else ``$HYPERCERT_SEED``, else a fresh random one."""
    if seed is not None:
        return int(seed)
    env = os.environ.get(SEED_ENV)
    if env:
        return int(env)
    return random.SystemRandom().randrange(2**31)
