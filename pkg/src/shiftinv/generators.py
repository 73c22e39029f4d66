"""Random test instances: groups, small-denominator laws, fixed-point pairs."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator

import numpy as np

from .groups import GroupSpec, Subgroup, coset_partition, generated_subgroup
from .measure import Distribution


def factorizations(n: int, max_factor: int | None = None) -> Iterator[tuple[int, ...]]:
    """Multisets of factors > 1 with product n, as nonincreasing tuples."""
    if n == 1:
        yield ()
        return
    top = n if max_factor is None else min(n, max_factor)
    for f in range(top, 1, -1):
        if n % f == 0:
            for rest in factorizations(n // f, f):
                yield (f,) + rest


def all_group_specs(max_order: int) -> list[GroupSpec]:
    """Every cyclic decomposition Z_{n_1} x ... x Z_{n_k} with order <= max_order.

    Isomorphic presentations (Z_6 and Z_3 x Z_2) are both listed.
    """
    specs = [GroupSpec((1,))]
    for n in range(2, max_order + 1):
        specs.extend(GroupSpec(f) for f in factorizations(n))
    return specs


def random_law(
    rng: np.random.Generator, spec: GroupSpec, support_size: int | None = None, max_weight: int = 5
) -> Distribution:
    """Law with small integer weights on a random support, normalized exactly."""
    n = spec.order
    if support_size is None:
        support_size = int(rng.integers(1, n + 1))
    support = rng.choice(n, size=min(support_size, n), replace=False)
    weights = rng.integers(1, max_weight + 1, size=len(support))
    total = int(weights.sum())
    return Distribution(spec, {int(i): Fraction(int(w), total) for i, w in zip(support, weights)})


def random_subgroup(rng: np.random.Generator, spec: GroupSpec, max_gens: int = 2) -> Subgroup:
    k = int(rng.integers(1, max_gens + 1))
    gens = [spec.element_at(int(i)) for i in rng.integers(0, spec.order, size=k)]
    return generated_subgroup(gens)


def random_coset_law(rng: np.random.Generator, sub: Subgroup, max_weight: int = 5) -> Distribution:
    """Law constant on cosets of sub, with random coset weights (some zero)."""
    cosets = coset_partition(sub)
    w = rng.integers(0, max_weight + 1, size=len(cosets))
    if w.sum() == 0:
        w[int(rng.integers(len(cosets)))] = 1
    total = int(w.sum()) * len(sub)
    probs = {}
    for c, wc in zip(cosets, w):
        for x in c:
            probs[x] = Fraction(int(wc), total)
    return Distribution(sub.spec, probs)


def random_pair(rng: np.random.Generator, spec: GroupSpec) -> tuple[Distribution, Distribution]:
    """A (mu_X, mu_Y) pair that is a fixed point about two times in three.

    Fixed-point-biased pairs take mu_X constant on cosets of a random
    subgroup H and mu_Y supported in H; sometimes one point outside H is
    added to mu_Y so near misses are exercised too.
    """
    mode = int(rng.integers(3))
    if mode == 0:
        return random_law(rng, spec), random_law(rng, spec)
    sub = random_subgroup(rng, spec)
    mu_X = random_coset_law(rng, sub)
    inside = [e.index for e in sub]
    size = int(rng.integers(1, len(inside) + 1))
    support = [int(i) for i in rng.choice(inside, size=size, replace=False)]
    if mode == 2 and len(inside) < spec.order:
        outside = sorted(set(range(spec.order)) - set(inside))
        support.append(int(rng.choice(outside)))
    w = rng.integers(1, 6, size=len(support))
    total = int(w.sum())
    mu_Y = Distribution(spec, {i: Fraction(int(x), total) for i, x in zip(support, w)})
    return mu_X, mu_Y


def random_circle_support(rng: np.random.Generator, max_den: int = 30, max_points: int = 4) -> list[Fraction]:
    k = int(rng.integers(1, max_points + 1))
    out = []
    for _ in range(k):
        q = int(rng.integers(1, max_den + 1))
        p = int(rng.integers(0, q))
        out.append(Fraction(p, q))
    return out


def lcm_of_denominators(points) -> int:
    return math.lcm(*(Fraction(p).denominator for p in points))
