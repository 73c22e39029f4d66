"""Seeded sampling and empirical cross-checks.

Generator contract (version ``GENERATOR_VERSION``):

* bit generator: numpy PCG64, seeded through ``numpy.random.SeedSequence``;
* a single law is drawn from ``SeedSequence(seed)``;
* sub-streams use ``SeedSequence(seed, spawn_key=(k,))`` with k = 0 for X
  and k = 1 for Y, so the two streams are independent and reproducible;
* draws are inverse-CDF over the support in canonical element order, one
  uniform double per draw.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ValidationError
from .groups import GroupElement, GroupSpec
from .measure import Distribution, tv_distance

GENERATOR_VERSION = "pcg64-seedsequence-inverse-cdf/1"

STREAM_X = 0
STREAM_Y = 1


def _check_seed(seed: int) -> int:
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or not 0 <= seed < 2**64:
        raise ValidationError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return int(seed)


def make_rng(seed: int, stream: int | None = None) -> np.random.Generator:
    seed = _check_seed(seed)
    ss = np.random.SeedSequence(seed) if stream is None else np.random.SeedSequence(seed, spawn_key=(stream,))
    return np.random.Generator(np.random.PCG64(ss))


@dataclass(frozen=True, eq=False)
class EmpiricalTable:
    spec: GroupSpec
    counts: dict[GroupElement, int]
    total: int

    @classmethod
    def from_indices(cls, spec: GroupSpec, draws: np.ndarray) -> EmpiricalTable:
        binned = np.bincount(draws, minlength=spec.order)
        counts = {spec.element_at(int(i)): int(binned[i]) for i in np.flatnonzero(binned)}
        return cls(spec, counts, int(len(draws)))

    def to_distribution(self) -> Distribution:
        return Distribution(self.spec, {x: Fraction(c, self.total) for x, c in self.counts.items()})


def draw_indices(mu: Distribution, n: int, rng: np.random.Generator) -> np.ndarray:
    """n canonical element indices drawn from mu by inverse CDF."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise ValidationError(f"sample count must be a positive integer, got {n!r}")
    support = np.asarray(mu.support_indices(), dtype=np.int64)
    cdf = np.cumsum([float(p) for p in mu.weights.values()])
    cdf[-1] = 1.0
    u = rng.random(int(n))
    pos = np.searchsorted(cdf, u, side="right")
    return support[np.minimum(pos, len(support) - 1)]


def sample(mu: Distribution, n: int, seed: int) -> EmpiricalTable:
    return EmpiricalTable.from_indices(mu.spec, draw_indices(mu, n, make_rng(seed)))


def empirical_shift_check(mu_X: Distribution, mu_Y: Distribution, n: int, seed: int) -> Fraction:
    """tv(empirical law of X_i + Y_i, mu_X) with X, Y drawn on separate sub-streams."""
    if mu_X.spec != mu_Y.spec:
        raise ValidationError(f"group mismatch: {mu_X.spec} vs {mu_Y.spec}")
    spec = mu_X.spec
    xs = draw_indices(mu_X, n, make_rng(seed, STREAM_X))
    ys = draw_indices(mu_Y, n, make_rng(seed, STREAM_Y))
    res = spec.residue_array
    sums = (res[xs] + res[ys]) % np.asarray(spec.cyclic_orders, dtype=np.int64)
    table = EmpiricalTable.from_indices(spec, spec.indices_of(sums))
    return tv_distance(table.to_distribution(), mu_X)
