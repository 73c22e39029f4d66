"""Empirical tv(X + Y, X) for a fixed pair as the sample count grows.

mu_X is constant on the cosets of a random subgroup H and mu_Y is supported
in H, so the exact answer is 0 and the empirical distance should shrink
roughly like n^(-1/2).

    python scripts/monte_carlo_trend.py --orders 6 4 --seed 3
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from shiftinv import Distribution, GroupSpec, is_fixed_point
from shiftinv.generators import random_coset_law, random_subgroup
from shiftinv.sampling import empirical_shift_check


@dataclass
class TrendConfig:
    orders: tuple[int, ...] = (6, 4)
    seed: int = 20261018
    counts: tuple[int, ...] = field(default_factory=lambda: tuple(10**k for k in range(2, 7)))


def build_pair(cfg: TrendConfig):
    rng = np.random.default_rng(cfg.seed)
    spec = GroupSpec(cfg.orders)
    sub = random_subgroup(rng, spec)
    mu_X = random_coset_law(rng, sub)
    # mu_Y lives on sub, so X + Y ~ X holds exactly
    inside = [e.index for e in sub]
    w = rng.integers(1, 6, size=len(inside))
    mu_Y = Distribution(spec, {i: Fraction(int(x), int(w.sum())) for i, x in zip(inside, w)})
    assert is_fixed_point(mu_X, mu_Y)
    return spec, sub, mu_X, mu_Y


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--orders", type=int, nargs="+", default=list(TrendConfig.orders))
    ap.add_argument("--seed", type=int, default=TrendConfig.seed)
    args = ap.parse_args(argv)
    cfg = TrendConfig(tuple(args.orders), args.seed)
    spec, sub, mu_X, mu_Y = build_pair(cfg)
    print(f"group {spec.cyclic_orders}, |H| = {len(sub)}, |supp X| = {len(mu_X.weights)}, |supp Y| = {len(mu_Y.weights)}")
    print(f"{'n':>9} {'tv':>10} {'tv*sqrt(n)':>11}")
    for n in cfg.counts:
        tv = float(empirical_shift_check(mu_X, mu_Y, n, cfg.seed))
        print(f"{n:>9} {tv:>10.5f} {tv * math.sqrt(n):>11.3f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
