"""Solution structure of X + Y ~ X for independent X, Y on a finite abelian group.

The central objects are the character set

    Lambda = {gamma : mu_Y-hat(gamma) = 1}

(decided exactly: mu_Y-hat(gamma) = 1 iff gamma is trivial on supp(mu_Y)),
and the subgroup A cut out by the kernels of Lambda. A law mu_X solves
mu_X * mu_Y = mu_X exactly when mu_X is invariant under every shift in A,
i.e. when it is constant on the cosets of A.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Mapping, Sequence

import numpy as np

from .errors import PreconditionFailed, SpecMismatchError, TheoremViolation, ValidationError
from .groups import (
    Character,
    CircleRational,
    GroupElement,
    GroupSpec,
    Subgroup,
    annihilator_indices,
    common_kernel_indices,
    coset_partition,
)
from .measure import Distribution, as_fraction, convolution_power, convolve, integer_form

_ZERO = Fraction(0)


@dataclass(frozen=True)
class LambdaSet:
    spec: GroupSpec
    characters: tuple[Character, ...]

    @classmethod
    def from_indices(cls, spec: GroupSpec, indices: Sequence[int]) -> LambdaSet:
        return cls(spec, tuple(spec.character_at(i) for i in sorted(indices)))

    def __contains__(self, c: Character) -> bool:
        return c.spec == self.spec and c.index in self.index_set

    def __len__(self):
        return len(self.characters)

    def __iter__(self):
        return iter(self.characters)

    @property
    def index_set(self) -> frozenset[int]:
        return frozenset(c.index for c in self.characters)

    def is_closed(self) -> bool:
        """Contains e, closed under products and inverses in the dual group."""
        s = self.index_set
        if self.spec.trivial_character().index not in s:
            return False
        for a in self.characters:
            if a.inverse().index not in s:
                return False
            for b in self.characters:
                if (a * b).index not in s:
                    return False
        return True

    def to_lists(self) -> list[list[int]]:
        return [list(c.indices) for c in self.characters]


def annihilator(subgroup: Subgroup) -> LambdaSet:
    """Characters equal to 1 on every element of ``subgroup``."""
    return LambdaSet.from_indices(
        subgroup.spec, annihilator_indices(subgroup.spec, [e.index for e in subgroup])
    )


def lambda_set(mu_Y: Distribution) -> LambdaSet:
    """Characters whose kernel contains supp(mu_Y)."""
    return LambdaSet.from_indices(mu_Y.spec, annihilator_indices(mu_Y.spec, mu_Y.support_indices()))


def invariance_subgroup(mu_Y: Distribution) -> Subgroup:
    """A = intersection of ker(gamma) over gamma in Lambda."""
    lam = lambda_set(mu_Y)
    return Subgroup.from_indices(mu_Y.spec, common_kernel_indices(mu_Y.spec, sorted(lam.index_set)))


def stabilizer(mu_X: Distribution) -> Subgroup:
    """{a : law of X + a equals law of X}.

    Any such a carries the smallest support point x0 to a point of equal
    mass, so only those differences are tested. Probabilities are compared
    through exact value classes.
    """
    spec = mu_X.spec
    labels = np.zeros(spec.order, dtype=np.int64)
    classes: dict[Fraction, int] = {}
    for i, p in mu_X.weights.items():
        labels[i] = classes.setdefault(p, len(classes) + 1)
    support = mu_X.support_indices()
    x0 = support[0]
    neg0 = spec.neg_index(x0)
    candidates = {spec.add_index(s, neg0) for s in support if labels[s] == labels[x0]}
    keep = [a for a in candidates if np.array_equal(labels[spec.translation(a)], labels)]
    return Subgroup.from_indices(spec, keep)


def is_fixed_point(mu_X: Distribution, mu_Y: Distribution) -> bool:
    if mu_X.spec != mu_Y.spec:
        raise SpecMismatchError(f"group mismatch: {mu_X.spec} vs {mu_Y.spec}")
    return convolve(mu_X, mu_Y) == mu_X


def _support_subgroup_check(mu_Y: Distribution, sub: Subgroup) -> bool:
    return all(i in sub.index_set for i in mu_Y.support_indices())


@dataclass(frozen=True)
class InvarianceAnalysis:
    lambda_set: LambdaSet
    a_subgroup: Subgroup
    stabilizer: Subgroup
    is_fixed_point: bool
    haar_forced: bool
    fixed_point_dimension: int


def verify_forward(mu_X: Distribution, mu_Y: Distribution) -> InvarianceAnalysis:
    """For a fixed point, produce A with supp(mu_Y) in A and A inside stab(mu_X)."""
    if not is_fixed_point(mu_X, mu_Y):
        raise PreconditionFailed("mu_X * mu_Y != mu_X")
    lam = lambda_set(mu_Y)
    a = Subgroup.from_indices(mu_Y.spec, common_kernel_indices(mu_Y.spec, sorted(lam.index_set)))
    stab = stabilizer(mu_X)
    if not _support_subgroup_check(mu_Y, a):
        raise TheoremViolation(f"supp(mu_Y) not contained in A = {a.to_lists()}")
    if not a.issubset(stab):
        raise TheoremViolation(f"A = {a.to_lists()} not contained in stabilizer {stab.to_lists()}")
    return InvarianceAnalysis(
        lambda_set=lam,
        a_subgroup=a,
        stabilizer=stab,
        is_fixed_point=True,
        haar_forced=a.is_whole(),
        fixed_point_dimension=a.index_in_group(),
    )


def verify_converse(mu_X: Distribution, mu_Y: Distribution) -> bool:
    """supp(mu_Y) inside stab(mu_X) must imply mu_X * mu_Y = mu_X."""
    if not _support_subgroup_check(mu_Y, stabilizer(mu_X)):
        raise PreconditionFailed("supp(mu_Y) is not contained in the stabilizer of mu_X")
    if not is_fixed_point(mu_X, mu_Y):
        raise TheoremViolation("support inside the stabilizer but mu_X * mu_Y != mu_X")
    return True


@dataclass(frozen=True)
class FixedPointSpace:
    """All solutions nu of nu * mu_Y = nu: laws constant on the cosets of A."""

    subgroup: Subgroup
    cosets: tuple[tuple[GroupElement, ...], ...]

    @property
    def spec(self) -> GroupSpec:
        return self.subgroup.spec

    @property
    def dimension(self) -> int:
        return len(self.cosets)

    def lift(self, weights: Sequence | Mapping) -> Distribution:
        """Spread weight w(C) evenly over each coset C.

        ``weights`` is a sequence aligned with ``cosets`` or a mapping from
        coset position to weight; it must be a probability vector.
        """
        if isinstance(weights, Mapping):
            items = {int(k): as_fraction(v) for k, v in weights.items()}
        else:
            weights = list(weights)
            if len(weights) != len(self.cosets):
                raise ValidationError(f"expected {len(self.cosets)} coset weights, got {len(weights)}")
            items = {k: as_fraction(v) for k, v in enumerate(weights)}
        size = len(self.subgroup)
        probs = {}
        for k, w in items.items():
            if not 0 <= k < len(self.cosets):
                raise ValidationError(f"no coset with position {k}")
            for x in self.cosets[k]:
                probs[x] = w / size
        return Distribution(self.spec, probs)

    def basis(self) -> list[Distribution]:
        """Uniform law on each coset; the fixed points are their convex hull."""
        return [Distribution.uniform_on(self.spec, c) for c in self.cosets]

    def contains(self, mu: Distribution) -> bool:
        if mu.spec != self.spec:
            return False
        for coset in self.cosets:
            first = mu[coset[0]]
            if any(mu[x] != first for x in coset[1:]):
                return False
        return True

    def representatives(self) -> list[GroupElement]:
        return [c[0] for c in self.cosets]


def fixed_point_space(mu_Y: Distribution) -> FixedPointSpace:
    a = invariance_subgroup(mu_Y)
    return FixedPointSpace(a, tuple(coset_partition(a)))


def haar_forced(mu_Y: Distribution) -> bool:
    """True when the only solution of nu * mu_Y = nu is the uniform law."""
    return invariance_subgroup(mu_Y).is_whole()


def independence_check(mu_X: Distribution, mu_Y: Distribution) -> bool:
    """Exact check that X + Y and Y are independent when X + Y ~ X.

    Joint law J(b, e) = mu_X(b - e) mu_Y(e) is compared with
    mu_{X+Y}(b) mu_Y(e) on every pair (b, e).
    """
    if not is_fixed_point(mu_X, mu_Y):
        raise PreconditionFailed("mu_X * mu_Y != mu_X")
    spec = mu_X.spec
    Ds, law_sum = integer_form(convolve(mu_X, mu_Y))
    Dx, ax = integer_form(mu_X)
    # J(b, e) = ax[b - e] y_e / (Dx Dy) and S(b) Y(e) = law_sum[b] y_e / (Ds Dy)
    ax = ax.astype(object) * Ds
    law_sum = law_sum.astype(object) * Dx
    for e in range(spec.order):
        pe = mu_Y.weights.get(e, _ZERO)
        if not pe:
            # both sides carry the factor mu_Y(e) = 0
            continue
        y = pe.numerator
        joint = np.empty(spec.order, dtype=object)
        joint[spec.translation(e)] = ax * y  # joint[x + e] = ax[x] y
        if not np.array_equal(joint, law_sum * y):
            raise TheoremViolation(f"joint law does not factor at e={list(spec.residues_of(e))}")
    return True


def power_invariance(mu_X: Distribution, mu_Y: Distribution, n: int) -> bool:
    """mu_X * mu_Y^{*n} = mu_X, computed exactly."""
    if n < 0:
        raise ValidationError("n must be nonnegative")
    if not is_fixed_point(mu_X, mu_Y):
        raise PreconditionFailed("mu_X * mu_Y != mu_X")
    if convolve(mu_X, convolution_power(mu_Y, n)) != mu_X:
        raise TheoremViolation(f"mu_X * mu_Y^(*{n}) != mu_X")
    return True


FINITE_CYCLIC = "finite_cyclic"
HAAR_FORCED = "haar_forced"


@dataclass(frozen=True)
class CircleClassification:
    kind: str
    N: int | None = None
    subgroup_points: tuple[CircleRational, ...] = ()


def minimal_common_denominator_scan(denominators: Sequence[int], limit: int) -> int | None:
    """First n in 1..limit with every denominator dividing n, by direct scan."""
    ns = np.arange(1, limit + 1, dtype=np.int64)
    ok = np.ones(limit, dtype=bool)
    for q in set(denominators):
        ok &= ns % q == 0
    hits = np.flatnonzero(ok)
    return int(ns[hits[0]]) if len(hits) else None


def circle_classify(support: Sequence[CircleRational], has_nonrational_mass: bool = False) -> CircleClassification:
    """Classify the subgroup of [0, 1) forced by Y for X + Y ~ X mod 1.

    With irrational mass or infinitely many rational atoms (declared by the
    caller) X must be uniform. Otherwise A = {k/N} with N the lcm of the
    reduced denominators of the support.
    """
    if has_nonrational_mass:
        return CircleClassification(HAAR_FORCED)
    points = [p if isinstance(p, CircleRational) else CircleRational(as_fraction(p)) for p in support]
    if not points:
        raise ValidationError("empty circle support without nonrational mass")
    dens = [p.denominator for p in points]
    N = reduce(math.lcm, dens, 1)
    if minimal_common_denominator_scan(dens, N) != N:
        raise TheoremViolation(f"lcm {N} of denominators is not the minimal common period")
    return CircleClassification(
        FINITE_CYCLIC, N, tuple(CircleRational(Fraction(k, N)) for k in range(N))
    )


def embed_circle_support(support: Sequence[CircleRational], N: int) -> Distribution:
    """Uniform law on the support, viewed inside Z_N via p/q -> p*(N/q)."""
    spec = GroupSpec((N,), max_order=max(N, 1))
    residues = set()
    for p in support:
        if N % p.denominator:
            raise ValidationError(f"{p} is not a multiple of 1/{N}")
        residues.add(p.numerator * (N // p.denominator))
    return Distribution.uniform_on(spec, [spec.element([r]) for r in residues])
