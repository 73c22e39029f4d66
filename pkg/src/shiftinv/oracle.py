"""Brute-force oracle for the fixed points of nu -> nu * mu_Y.

Solves nu (P - I) = 0, sum(nu) = 1 with P(x, z) = mu_Y(z - x) by exact
Gaussian elimination over the rationals. Nothing here uses characters,
subgroups or cosets, so it can falsify the analytic route.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ScaleExceeded, TheoremViolation
from .measure import Distribution

ORACLE_MAX_ORDER = 64

Vector = tuple[Fraction, ...]


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[Fraction(v) for v in row] for row in rows]
    if not m:
        return [], []
    n_cols = len(m[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence[Fraction]], n_cols: int) -> list[Vector]:
    """Basis of {v : rows @ v = 0}, one vector per free column."""
    red, pivots = rref(rows)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def solve(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction], n_cols: int) -> Vector | None:
    """One solution of rows @ v = rhs (free variables set to 0), or None."""
    aug = [list(r) + [Fraction(b)] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if n_cols in pivots:
        return None
    v = [Fraction(0)] * n_cols
    for row, p in zip(red, pivots):
        v[p] = row[n_cols]
    return tuple(v)


@dataclass(frozen=True)
class AffineSet:
    """point + span(directions) in canonical form.

    Directions are the nonzero rows of their RREF; the point is reduced so
    it vanishes on the pivot columns. Two affine sets are equal iff their
    canonical forms are equal.
    """

    point: Vector
    directions: tuple[Vector, ...]

    @classmethod
    def canonical(cls, point: Sequence[Fraction], directions: Sequence[Sequence[Fraction]]) -> AffineSet:
        red, pivots = rref(directions)
        pt = [Fraction(v) for v in point]
        for row, p in zip(red, pivots):
            f = pt[p]
            if f:
                pt = [a - f * b for a, b in zip(pt, row)]
        return cls(tuple(pt), tuple(tuple(r) for r in red))

    @classmethod
    def hull(cls, points: Sequence[Sequence[Fraction]]) -> AffineSet:
        """Affine hull of a nonempty finite point set."""
        base = [Fraction(v) for v in points[0]]
        dirs = [[Fraction(a) - b for a, b in zip(p, base)] for p in points[1:]]
        return cls.canonical(base, dirs)

    @property
    def dimension(self) -> int:
        return len(self.directions)

    def __contains__(self, v: Sequence[Fraction]) -> bool:
        return AffineSet.canonical(v, self.directions).point == self.point


@dataclass(frozen=True)
class OracleResult:
    """Fixed points of nu * mu_Y = nu as an exact affine set.

    ``linear_basis`` spans the solutions of nu (P - I) = 0 without the mass
    constraint; ``affine`` adds sum(nu) = 1. The uniform law is a strictly
    positive member, so intersecting with the simplex does not shrink the
    affine hull.
    """

    order: int
    transition: tuple[Vector, ...]
    linear_basis: tuple[Vector, ...]
    affine: AffineSet

    @property
    def linear_dimension(self) -> int:
        return len(self.linear_basis)

    @property
    def affine_dimension(self) -> int:
        return self.affine.dimension

    def contains(self, nu: Sequence[Fraction]) -> bool:
        """nu is a probability vector with nu P = nu."""
        nu = [Fraction(v) for v in nu]
        if any(v < 0 for v in nu) or sum(nu) != 1:
            return False
        n = self.order
        P = self.transition
        return all(sum(nu[x] * P[x][z] for x in range(n)) == nu[z] for z in range(n))


def transition_matrix(mu_Y: Distribution) -> list[list[Fraction]]:
    """P(x, z) = mu_Y(z - x), the one-step kernel of x -> x + Y."""
    spec = mu_Y.spec
    n = spec.order
    P = [[Fraction(0)] * n for _ in range(n)]
    for x in range(n):
        for y, p in mu_Y.weights.items():
            P[x][spec.add_index(x, y)] += p
    return P


def oracle_fixed_points(mu_Y: Distribution, max_order: int = ORACLE_MAX_ORDER) -> OracleResult:
    n = mu_Y.spec.order
    if n > max_order:
        raise ScaleExceeded(f"oracle is limited to order {max_order}, got {n}")
    P = transition_matrix(mu_Y)
    # nu (P - I) = 0  <=>  (P - I)^T nu^T = 0
    system = [[P[x][z] - (1 if x == z else 0) for x in range(n)] for z in range(n)]
    reduced, _ = rref(system)
    linear = nullspace(reduced, n)
    constrained = reduced + [[Fraction(1)] * n]
    point = solve(constrained, [Fraction(0)] * len(reduced) + [Fraction(1)], n)
    if point is None:
        raise TheoremViolation("no probability-mass solution of nu P = nu")
    directions = nullspace(constrained, n)
    affine = AffineSet.canonical(point, directions)
    result = OracleResult(n, tuple(tuple(r) for r in P), tuple(linear), affine)
    uniform = [Fraction(1, n)] * n
    if uniform not in affine or not result.contains(uniform):
        raise TheoremViolation("uniform law is not a fixed point")
    return result
