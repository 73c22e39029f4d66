"""Finite abelian groups as products of cyclic groups, their characters,
explicit subgroups, and rational points of the circle.

Elements and characters are canonically indexed in mixed radix with the
first cyclic factor most significant, so index order is lexicographic order
on residue tuples. Character values are kept as exact phases in [0, 1);
the value itself is exp(2*pi*i*phase).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce, total_ordering
from itertools import product
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import SpecMismatchError, ValidationError

DEFAULT_MAX_ORDER = 10_000

# Phase of (x, gamma) as an exact fraction mod 1; phase 0 <=> value 1.
RationalPhase = Fraction

# rows * cols budget for one chunk of a vectorized phase matrix
_CHUNK_CELLS = 1 << 21


@dataclass(frozen=True)
class GroupSpec:
    """Z_{n_1} x ... x Z_{n_k}."""

    cyclic_orders: tuple[int, ...]
    max_order: int = field(default=DEFAULT_MAX_ORDER, compare=False, repr=False)

    def __post_init__(self):
        orders = tuple(self.cyclic_orders)
        if len(orders) == 0:
            raise ValidationError("cyclic_orders must be nonempty")
        for n in orders:
            if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
                raise ValidationError(f"cyclic order {n!r} is not an integer >= 1")
        orders = tuple(int(n) for n in orders)
        object.__setattr__(self, "cyclic_orders", orders)
        total = math.prod(orders)
        if total > self.max_order:
            raise ValidationError(f"group order {total} exceeds the cap {self.max_order}")

    @property
    def rank(self) -> int:
        return len(self.cyclic_orders)

    @cached_property
    def order(self) -> int:
        return math.prod(self.cyclic_orders)

    @cached_property
    def exponent(self) -> int:
        """lcm of the cyclic orders; every phase has this as a denominator."""
        return reduce(math.lcm, self.cyclic_orders, 1)

    @cached_property
    def strides(self) -> tuple[int, ...]:
        out = []
        s = 1
        for n in reversed(self.cyclic_orders):
            out.append(s)
            s *= n
        return tuple(reversed(out))

    @cached_property
    def residue_array(self) -> np.ndarray:
        """(order, rank) array of residues in canonical order."""
        grids = np.indices(self.cyclic_orders).reshape(self.rank, -1)
        return np.ascontiguousarray(grids.T.astype(np.int64))

    def index_of(self, residues: Sequence[int]) -> int:
        return sum(x * s for x, s in zip(residues, self.strides))

    def residues_of(self, index: int) -> tuple[int, ...]:
        out = []
        for n, s in zip(self.cyclic_orders, self.strides):
            out.append((index // s) % n)
        return tuple(out)

    def indices_of(self, residue_rows: np.ndarray) -> np.ndarray:
        return residue_rows @ np.asarray(self.strides, dtype=np.int64)

    def add_index(self, i: int, j: int) -> int:
        a = self.residues_of(i)
        b = self.residues_of(j)
        return self.index_of([(x + y) % n for x, y, n in zip(a, b, self.cyclic_orders)])

    def translation(self, a_index: int) -> np.ndarray:
        """perm[x] = index of x + a, for every x in canonical order."""
        moved = (self.residue_array + self.residue_array[a_index]) % np.asarray(
            self.cyclic_orders, dtype=np.int64
        )
        return self.indices_of(moved)

    def neg_index(self, i: int) -> int:
        return self.index_of([(-x) % n for x, n in zip(self.residues_of(i), self.cyclic_orders)])

    def element(self, residues: Iterable[int]) -> GroupElement:
        """Element with the given residues, reduced mod each n_j."""
        residues = tuple(int(x) for x in residues)
        if len(residues) != self.rank:
            raise ValidationError(f"expected {self.rank} residues, got {len(residues)}")
        return GroupElement(self, tuple(x % n for x, n in zip(residues, self.cyclic_orders)))

    def element_at(self, index: int) -> GroupElement:
        return GroupElement(self, self.residues_of(index))

    def zero(self) -> GroupElement:
        return GroupElement(self, (0,) * self.rank)

    def elements(self) -> list[GroupElement]:
        return [GroupElement(self, r) for r in product(*(range(n) for n in self.cyclic_orders))]

    def character(self, indices: Iterable[int]) -> Character:
        indices = tuple(int(m) for m in indices)
        if len(indices) != self.rank:
            raise ValidationError(f"expected {self.rank} character indices, got {len(indices)}")
        return Character(self, tuple(m % n for m, n in zip(indices, self.cyclic_orders)))

    def character_at(self, index: int) -> Character:
        return Character(self, self.residues_of(index))

    def trivial_character(self) -> Character:
        return Character(self, (0,) * self.rank)

    def characters(self) -> list[Character]:
        return [Character(self, m) for m in product(*(range(n) for n in self.cyclic_orders))]

    def __str__(self):
        return " x ".join(f"Z_{n}" for n in self.cyclic_orders)


def _check_bound(spec: GroupSpec, values: tuple[int, ...], what: str):
    if len(values) != spec.rank:
        raise ValidationError(f"{what} {values} has wrong length for {spec}")
    for x, n in zip(values, spec.cyclic_orders):
        if not 0 <= x < n:
            raise ValidationError(f"{what} {values} is not canonical for {spec}")


def _same_spec(a: GroupSpec, b: GroupSpec):
    if a != b:
        raise SpecMismatchError(f"group mismatch: {a} vs {b}")


@total_ordering
@dataclass(frozen=True)
class GroupElement:
    spec: GroupSpec
    residues: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "residues", tuple(int(x) for x in self.residues))
        _check_bound(self.spec, self.residues, "residues")

    @property
    def index(self) -> int:
        return self.spec.index_of(self.residues)

    def __add__(self, other: GroupElement) -> GroupElement:
        return add(self, other)

    def __neg__(self) -> GroupElement:
        return GroupElement(
            self.spec, tuple((-x) % n for x, n in zip(self.residues, self.spec.cyclic_orders))
        )

    def __sub__(self, other: GroupElement) -> GroupElement:
        return add(self, -other)

    def __mul__(self, k: int) -> GroupElement:
        return GroupElement(
            self.spec, tuple((k * x) % n for x, n in zip(self.residues, self.spec.cyclic_orders))
        )

    __rmul__ = __mul__

    def __lt__(self, other: GroupElement) -> bool:
        _same_spec(self.spec, other.spec)
        return self.residues < other.residues

    def is_zero(self) -> bool:
        return not any(self.residues)

    def to_list(self) -> list[int]:
        return list(self.residues)

    def __repr__(self):
        return f"GroupElement({list(self.residues)})"


@total_ordering
@dataclass(frozen=True)
class Character:
    """Character x -> exp(2*pi*i * sum_j m_j x_j / n_j) indexed by (m_1..m_k)."""

    spec: GroupSpec
    indices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(int(m) for m in self.indices))
        _check_bound(self.spec, self.indices, "character indices")

    @property
    def index(self) -> int:
        return self.spec.index_of(self.indices)

    def is_trivial(self) -> bool:
        return not any(self.indices)

    def phase(self, x: GroupElement) -> RationalPhase:
        return pairing_phase(x, self)

    def value(self, x: GroupElement) -> complex:
        return phase_value(pairing_phase(x, self))

    def __mul__(self, other: Character) -> Character:
        # pointwise product of characters adds their indices
        _same_spec(self.spec, other.spec)
        return Character(
            self.spec,
            tuple((a + b) % n for a, b, n in zip(self.indices, other.indices, self.spec.cyclic_orders)),
        )

    def inverse(self) -> Character:
        return Character(
            self.spec, tuple((-m) % n for m, n in zip(self.indices, self.spec.cyclic_orders))
        )

    def order(self) -> int:
        """Order in the dual group."""
        return reduce(
            math.lcm, (n // math.gcd(m, n) for m, n in zip(self.indices, self.spec.cyclic_orders)), 1
        )

    def __lt__(self, other: Character) -> bool:
        _same_spec(self.spec, other.spec)
        return self.indices < other.indices

    def __repr__(self):
        return f"Character({list(self.indices)})"


def phase_value(phase: RationalPhase) -> complex:
    return complex(np.exp(2j * np.pi * float(phase)))


def add(a: GroupElement, b: GroupElement) -> GroupElement:
    _same_spec(a.spec, b.spec)
    return GroupElement(
        a.spec, tuple((x + y) % n for x, y, n in zip(a.residues, b.residues, a.spec.cyclic_orders))
    )


def pairing_phase(x: GroupElement, c: Character) -> RationalPhase:
    """Exact phase of (x, c): sum_j m_j x_j / n_j mod 1."""
    _same_spec(x.spec, c.spec)
    spec = x.spec
    L = spec.exponent
    num = sum(m * r * (L // n) for m, r, n in zip(c.indices, x.residues, spec.cyclic_orders))
    return Fraction(num % L, L)


def phase_numerators(spec: GroupSpec, char_rows: np.ndarray, elem_rows: np.ndarray) -> np.ndarray:
    """Matrix of phase numerators mod spec.exponent.

    Entry (i, j) is the phase of (elem_rows[j], char_rows[i]) times the
    exponent, as an integer. Rows are residue / index tuples.
    """
    L = spec.exponent
    scale = np.asarray([L // n for n in spec.cyclic_orders], dtype=np.int64)
    scaled = (np.asarray(elem_rows, dtype=np.int64) * scale) % L
    chars = np.asarray(char_rows, dtype=np.int64)
    if spec.rank * max(spec.cyclic_orders) * L < 2**62:
        return (chars @ scaled.T) % L
    return (chars.astype(object) @ scaled.T.astype(object)) % L


def row_chunks(n_rows: int, n_cols: int) -> Iterator[slice]:
    step = max(1, _CHUNK_CELLS // max(1, n_cols))
    for start in range(0, n_rows, step):
        yield slice(start, min(n_rows, start + step))


def annihilator_indices(spec: GroupSpec, element_indices: Sequence[int]) -> list[int]:
    """Canonical indices of characters with phase 0 on every given element."""
    elems = spec.residue_array[np.asarray(list(element_indices), dtype=np.int64)]
    chars = spec.residue_array
    keep = np.empty(spec.order, dtype=bool)
    for sl in row_chunks(spec.order, len(elems)):
        keep[sl] = (phase_numerators(spec, chars[sl], elems) == 0).all(axis=1)
    return np.flatnonzero(keep).tolist()


def common_kernel_indices(spec: GroupSpec, character_indices: Sequence[int]) -> list[int]:
    """Canonical indices of elements with phase 0 under every given character."""
    alive = np.arange(spec.order, dtype=np.int64)
    chars = spec.residue_array[np.asarray(list(character_indices), dtype=np.int64)]
    for sl in row_chunks(len(chars), spec.order):
        if len(alive) <= 1:
            break
        ph = phase_numerators(spec, chars[sl], spec.residue_array[alive])
        alive = alive[(ph == 0).all(axis=0)]
    return alive.tolist()


@dataclass(frozen=True)
class Subgroup:
    """An explicit, canonically sorted element set."""

    spec: GroupSpec
    elements: tuple[GroupElement, ...]
    generators: tuple[GroupElement, ...] | None = field(default=None, compare=False)

    @classmethod
    def from_elements(cls, spec: GroupSpec, elements: Iterable[GroupElement], generators=None):
        elems = set()
        for e in elements:
            _same_spec(spec, e.spec)
            elems.add(e)
        gens = None if generators is None else tuple(generators)
        return cls(spec, tuple(sorted(elems)), gens)

    @classmethod
    def from_indices(cls, spec: GroupSpec, indices: Iterable[int], generators=None):
        gens = None if generators is None else tuple(generators)
        return cls(spec, tuple(spec.element_at(i) for i in sorted(set(indices))), gens)

    @classmethod
    def whole(cls, spec: GroupSpec) -> Subgroup:
        return cls(spec, tuple(spec.elements()))

    @classmethod
    def trivial(cls, spec: GroupSpec) -> Subgroup:
        return cls(spec, (spec.zero(),))

    @cached_property
    def index_set(self) -> frozenset[int]:
        return frozenset(e.index for e in self.elements)

    def __contains__(self, x: GroupElement) -> bool:
        return x.spec == self.spec and x.index in self.index_set

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def issubset(self, other: Subgroup) -> bool:
        _same_spec(self.spec, other.spec)
        return self.index_set <= other.index_set

    def is_whole(self) -> bool:
        return len(self.elements) == self.spec.order

    def index_in_group(self) -> int:
        return self.spec.order // len(self.elements)

    def is_closed(self) -> bool:
        """Enumerative subgroup check: identity, closure under + and negation."""
        s = self.index_set
        if self.spec.zero().index not in s:
            return False
        for a in self.elements:
            if (-a).index not in s:
                return False
            for b in self.elements:
                if (a + b).index not in s:
                    return False
        return True

    def to_lists(self) -> list[list[int]]:
        return [e.to_list() for e in self.elements]

    def __repr__(self):
        return f"Subgroup({self.spec}, {self.to_lists()})"


def character_kernel(c: Character) -> Subgroup:
    """{y : (y, c) = 1}."""
    return Subgroup.from_indices(c.spec, common_kernel_indices(c.spec, [c.index]))


def generated_subgroup(gens: Sequence[GroupElement]) -> Subgroup:
    """Smallest subgroup containing gens, by breadth-first closure under +."""
    gens = list(gens)
    if not gens:
        raise ValidationError("generated_subgroup needs at least one generator")
    spec = gens[0].spec
    for g in gens:
        _same_spec(spec, g.spec)
    step = sorted({g.index for g in gens})
    start = spec.zero().index
    seen = {start}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for g in step:
            t = spec.add_index(s, g)
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return Subgroup.from_indices(spec, seen, generators=gens)


def subgroup_intersection(s1: Subgroup, s2: Subgroup) -> Subgroup:
    _same_spec(s1.spec, s2.spec)
    return Subgroup.from_indices(s1.spec, s1.index_set & s2.index_set)


def coset_partition(a: Subgroup) -> list[tuple[GroupElement, ...]]:
    """Cosets x + A, ordered by their smallest element."""
    spec = a.spec
    assigned = set()
    cosets = []
    for x in spec.elements():
        if x.index in assigned:
            continue
        coset = tuple(sorted(x + h for h in a.elements))
        assigned.update(e.index for e in coset)
        cosets.append(coset)
    return cosets


@total_ordering
@dataclass(frozen=True)
class CircleRational:
    """A rational point p/q of [0, 1) under addition mod 1."""

    fraction: Fraction

    def __post_init__(self):
        f = self.fraction
        if isinstance(f, float):
            raise ValidationError("circle points must be exact rationals, not floats")
        object.__setattr__(self, "fraction", Fraction(f) % 1)

    @classmethod
    def parse(cls, text: str) -> CircleRational:
        try:
            return cls(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"not a rational: {text!r}") from exc

    @property
    def numerator(self) -> int:
        return self.fraction.numerator

    @property
    def denominator(self) -> int:
        return self.fraction.denominator

    def __add__(self, other: CircleRational) -> CircleRational:
        return circle_add(self, other)

    def __neg__(self) -> CircleRational:
        return CircleRational(-self.fraction)

    def __lt__(self, other: CircleRational) -> bool:
        return self.fraction < other.fraction

    def __str__(self):
        return f"{self.numerator}/{self.denominator}"


def circle_add(a: CircleRational, b: CircleRational) -> CircleRational:
    return CircleRational(a.fraction + b.fraction)
