"""Exact probability distributions on finite abelian groups.

Probabilities are ``Fraction`` values and distribution equality is exact.
Characteristic-function tables are double-precision complex, because
character values are roots of unity; they are for cross-checks only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

import numpy as np

from .errors import SpecMismatchError, ValidationError
from .groups import (
    Character,
    GroupElement,
    GroupSpec,
    row_chunks,
    pairing_phase,
    phase_numerators,
)

_ZERO = Fraction(0)
_INT64_SAFE = 2**62


def as_fraction(value) -> Fraction:
    """Exact conversion; floats are refused so nothing inexact sneaks in."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise ValidationError(f"probability {value!r} is not an exact rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"cannot parse rational {value!r}") from exc
    raise ValidationError(f"unsupported probability value {value!r}")


class Distribution:
    """An exact probability table on the elements of ``spec``.

    ``probs`` may be keyed by ``GroupElement``, residue tuples or canonical
    indices. Zero entries are dropped; negative entries or a total mass other
    than 1 are rejected here, not at use sites.
    """

    __slots__ = ("spec", "_weights")

    def __init__(self, spec: GroupSpec, probs: Mapping):
        weights: dict[int, Fraction] = {}
        for key, value in probs.items():
            idx = _key_index(spec, key)
            p = as_fraction(value)
            if p < 0:
                raise ValidationError(f"negative probability {p} at {list(spec.residues_of(idx))}")
            if idx in weights:
                raise ValidationError(f"duplicate entry for {list(spec.residues_of(idx))}")
            if p:
                weights[idx] = p
        total = sum(weights.values(), _ZERO)
        if total != 1:
            raise ValidationError(f"mass ≠ 1 (total is {total})")
        self.spec = spec
        self._weights = dict(sorted(weights.items()))

    @classmethod
    def _trusted(cls, spec: GroupSpec, weights: dict[int, Fraction]) -> Distribution:
        d = object.__new__(cls)
        d.spec = spec
        d._weights = {i: p for i, p in sorted(weights.items()) if p}
        return d

    @classmethod
    def from_vector(cls, spec: GroupSpec, values: Iterable) -> Distribution:
        values = list(values)
        if len(values) != spec.order:
            raise ValidationError(f"expected {spec.order} probabilities, got {len(values)}")
        return cls(spec, dict(enumerate(values)))

    @classmethod
    def uniform_on(cls, spec: GroupSpec, elements: Iterable[GroupElement]) -> Distribution:
        idx = sorted({_key_index(spec, e) for e in elements})
        if not idx:
            raise ValidationError("uniform_on needs at least one element")
        p = Fraction(1, len(idx))
        return cls._trusted(spec, {i: p for i in idx})

    @property
    def weights(self) -> dict[int, Fraction]:
        """Nonzero probabilities keyed by canonical index (read-only view by convention)."""
        return self._weights

    @property
    def probs(self) -> dict[GroupElement, Fraction]:
        return {self.spec.element_at(i): p for i, p in self._weights.items()}

    def __getitem__(self, x) -> Fraction:
        return self._weights.get(_key_index(self.spec, x), _ZERO)

    def support(self) -> list[GroupElement]:
        return [self.spec.element_at(i) for i in self._weights]

    def support_indices(self) -> list[int]:
        return list(self._weights)

    def vector(self) -> list[Fraction]:
        return [self._weights.get(i, _ZERO) for i in range(self.spec.order)]

    def as_floats(self) -> np.ndarray:
        out = np.zeros(self.spec.order)
        for i, p in self._weights.items():
            out[i] = float(p)
        return out

    def __eq__(self, other):
        if not isinstance(other, Distribution):
            return NotImplemented
        return self.spec == other.spec and self._weights == other._weights

    def __hash__(self):
        return hash((self.spec, tuple(self._weights.items())))

    def __repr__(self):
        body = ", ".join(f"{list(self.spec.residues_of(i))}: {p}" for i, p in self._weights.items())
        return f"Distribution({self.spec}, {{{body}}})"


def _key_index(spec: GroupSpec, key) -> int:
    if isinstance(key, GroupElement):
        if key.spec != spec:
            raise SpecMismatchError(f"element {key} is not in {spec}")
        return key.index
    if isinstance(key, (int, np.integer)) and not isinstance(key, bool):
        if not 0 <= key < spec.order:
            raise ValidationError(f"index {key} out of range for {spec}")
        return int(key)
    if isinstance(key, (tuple, list)):
        if len(key) != spec.rank:
            raise ValidationError(f"element {list(key)} has wrong length for {spec}")
        for x, n in zip(key, spec.cyclic_orders):
            if not 0 <= x < n:
                raise ValidationError(f"element {list(key)} out of range for {spec}")
        return spec.index_of(key)
    raise ValidationError(f"cannot interpret {key!r} as an element of {spec}")


def _same(mu_spec: GroupSpec, nu_spec: GroupSpec):
    if mu_spec != nu_spec:
        raise SpecMismatchError(f"group mismatch: {mu_spec} vs {nu_spec}")


def dirac(spec: GroupSpec, a: GroupElement) -> Distribution:
    return Distribution._trusted(spec, {_key_index(spec, a): Fraction(1)})


def uniform(spec: GroupSpec) -> Distribution:
    p = Fraction(1, spec.order)
    return Distribution._trusted(spec, {i: p for i in range(spec.order)})


def integer_form(mu: Distribution) -> tuple[int, np.ndarray]:
    """(D, a) with mu(x) = a[x] / D exactly; a is int64 when D allows, else Python ints."""
    D = math.lcm(*(p.denominator for p in mu.weights.values()))
    dtype = np.int64 if D < _INT64_SAFE else object
    a = np.zeros(mu.spec.order, dtype=dtype)
    for i, p in mu.weights.items():
        a[i] = p.numerator * (D // p.denominator)
    return D, a


def from_integer_form(spec: GroupSpec, D: int, a: np.ndarray) -> Distribution:
    return Distribution._trusted(spec, {int(i): Fraction(int(a[i]), D) for i in np.flatnonzero(a)})


def convolve(mu: Distribution, nu: Distribution) -> Distribution:
    """(mu * nu)(z) = sum_x mu(x) nu(z - x): the law of X + Y.

    Computed exactly on integer numerators: for each y in supp(nu) the
    numerator table of mu is translated by y and accumulated with weight
    nu(y).
    """
    _same(mu.spec, nu.spec)
    spec = mu.spec
    if len(mu.weights) < len(nu.weights):
        mu, nu = nu, mu
    D1, a = integer_form(mu)
    D2, b = integer_form(nu)
    # every accumulated entry is at most D1 * D2
    dtype = np.int64 if D1 * D2 < _INT64_SAFE else object
    a = a.astype(dtype)
    out = np.zeros(spec.order, dtype=dtype)
    for j in nu.weights:
        out[spec.translation(j)] += a * int(b[j])
    return from_integer_form(spec, D1 * D2, out)


def convolution_power(mu: Distribution, n: int) -> Distribution:
    """n-fold convolution by repeated exact convolution; n = 0 gives the point mass at 0."""
    if n < 0:
        raise ValidationError("convolution power must be nonnegative")
    out = dirac(mu.spec, mu.spec.zero())
    for _ in range(n):
        out = convolve(out, mu)
    return out


def shift(mu: Distribution, a: GroupElement) -> Distribution:
    """Law of X + a."""
    _same(mu.spec, a.spec)
    spec = mu.spec
    ai = a.index
    return Distribution._trusted(spec, {spec.add_index(i, ai): p for i, p in mu.weights.items()})


@dataclass(frozen=True, eq=False)
class CharTable:
    """mu-hat over all characters, indexed canonically like elements."""

    spec: GroupSpec
    values: np.ndarray

    def __getitem__(self, c: Character) -> complex:
        _same(self.spec, c.spec)
        return complex(self.values[c.index])


@dataclass(frozen=True, eq=False)
class FloatTable:
    """A float-valued table on the group (e.g. the result of Fourier inversion)."""

    spec: GroupSpec
    values: np.ndarray
    imag_residual: float = 0.0


def _roots(L: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(L) / L)


def char_table(mu: Distribution) -> CharTable:
    """mu-hat(gamma) = sum_x mu(x) exp(2*pi*i*phase(x, gamma)).

    Phases are reduced exactly to integers mod the group exponent before
    exponentiation.
    """
    spec = mu.spec
    roots = _roots(spec.exponent)
    idx = np.asarray(mu.support_indices(), dtype=np.int64)
    w = mu.as_floats()[idx]
    elems = spec.residue_array[idx]
    chars = spec.residue_array
    values = np.empty(spec.order, dtype=complex)
    for sl in row_chunks(spec.order, len(idx)):
        ph = phase_numerators(spec, chars[sl], elems).astype(np.int64)
        values[sl] = roots[ph] @ w
    return CharTable(spec, values)


def char_hat_one_exact(mu: Distribution, c: Character) -> bool:
    """Exact test of mu-hat(c) == 1: every support point has phase 0 under c."""
    _same(mu.spec, c.spec)
    return all(pairing_phase(x, c) == 0 for x in mu.support())


def inverse_fourier(t: CharTable) -> FloatTable:
    """mu(x) = (1/|G|) sum_gamma t(gamma) * conj((x, gamma))."""
    spec = t.spec
    roots = np.conj(_roots(spec.exponent))
    rows = spec.residue_array
    out = np.empty(spec.order, dtype=complex)
    for sl in row_chunks(spec.order, spec.order):
        ph = phase_numerators(spec, rows, rows[sl]).astype(np.int64)
        out[sl] = (t.values @ roots[ph]) / spec.order
    return FloatTable(spec, out.real.copy(), float(np.max(np.abs(out.imag), initial=0.0)))


Table = Union[Distribution, FloatTable]


def tv_distance(mu: Table, nu: Table):
    """(1/2) sum_x |mu(x) - nu(x)|; exact Fraction when both inputs are exact."""
    _same(mu.spec, nu.spec)
    if isinstance(mu, Distribution) and isinstance(nu, Distribution):
        keys = set(mu.weights) | set(nu.weights)
        return sum((abs(mu.weights.get(k, _ZERO) - nu.weights.get(k, _ZERO)) for k in keys), _ZERO) / 2
    a = mu.as_floats() if isinstance(mu, Distribution) else mu.values
    b = nu.as_floats() if isinstance(nu, Distribution) else nu.values
    return float(0.5 * np.abs(a - b).sum())
