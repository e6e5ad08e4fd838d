"""Equivariant divisors and the equivariant Picard group of a regular embedding.

The group is presented with generators D_tau (one per ray) and the
coordinates of X*(T~), modulo the relations (-sum_tau <tau, b> D_tau, b) for
b running over a basis of X*(T).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import floor
from typing import Mapping, Sequence

from .exactla import SmithForm, smith_normal_form
from .fans import Fan
from .rootdata import RootDatum


class PicardError(ValueError):
    pass


@dataclass(frozen=True)
class EquivariantDivisor:
    coefficients: tuple[int, ...]

    @classmethod
    def from_mapping(cls, fan: Fan, coeffs: Mapping) -> "EquivariantDivisor":
        out = [0] * len(fan.rays)
        for k, v in coeffs.items():
            i = int(k)
            if not 0 <= i < len(fan.rays):
                raise PicardError(f"unknown ray index {i}")
            out[i] = int(v)
        return cls(tuple(out))

    def __add__(self, other: "EquivariantDivisor") -> "EquivariantDivisor":
        return EquivariantDivisor(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))


@dataclass(frozen=True)
class PicElement:
    """A class in the Picard group, remembered with one representative (divisor, weight)."""

    group: "PicGroup"
    divisor: tuple[int, ...]
    weight: tuple[int, ...]

    @cached_property
    def coordinates(self) -> tuple[int, ...]:
        return self.group.coordinates(self.divisor, self.weight)

    def __eq__(self, other) -> bool:
        return isinstance(other, PicElement) and self.coordinates == other.coordinates

    def __hash__(self) -> int:
        return hash(self.coordinates)

    def __add__(self, other: "PicElement") -> "PicElement":
        return PicElement(
            self.group,
            tuple(a + b for a, b in zip(self.divisor, other.divisor)),
            tuple(a + b for a, b in zip(self.weight, other.weight)),
        )


@dataclass(frozen=True, eq=False)
class PicGroup:
    fan: Fan
    snf: SmithForm
    ngens: int

    @property
    def datum(self) -> RootDatum:
        return self.fan.datum

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.snf.diag[: self.snf.rank] if d > 1)

    @property
    def free_rank(self) -> int:
        return self.ngens - self.snf.rank

    def coordinates(self, divisor: Sequence[int], weight: Sequence[int]) -> tuple[int, ...]:
        x = list(divisor) + list(weight)
        if len(x) != self.ngens:
            raise PicardError("divisor or weight has the wrong length")
        v = self.snf.V
        y = [sum(x[k] * v[k][j] for k in range(self.ngens)) for j in range(self.ngens)]
        out = []
        for j in range(self.ngens):
            if j < self.snf.rank:
                d = self.snf.diag[j]
                if d > 1:
                    out.append(y[j] % d)
            else:
                out.append(y[j])
        return tuple(out)

    def element(self, divisor: Sequence[int] | EquivariantDivisor = (), weight: Sequence[int] = ()) -> PicElement:
        if isinstance(divisor, EquivariantDivisor):
            divisor = divisor.coefficients
        divisor = tuple(divisor) or (0,) * len(self.fan.rays)
        weight = tuple(weight) or (0,) * self.datum.rank
        return PicElement(self, tuple(int(x) for x in divisor), tuple(int(x) for x in weight))

    def boundary_class(self, i: int) -> PicElement:
        d = [0] * len(self.fan.rays)
        d[i] = 1
        return self.element(d)

    def lift(self, weight: Sequence[int]) -> PicElement:
        return self.element((), weight)

    def cokernel_order(self) -> int:
        """Order of Pic modulo the subgroup generated by the boundary divisors (0 if infinite)."""
        rows = [list(r) for r in _relations(self.fan)]
        for i in range(len(self.fan.rays)):
            rows.append([int(i == j) for j in range(self.ngens)])
        snf = smith_normal_form(rows, self.ngens)
        if snf.rank < self.ngens:
            return 0
        out = 1
        for d in snf.diag[: snf.rank]:
            out *= d
        return out

    def to_json(self) -> dict:
        return {
            "torsion": list(self.torsion),
            "free_rank": self.free_rank,
            "boundary_classes": [list(self.boundary_class(i).coordinates) for i in range(len(self.fan.rays))],
            "cokernel_order": self.cokernel_order(),
            "central_character_group": list(self.datum.central_character_group),
        }


def _relations(fan: Fan) -> list[list[int]]:
    d = fan.datum
    rows = []
    for b in d.weight_lattice_basis:
        coeffs = []
        for tau in fan.ray_coweights:
            p = d.pairing(tau, b)
            if p.denominator != 1:
                raise PicardError("ray pairs non-integrally with X*(T)")
            coeffs.append(-int(p))
        rows.append(coeffs + list(b))
    return rows


def pic_group(fan: Fan) -> PicGroup:
    ngens = len(fan.rays) + fan.datum.rank
    rel = _relations(fan)
    return PicGroup(fan, smith_normal_form(rel, ngens), ngens)


def divisor_of_weight(fan: Fan, weight: Sequence[int]) -> tuple[tuple[Fraction, ...], bool]:
    """Coefficients <tau, lambda> of D^lambda, and whether they are all integers."""
    coeffs = tuple(Fraction(fan.datum.pairing(tau, weight)) for tau in fan.ray_coweights)
    return coeffs, all(c.denominator == 1 for c in coeffs)


def integral_divisor_of_weight(fan: Fan, weight: Sequence[int]) -> EquivariantDivisor:
    coeffs, ok = divisor_of_weight(fan, weight)
    if not ok:
        raise PicardError("weight does not pair integrally with every ray")
    return EquivariantDivisor(tuple(int(c) for c in coeffs))


def floor_divisor(fan: Fan, weight: Sequence[int]) -> tuple[int, ...]:
    coeffs, _ = divisor_of_weight(fan, weight)
    return tuple(floor(c) for c in coeffs)


def kappa(p: PicElement) -> tuple[int, ...]:
    """Image in the central character group: the class of the weight part."""
    return p.group.datum.central_character(p.weight)


def boundary_weight(fan: Fan, d: EquivariantDivisor | Mapping, i: int) -> int:
    """Weight by which the one-parameter subgroup of ray i acts on the fiber of O(D) at x_tau."""
    if not 0 <= i < len(fan.rays):
        raise PicardError(f"unknown ray index {i}")
    if not isinstance(d, EquivariantDivisor):
        d = EquivariantDivisor.from_mapping(fan, d)
    return -d.coefficients[i]


def representative_lifts(datum: RootDatum, bound: int = 6) -> dict[tuple[int, ...], tuple[int, ...]]:
    """Lexicographically least dominant lift of each central character, searched in a box."""
    group = datum.central_character_group
    if any(g == 0 for g in group):
        raise PicardError("central character group is infinite")
    size = 1
    for g in group:
        size *= g
    n = datum.ss_rank
    t = datum.cartan_type.torus_rank
    found: dict[tuple[int, ...], tuple[int, ...]] = {}
    for w in itertools.product(range(bound + 1), repeat=n):
        full = tuple(w) + (0,) * t
        found.setdefault(datum.central_character(full), full)
        if len(found) == size:
            break
    if len(found) != size:
        raise PicardError("search box too small for a complete set of representatives")
    return found
