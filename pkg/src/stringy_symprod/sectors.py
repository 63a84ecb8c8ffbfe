"""Twisted sectors of the orbifold E-function of Z^(n).

A sector is indexed by a cycle type λ ≠ (1^n), a standard angle type θ,
and an orbit representative p of the coset decomposition P(θ).  Its
contribution is ``E(component / Young group) * L**(φ + r + age)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Callable, Sequence

from .combinatorics import (
    AngleType,
    Partition,
    Permutation,
    component_partition_types,
    partitions_of,
    reduced_representatives,
    standard_angle_types,
    star_partition,
)
from .exactalg import LPoly
from .symfun import component_E


def _frac(t: Fraction) -> Fraction:
    return t - floor(t)


def phi(theta: Sequence[Fraction], p: Permutation) -> int:
    """Zeros among the two slots θ_{p(1)}, θ_{p(r)}; for r = 1 both read θ_1."""
    if len(theta) != len(p):
        raise ValueError("angle type and permutation of different length")
    return (theta[p[0] - 1] == 0) + (theta[p[-1] - 1] == 0)


def age(lam: Sequence[int], theta: Sequence[Fraction], p: Permutation) -> int:
    """Age of s_λ along the fixed component labelled (θ, p̄).

    Raises ``ArithmeticError`` if the value is not an integer.
    """
    n, r = sum(lam), len(lam)
    if len(theta) != r or len(p) != r:
        raise ValueError("length mismatch between λ, θ and p")
    t = [theta[i - 1] for i in p]
    val = Fraction(n - r)
    # the eigenvalue on the chart coordinate y_{p(j)}/y_{p(j+1)} is
    # α_{p(j)}/α_{p(j+1)}; the reversed difference is not integral for order > 2
    for a, b in zip(t, t[1:]):
        val += _frac(a - b)
    val += _frac(1 - t[0]) + t[-1]
    if val.denominator != 1:
        raise ArithmeticError(f"non-integral age {val} for λ={lam}, θ={theta}, p={p}")
    return int(val)


@dataclass(frozen=True)
class Sector:
    lam: Partition
    theta: AngleType
    rep: Permutation
    m: tuple[int, ...]
    components: tuple[tuple[int, Partition], ...]
    phi: int
    age: int
    e_factor: LPoly

    @property
    def r(self) -> int:
        return len(self.lam)

    @property
    def exponent(self) -> int:
        return self.phi + self.r + self.age

    def polynomial(self) -> LPoly:
        return self.e_factor.shift(self.exponent)

    def to_json(self) -> dict:
        return {
            "lambda": list(self.lam),
            "theta": [str(t) for t in self.theta],
            "rep": list(self.rep),
            "m": list(self.m),
            "mu_list": [list(mu) for _, mu in self.components],
            "phi": self.phi,
            "age": self.age,
            "e_factor": self.e_factor.to_list(),
            "exponent": self.exponent,
        }


def make_sector(lam: Sequence[int], theta: AngleType, p: Permutation) -> Sector:
    comps = tuple(component_partition_types(lam, theta, p))
    return Sector(
        lam=tuple(lam),
        theta=tuple(theta),
        rep=tuple(p),
        m=star_partition(theta, p).sizes,
        components=comps,
        phi=phi(theta, p),
        age=age(lam, theta, p),
        e_factor=component_E(comps),
    )


def sector_polynomial(s: Sector) -> LPoly:
    return s.polynomial()


def sectors_for(lam: Sequence[int], choose: Callable | None = None) -> list[Sector]:
    """All sectors of one cycle type, θ in lex order then representative order."""
    out = []
    for theta in standard_angle_types(lam):
        classes = (reduced_representatives(lam, theta) if choose is None
                   else reduced_representatives(lam, theta, choose=choose))
        for cls in classes:
            out.append(make_sector(lam, theta, cls.representative))
    return out


def twisted_partitions(n: int) -> list[Partition]:
    return [lam for lam in partitions_of(n) if lam != (1,) * n]


def enumerate_sectors(n: int, choose: Callable | None = None) -> list[Sector]:
    if n < 2:
        raise ValueError("n must be at least 2")
    return [s for lam in twisted_partitions(n) for s in sectors_for(lam, choose)]
