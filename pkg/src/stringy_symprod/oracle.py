"""Orbit-stratum oracle for E-polynomials of toric varieties and their quotients.

A smooth toric variety is a disjoint union of tori ``O(σ)``, so its
E-polynomial is a face count.  For a lattice automorphism ``g`` preserving
the fan, the trace of ``g`` on compactly supported cohomology collects one
term ``det(L·I - g|M(σ))`` per ``g``-stable cone; averaging over a finite
group gives the E-polynomial of the quotient.  None of this touches the
symmetric-function machinery, which makes it a useful cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .combinatorics import Permutation, check_partition, partitions_of, young_partition
from .exactalg import (
    IntMatrix,
    L,
    LPoly,
    QPoly,
    adapted_basis,
    as_matrix,
    char_poly_in_L,
    identity,
    int_inverse,
    matmul,
    rank,
    transpose,
)
from .symfun import quotient_E
from .toric import Fan, coxeter_fan, coxeter_matrix


class _FanStrata:
    """Per-cone bases adapted to ``M(σ) = σ^⊥ ∩ M``, computed once per fan."""

    def __init__(self, fan: Fan):
        self.fan = fan
        self.cones = fan.all_cones()
        d = fan.ambient_rank
        self.bases = {}
        for c in self.cones:
            rays = [fan.rays[i] for i in c]
            # dual basis of a basis of N whose leading part spans σ gives a
            # basis of M whose trailing part spans σ^⊥
            b0, k = adapted_basis(rays, d) if rays else (identity(d), 0)
            dual = transpose(int_inverse(b0)) if d else ()
            self.bases[c] = (k, dual, int_inverse(dual) if d else ())

    def dual_action_on_perp(self, c, g_dual: IntMatrix) -> IntMatrix:
        k, b, binv = self.bases[c]
        d = self.fan.ambient_rank
        conj = matmul(matmul(binv, g_dual), b)
        if any(conj[i][j] for i in range(k) for j in range(k, d)):
            raise ValueError("action does not preserve the orthogonal lattice")
        return tuple(row[k:] for row in conj[k:])


_STRATA: dict[int, _FanStrata] = {}


def _strata(fan: Fan) -> _FanStrata:
    key = id(fan)
    hit = _STRATA.get(key)
    if hit is None or hit.fan is not fan:
        hit = _STRATA[key] = _FanStrata(fan)
    return hit


def toric_E(fan: Fan) -> LPoly:
    """``Σ_σ (L-1)^(rank - dim σ)`` over every cone of the fan."""
    out = LPoly()
    t = L - 1
    for c in fan.all_cones():
        dim = rank(as_matrix([fan.rays[i] for i in c])) if c else 0
        out = out + t ** (fan.ambient_rank - dim)
    return out


def equivariant_E(fan: Fan, g: IntMatrix) -> LPoly:
    """Trace of ``g`` on compactly supported cohomology, stratum by stratum.

    ``g`` acts on ``N`` (columns); the dual action on characters is
    ``(g^{-1})^T``.  Raises ``ValueError`` if ``g`` does not preserve the fan.
    """
    perm = fan.permute_rays(g) if fan.rays else {}
    if perm is None:
        raise ValueError("matrix does not preserve the ray set")
    cones = set(fan.maximal_cones)
    if any(frozenset(perm[i] for i in mc) not in cones for mc in fan.maximal_cones):
        raise ValueError("matrix does not permute the maximal cones")
    strata = _strata(fan)
    g_dual = transpose(int_inverse(g)) if fan.ambient_rank else ()
    out = LPoly()
    for c in strata.cones:
        if frozenset(perm[i] for i in c) != c:
            continue
        out = out + char_poly_in_L(strata.dual_action_on_perp(c, g_dual))
    return out


@dataclass(frozen=True)
class GroupOnFan:
    fan: Fan
    elements: tuple[IntMatrix, ...]
    labels: tuple[Permutation, ...] = field(default=())

    def __len__(self):
        return len(self.elements)

    def check(self) -> None:
        for g in self.elements:
            if self.fan.rays and self.fan.permute_rays(g) is None:
                raise ValueError("element does not preserve the ray set")


def trivial_fan() -> Fan:
    """The fan of a point: rank 0, only the zero cone."""
    return Fan(0, (), (frozenset(),))


def young_group_on_coxeter(r: int, mu: Sequence[int]) -> GroupOnFan:
    """``S_μ`` (consecutive blocks) acting on the Coxeter fan of ``A_{r-1}``."""
    mu = check_partition(sorted(mu, reverse=True))
    if sum(mu) != r:
        raise ValueError(f"{mu} is not a partition of {r}")
    if r == 1:
        return GroupOnFan(trivial_fan(), ((),), ((1,),))
    cox = coxeter_fan(r)
    labels = tuple(sorted(young_partition(mu).young_subgroup()))
    return GroupOnFan(cox.fan, tuple(coxeter_matrix(p) for p in labels), labels)


def _combinatorially_stable(r: int, p: Permutation, blocks) -> bool:
    return all({p[x - 1] for x in b} == set(b) for b in blocks)


def burnside_quotient_E(group: GroupOnFan) -> LPoly:
    """``(1/|G|) Σ_g equivariant_E(fan, g)``; raises if the average is not integral."""
    acc = QPoly()
    for g in group.elements:
        acc = acc + equivariant_E(group.fan, g)
    avg = acc / len(group.elements)
    if not avg.is_integral():
        raise ArithmeticError(f"Burnside average is not integral: {avg!r}")
    return avg.to_lpoly()


def stable_face_mismatches(r: int, p: Permutation) -> int:
    """Faces where the block test and the geometric ray test disagree (should be 0)."""
    cox = coxeter_fan(r)
    perm = cox.fan.permute_rays(coxeter_matrix(p))
    bad = 0
    for blocks, rays in zip(cox.faces, cox.face_rays):
        geo = frozenset(perm[i] for i in rays) == rays
        bad += geo != _combinatorially_stable(r, p, blocks)
    return bad


@dataclass(frozen=True)
class CrosscheckRow:
    r: int
    mu: tuple[int, ...]
    formula: LPoly
    oracle: LPoly

    @property
    def match(self) -> bool:
        return self.formula == self.oracle

    def to_json(self) -> dict:
        return {"r": self.r, "mu": list(self.mu), "formula": self.formula.to_list(),
                "oracle": self.oracle.to_list(), "match": self.match}


def crosscheck_quotients(r_max: int) -> list[CrosscheckRow]:
    if not 1 <= r_max <= 6:
        raise ValueError("r_max must be between 1 and 6")
    rows = []
    for r in range(1, r_max + 1):
        for mu in partitions_of(r):
            rows.append(CrosscheckRow(r, mu, quotient_E(r, mu),
                                      burnside_quotient_E(young_group_on_coxeter(r, mu))))
    return rows
