"""Partitions, permutations, set partitions and angle types.

Conventions used throughout the package:

* a partition is a weakly decreasing tuple of positive ints;
* a permutation of ``{1..r}`` is its one-line tuple ``(p(1), ..., p(r))``;
  composition ``compose(q, p)`` is ``q∘p``, i.e. ``i -> q(p(i))``;
* an angle type is a tuple of ``Fraction`` values in ``[0, 1)``;
* a :class:`SetPartition` keeps its blocks sorted by smallest element.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import factorial
from typing import Hashable, Iterator, Sequence

Partition = tuple[int, ...]
Permutation = tuple[int, ...]
AngleType = tuple[Fraction, ...]


# ---------------------------------------------------------------------------
# integer partitions


def partitions_of(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse-lexicographic order."""
    if n < 1:
        raise ValueError("n must be positive")
    out: list[Partition] = []

    def rec(remaining: int, largest: int, prefix: list[int]):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(remaining, largest), 0, -1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    rec(n, n, [])
    return out


def check_partition(lam: Sequence[int]) -> Partition:
    lam = tuple(lam)
    if not lam or any(p < 1 for p in lam) or any(a < b for a, b in zip(lam, lam[1:])):
        raise ValueError(f"not a partition: {lam}")
    return lam


def partial_sums(lam: Sequence[int]) -> list[int]:
    """``[l_0, l_1, ..., l_r]`` with ``l_0 = 0``."""
    out = [0]
    for p in lam:
        out.append(out[-1] + p)
    return out


# ---------------------------------------------------------------------------
# permutations


def identity_perm(r: int) -> Permutation:
    return tuple(range(1, r + 1))


def compose(q: Permutation, p: Permutation) -> Permutation:
    """``q∘p`` as a one-line tuple."""
    return tuple(q[i - 1] for i in p)


def inverse_perm(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for i, v in enumerate(p, start=1):
        inv[v - 1] = i
    return tuple(inv)


def check_perm(p: Sequence[int]) -> Permutation:
    p = tuple(p)
    if sorted(p) != list(range(1, len(p) + 1)):
        raise ValueError(f"not a permutation: {p}")
    return p


def cycle_perm(n: int, cycle: Sequence[int]) -> Permutation:
    """The permutation of ``{1..n}`` given by one cycle ``(a b c ...)``."""
    p = list(range(1, n + 1))
    for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
        p[a - 1] = b
    return tuple(p)


def cycle_type(p: Permutation) -> Partition:
    seen = set()
    lengths = []
    for start in range(1, len(p) + 1):
        if start in seen:
            continue
        k, i = 0, start
        while i not in seen:
            seen.add(i)
            i = p[i - 1]
            k += 1
        lengths.append(k)
    return tuple(sorted(lengths, reverse=True))


def adjacent_word(p: Permutation) -> list[int]:
    """Indices ``k`` with ``p = t_{k_m} ∘ ... ∘ t_{k_1}``, ``t_k = (k k+1)``.

    The returned list is ``[k_1, ..., k_m]`` (a reduced word, applied from
    the right first).
    """
    w = list(p)
    word = []
    while True:
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                w[i], w[i + 1] = w[i + 1], w[i]
                word.append(i + 1)
                break
        else:
            return word


def standard_element(lam: Sequence[int]) -> Permutation:
    """``s_λ = (1 … l_1)(l_1+1 … l_2)…`` in one-line form."""
    lam = check_partition(lam)
    ls = partial_sums(lam)
    s = [0] * ls[-1]
    for j in range(len(lam)):
        lo, hi = ls[j] + 1, ls[j + 1]
        for i in range(lo, hi):
            s[i - 1] = i + 1
        s[hi - 1] = lo
    return tuple(s)


# ---------------------------------------------------------------------------
# set partitions and Young subgroups


@dataclass(frozen=True)
class SetPartition:
    """Blocks of ``{1..r}``, each sorted, ordered by smallest element."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0]))
        object.__setattr__(self, "blocks", blocks)
        flat = [x for b in blocks for x in b]
        if sorted(flat) != list(range(1, len(flat) + 1)) or any(not b for b in blocks):
            raise ValueError(f"not a set partition of 1..r: {blocks}")

    @property
    def r(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def block_of(self) -> dict[int, int]:
        return {x: k for k, b in enumerate(self.blocks) for x in b}

    def contains(self, q: Permutation) -> bool:
        """Is ``q`` in the Young subgroup of this set partition?"""
        where = self.block_of()
        return all(where[i] == where[q[i - 1]] for i in range(1, len(q) + 1))

    def young_subgroup(self) -> Iterator[Permutation]:
        """Enumerate the Young subgroup as one-line permutations."""
        r = self.r
        for images in product(*(permutations(b) for b in self.blocks)):
            p = [0] * r
            for b, img in zip(self.blocks, images):
                for x, y in zip(b, img):
                    p[x - 1] = y
            yield tuple(p)

    def order(self) -> int:
        out = 1
        for b in self.blocks:
            out *= factorial(len(b))
        return out

    def is_refinement_of(self, other: "SetPartition") -> bool:
        where = other.block_of()
        return all(len({where[x] for x in b}) == 1 for b in self.blocks)


def multiplicity_partition(phi: Sequence[Hashable]) -> SetPartition:
    """Level sets of ``j -> phi[j-1]``."""
    if not phi:
        raise ValueError("empty map")
    levels: dict = {}
    for j, v in enumerate(phi, start=1):
        levels.setdefault(v, []).append(j)
    return SetPartition(tuple(tuple(b) for b in levels.values()))


def young_intersection(a: SetPartition, b: SetPartition) -> SetPartition:
    """Common refinement; its Young subgroup is the intersection."""
    if a.r != b.r:
        raise ValueError("set partitions of different ground sets")
    wa, wb = a.block_of(), b.block_of()
    return multiplicity_partition([(wa[i], wb[i]) for i in range(1, a.r + 1)])


def young_partition(mu: Sequence[int]) -> SetPartition:
    """Consecutive blocks of sizes ``mu`` (the standard Young subgroup S_mu)."""
    ls = partial_sums(mu)
    return SetPartition(tuple(tuple(range(ls[j] + 1, ls[j + 1] + 1)) for j in range(len(mu))))


# ---------------------------------------------------------------------------
# adjacency, angle types, cosets


def adjacency(phi: Sequence[Hashable]) -> tuple[int, ...]:
    if not phi:
        raise ValueError("empty map")
    out = [1]
    for prev, cur in zip(phi, phi[1:]):
        out.append(out[-1] if cur == prev else out[-1] + 1)
    return tuple(out)


def theta_star(theta: Sequence, p: Permutation) -> tuple[int, ...]:
    """``θ⋆p = adj(θ∘p)∘p^{-1}`` as a tuple indexed by ``1..r``."""
    if len(theta) != len(p):
        raise ValueError("angle type and permutation of different length")
    adj = adjacency([theta[i - 1] for i in p])
    pinv = inverse_perm(p)
    return tuple(adj[pinv[i] - 1] for i in range(len(p)))


def star_partition(theta: Sequence, p: Permutation) -> SetPartition:
    return multiplicity_partition(theta_star(theta, p))


def angle_types(lam: Sequence[int]) -> list[AngleType]:
    """All of Θ_λ, lexicographic in the numerators."""
    lam = check_partition(lam)
    return [tuple(Fraction(a, l) for a, l in zip(nums, lam))
            for nums in product(*(range(l) for l in lam))]


def is_standard(lam: Sequence[int], theta: AngleType) -> bool:
    blocks = multiplicity_partition(lam).blocks
    return all(theta[b[i] - 1] <= theta[b[i + 1] - 1] for b in blocks for i in range(len(b) - 1))


def standard_angle_types(lam: Sequence[int]) -> list[AngleType]:
    return [t for t in angle_types(lam) if is_standard(lam, t)]


def standardize(lam: Sequence[int], theta: AngleType) -> AngleType:
    """The standard angle type in the S_{M(λ)}-orbit of ``theta``."""
    out = list(theta)
    for b in multiplicity_partition(lam).blocks:
        vals = sorted(theta[i - 1] for i in b)
        for i, v in zip(b, vals):
            out[i - 1] = v
    return tuple(out)


@dataclass(frozen=True)
class CosetClass:
    """A right coset ``S_{M(θ⋆p)} p`` inside ``S_r``."""

    members: frozenset
    representative: Permutation
    stabilizer_partition: SetPartition

    def __len__(self):
        return len(self.members)


def _coset_of(theta: Sequence, p: Permutation) -> CosetClass:
    part = star_partition(theta, p)
    members = frozenset(compose(q, p) for q in part.young_subgroup())
    return CosetClass(members, min(members), part)


def coset_partition(theta: Sequence) -> list[CosetClass]:
    """P(θ), one class per coset, sorted by representative."""
    r = len(theta)
    seen: dict[Permutation, CosetClass] = {}
    for p in permutations(range(1, r + 1)):
        if p in seen:
            continue
        cls = _coset_of(theta, p)
        for q in cls.members:
            seen[q] = cls
    return sorted(set(seen.values()), key=lambda c: c.representative)


def reduced_representatives(lam: Sequence[int], theta: AngleType,
                            choose=min) -> list[CosetClass]:
    """Orbit representatives of P(θ) under left multiplication by S_{M(λ)} ∩ S_{M(θ)}.

    ``choose`` picks the representative permutation from the union of the
    orbit's members; the default takes the lexicographically least one.
    Passing e.g. ``random.Random(seed).choice`` over a sorted list gives
    arbitrary representatives for independence checks.
    """
    lam = check_partition(lam)
    if len(theta) != len(lam):
        raise ValueError("angle type length differs from partition length")
    group = young_intersection(multiplicity_partition(lam), multiplicity_partition(theta))
    qs = list(group.young_subgroup())
    classes = coset_partition(theta)
    where = {p: c for c in classes for p in c.members}
    done = set()
    out = []
    for c in classes:
        if c in done:
            continue
        orbit = {where[compose(q, c.representative)] for q in qs}
        done |= orbit
        pool = sorted(p for o in orbit for p in o.members)
        rep = choose(pool)
        cls = where[rep]
        out.append((pool[0], CosetClass(cls.members, rep, cls.stabilizer_partition)))
    return [c for _, c in sorted(out, key=lambda t: t[0])]


def component_partition_types(lam: Sequence[int], theta: Sequence,
                              p: Permutation) -> list[tuple[int, Partition]]:
    """``(r_j, μ_j)`` for each block of M(θ⋆p)."""
    star = star_partition(theta, p)
    inter = young_intersection(multiplicity_partition(lam), star)
    out = []
    for block in star.blocks:
        bset = set(block)
        mu = sorted((len(b) for b in inter.blocks if b[0] in bset), reverse=True)
        out.append((len(block), tuple(mu)))
    return out
