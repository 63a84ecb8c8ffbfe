"""Stringy E-polynomial of Z^(n): untwisted sector plus all twisted sectors."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .exactalg import ONE, ZERO, L, LPoly
from .sectors import Sector, sectors_for, twisted_partitions

MAX_N = 8


@dataclass(frozen=True)
class StringyResult:
    n: int
    untwisted: LPoly
    sectors: tuple[Sector, ...]
    total: LPoly

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "untwisted": self.untwisted.to_list(),
            "total": self.total.to_list(),
            "text": self.total.render(),
        }


def untwisted(n: int) -> LPoly:
    """E(Z^(n)) = L^(n+2) (1+L)^(n-1)."""
    if n < 1:
        raise ValueError("n must be positive")
    return (ONE + L) ** (n - 1) * L ** (n + 2)


def stringy_E(n: int, parallel: bool = False) -> StringyResult:
    if n < 2:
        raise ValueError("n must be at least 2")
    lams = twisted_partitions(n)
    if parallel and len(lams) > 1:
        with ProcessPoolExecutor() as pool:
            groups = list(pool.map(sectors_for, lams))
    else:
        groups = [sectors_for(lam) for lam in lams]
    sectors = tuple(s for g in groups for s in g)
    base = untwisted(n)
    total = base
    for s in sectors:
        total = total + s.polynomial()
    return StringyResult(n, base, sectors, total)


def case_subtotals(result: StringyResult) -> dict[tuple, LPoly]:
    """Twisted contribution per (λ, θ), in enumeration order."""
    out: dict[tuple, LPoly] = {}
    for s in result.sectors:
        key = (s.lam, s.theta)
        out[key] = out.get(key, ZERO) + s.polynomial()
    return out


def generating_table(n_max: int) -> list[tuple[int, LPoly]]:
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    return [(n, stringy_E(n).total) for n in range(2, n_max + 1)]
