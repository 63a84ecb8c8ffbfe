"""Complete homogeneous symmetric functions and the Coxeter-fan character.

An :class:`HExpr` is a finite sum ``Σ c_μ(q) h_μ`` with ``c_μ`` an
:class:`LPoly` read as a polynomial in ``q``.  The graded character of the
cohomology of the permutohedral variety X(A_{n-1}) is produced by the
generating-function recursion in :func:`chi_A`, and quotient E-polynomials
come from pairing it against ``h_μ``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .combinatorics import check_partition
from .exactalg import ONE, ZERO, LPoly

HMono = tuple[int, ...]


def _canon(mono: Iterable[int]) -> HMono:
    return tuple(sorted((m for m in mono if m > 0), reverse=True))


class HExpr:
    """Linear combination of h-monomials with polynomial-in-q coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Iterable[int], LPoly] | None = None):
        acc: dict[HMono, LPoly] = {}
        for mono, c in (terms or {}).items():
            key = _canon(mono)
            acc[key] = acc.get(key, ZERO) + c
        self.terms = {k: v for k, v in acc.items() if v}

    @classmethod
    def h(cls, *parts: int) -> "HExpr":
        return cls({tuple(parts): ONE})

    def __add__(self, other: "HExpr") -> "HExpr":
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, ZERO) + v
        return HExpr(t)

    def __mul__(self, other):
        if isinstance(other, int):
            other = LPoly([other])
        if isinstance(other, LPoly):
            return HExpr({k: v * other for k, v in self.terms.items()})
        t: dict[HMono, LPoly] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                key = _canon(k1 + k2)
                t[key] = t.get(key, ZERO) + v1 * v2
        return HExpr(t)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, HExpr) and self.terms == other.terms

    def __repr__(self):
        return f"HExpr({self.render()})"

    def degrees(self) -> set[int]:
        return {sum(k) for k in self.terms}

    def coefficient(self, *parts: int) -> LPoly:
        return self.terms.get(_canon(parts), ZERO)

    def render(self) -> str:
        """Deterministic text, e.g. ``h3 + (h1*h2 + h3)*q + h3*q^2``."""
        if not self.terms:
            return "0"
        top = max(v.degree for v in self.terms.values())
        pieces = []
        for k in range(top + 1):
            monos = sorted(((tuple(sorted(m)), v[k]) for m, v in self.terms.items() if v[k]),
                           key=lambda t: t[0])
            if not monos:
                continue
            inner = _render_sum(monos)
            if k == 0:
                pieces.append(inner)
                continue
            qpow = "q" if k == 1 else f"q^{k}"
            if len(monos) > 1 or inner.startswith("-"):
                pieces.append(f"({inner})*{qpow}")
            else:
                pieces.append(f"{inner}*{qpow}")
        return " + ".join(pieces)


def _render_mono(asc: HMono) -> str:
    out = []
    i = 0
    while i < len(asc):
        j = i
        while j < len(asc) and asc[j] == asc[i]:
            j += 1
        e = j - i
        out.append(f"h{asc[i]}" if e == 1 else f"h{asc[i]}^{e}")
        i = j
    return "*".join(out) if out else "1"


def _render_sum(monos) -> str:
    s = ""
    for idx, (m, c) in enumerate(monos):
        body = _render_mono(m)
        a = abs(c)
        term = body if a == 1 else f"{a}*{body}"
        if idx == 0:
            s = ("-" if c < 0 else "") + term
        else:
            s += (" - " if c < 0 else " + ") + term
    return s


def _q_integer(m: int) -> LPoly:
    """q + q^2 + ... + q^(m-1)."""
    return LPoly([0] + [1] * (m - 1))


@lru_cache(maxsize=None)
def chi_A(n: int) -> HExpr:
    """Graded character of H^*(X(A_{n-1})) in the h-basis.

    Uses ``χ_n = h_n + Σ_{m=2}^{n} (q+…+q^{m-1}) h_m χ_{n-m}`` with
    ``χ_0 = 1``, obtained by clearing the denominator of the generating
    function.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return HExpr({(): ONE})
    out = HExpr.h(n)
    for m in range(2, n + 1):
        out = out + HExpr.h(m) * chi_A(n - m) * _q_integer(m)
    return out


@lru_cache(maxsize=None)
def _hall_hh(mu: HMono, nu: HMono) -> int:
    """Number of N-matrices with row sums ``mu`` and column sums ``nu``."""
    if sum(mu) != sum(nu):
        return 0
    if not mu:
        return 1
    first, rest = mu[0], mu[1:]
    total = 0
    for row in _compositions_bounded(first, nu):
        remaining = _canon(c - x for c, x in zip(nu, row))
        total += _hall_hh(rest, remaining)
    return total


def _compositions_bounded(total: int, caps: Sequence[int]):
    """Vectors x with 0 <= x_i <= caps[i] and Σ x = total."""
    if not caps:
        if total == 0:
            yield ()
        return
    head, tail = caps[0], caps[1:]
    room = sum(tail)
    for x in range(max(0, total - room), min(head, total) + 1):
        for rest in _compositions_bounded(total - x, tail):
            yield (x,) + rest


def hall_hh(mu: Sequence[int], nu: Sequence[int]) -> int:
    """⟨h_μ, h_ν⟩ by counting contingency tables."""
    return _hall_hh(_canon(mu), _canon(nu))


def hall_inner(mu: Sequence[int], x: HExpr) -> LPoly:
    """⟨h_μ, X⟩ with the coefficient variable q read as L."""
    r = sum(mu)
    if x.degrees() - {r}:
        raise ValueError(f"expression is not homogeneous of degree {r}")
    out = ZERO
    for mono, coeff in x.terms.items():
        out = out + coeff.scale(hall_hh(mu, mono))
    return out


@lru_cache(maxsize=None)
def _quotient_E(r: int, mu: tuple[int, ...]) -> LPoly:
    return hall_inner(mu, chi_A(r))


def quotient_E(r: int, mu: Sequence[int]) -> LPoly:
    """E(X(A_{r-1}) / S_μ)."""
    mu = check_partition(sorted(mu, reverse=True))
    if sum(mu) != r:
        raise ValueError(f"{mu} is not a partition of {r}")
    return _quotient_E(r, mu)


def component_E(components: Iterable[tuple[int, Sequence[int]]]) -> LPoly:
    out = ONE
    for r, mu in components:
        out = out * quotient_E(r, mu)
    return out
