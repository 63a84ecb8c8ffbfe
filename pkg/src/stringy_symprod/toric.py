"""Rational polyhedral cones and fans over Z, and the specific fans of Z^(n).

Cones are stored by their primitive extreme rays.  Facets and extreme rays
are computed exactly with a double-description (Motzkin) iteration, so no
LP solver or floating point is involved.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import permutations
from math import factorial, gcd
from typing import Iterable, Sequence

from .combinatorics import Permutation, adjacent_word
from .exactalg import (
    IntMatrix,
    adapted_basis,
    as_matrix,
    block_diag,
    columns,
    hermite_normal_form,
    from_columns,
    identity,
    int_inverse,
    inverse,
    kernel_basis,
    matmul,
    matvec,
    primitive,
    rank,
    restricted_lattice_action,
    transpose,
)

Vector = tuple[int, ...]


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# double description


def _independent_rows(rows: Sequence[Vector], d: int) -> list[int]:
    chosen: list[int] = []
    basis: list[Vector] = []
    for i, row in enumerate(rows):
        if not any(row):
            continue
        if rank(as_matrix(basis + [row])) > len(basis):
            basis.append(row)
            chosen.append(i)
            if len(basis) == d:
                break
    return chosen


def extreme_rays(ineqs: Sequence[Sequence[int]], d: int) -> list[Vector]:
    """Extreme rays of the pointed cone ``{y in R^d : a·y >= 0 for a in ineqs}``.

    Raises ``ValueError`` if the inequalities do not have rank ``d`` (the
    cone would contain a line).
    """
    rows = [tuple(int(x) for x in a) for a in ineqs]
    if d == 0:
        return []
    start = _independent_rows(rows, d)
    if len(start) < d:
        raise ValueError("cone is not pointed")
    b0 = as_matrix([rows[i] for i in start])
    inv = inverse(b0)
    rays: list[Vector] = []
    for j in range(d):
        col = [inv[i][j] for i in range(d)]
        den = 1
        for x in col:
            den = den * x.denominator // gcd(den, x.denominator)
        rays.append(primitive([int(x * den) for x in col]))
    processed = list(start)
    zero_sets = [frozenset(start[k] for k in range(d) if k != j) for j in range(d)]
    start_set = set(start)
    for i, a in enumerate(rows):
        if i in start_set or not any(a):
            continue
        vals = [_dot(a, r) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        zer = [k for k, v in enumerate(vals) if v == 0]
        if not neg:
            processed.append(i)
            zero_sets = [z | {i} if vals[k] == 0 else z for k, z in enumerate(zero_sets)]
            continue
        new_rays = [rays[k] for k in pos] + [rays[k] for k in zer]
        new_zero = [zero_sets[k] for k in pos] + [zero_sets[k] | {i} for k in zer]
        for kp in pos:
            for kn in neg:
                common = zero_sets[kp] & zero_sets[kn]
                if len(common) < d - 2:
                    continue
                if any(k not in (kp, kn) and common <= zero_sets[k] for k in range(len(rays))):
                    continue
                vp, vn = vals[kp], vals[kn]
                new = tuple(vp * x - vn * y for x, y in zip(rays[kn], rays[kp]))
                new_rays.append(primitive(new))
                new_zero.append(common | {i})
        rays, zero_sets = new_rays, new_zero
        processed.append(i)
    return rays


def lattice_index(vectors: Sequence[Sequence[int]], m: int) -> int:
    """Index of the lattice spanned by ``vectors`` inside its saturation."""
    vecs = as_matrix(vectors)
    if not vecs:
        return 1
    b, k = adapted_basis(vecs, m)
    binv = int_inverse(b)
    coords = [matvec(binv, v)[:k] for v in vecs]
    h, _ = _hnf_rows(coords)
    out = 1
    for i in range(k):
        out *= h[i][i] if h[i][i] else 1
    return abs(out)


def _hnf_rows(rows):
    return hermite_normal_form(as_matrix(rows))


# ---------------------------------------------------------------------------
# cones


class Cone:
    """Strictly convex rational polyhedral cone.

    ``rays`` are the primitive extreme rays, sorted lexicographically.
    ``equations`` (rows) cut out the linear span, ``normals`` are facet
    inequalities valid on the span.
    """

    def __init__(self, generators: Iterable[Sequence[int]], ambient_rank: int | None = None):
        gens = []
        for g in generators:
            g = tuple(int(x) for x in g)
            if any(g):
                gens.append(primitive(g))
        if ambient_rank is None:
            if not gens:
                raise ValueError("ambient rank needed for the zero cone")
            ambient_rank = len(gens[0])
        self.ambient_rank = ambient_rank
        gens = sorted(set(gens))
        self.equations: IntMatrix = kernel_basis(as_matrix(gens), ambient_rank) if gens else identity(ambient_rank)
        self.dim = ambient_rank - len(self.equations)
        if self.dim == 0:
            self.rays: tuple[Vector, ...] = ()
            self.normals: tuple[Vector, ...] = ()
            return
        # coordinates on which the projection of the span is injective
        h, _ = _hnf_rows(gens)
        pivots = []
        for row in h:
            nz = next((j for j, x in enumerate(row) if x), None)
            if nz is not None:
                pivots.append(nz)
        proj = [tuple(g[j] for j in pivots) for g in gens]
        normals_k = extreme_rays(proj, self.dim)
        if rank(as_matrix(normals_k)) < self.dim:
            raise ValueError("cone is not strictly convex")
        normals = []
        for w in normals_k:
            full = [0] * ambient_rank
            for j, x in zip(pivots, w):
                full[j] = x
            normals.append(tuple(full))
        self.normals = tuple(sorted(set(normals)))
        rays = []
        for g in gens:
            tight = [w for w in self.normals if _dot(w, g) == 0]
            if self.dim == 1 or (tight and rank(as_matrix(tight)) == self.dim - 1):
                rays.append(g)
        self.rays = tuple(sorted(rays))

    @classmethod
    def from_columns(cls, m: IntMatrix) -> "Cone":
        return cls(columns(m), len(m))

    def __repr__(self):
        return f"Cone(rays={list(self.rays)}, ambient_rank={self.ambient_rank})"

    def __eq__(self, other):
        return (isinstance(other, Cone) and self.ambient_rank == other.ambient_rank
                and self.rays == other.rays)

    def __hash__(self):
        return hash((self.ambient_rank, self.rays))

    def generator_matrix(self) -> IntMatrix:
        return from_columns(self.rays) if self.rays else tuple(() for _ in range(self.ambient_rank))

    def contains(self, v: Sequence[int]) -> bool:
        return (all(_dot(e, v) == 0 for e in self.equations)
                and all(_dot(w, v) >= 0 for w in self.normals))

    def facets(self) -> list[tuple[Vector, frozenset[int]]]:
        """``(normal, indices of rays on the facet)`` pairs."""
        return [(w, frozenset(i for i, r in enumerate(self.rays) if _dot(w, r) == 0))
                for w in self.normals]

    def faces(self) -> set[frozenset[int]]:
        """All faces as sets of ray indices (including the empty face)."""
        if self.is_simplicial():
            idx = range(len(self.rays))
            out = {frozenset()}
            for i in idx:
                out |= {f | {i} for f in out}
            return out
        facet_sets = [s for _, s in self.facets()]
        top = frozenset(range(len(self.rays)))
        seen = {top}
        stack = [top]
        while stack:
            f = stack.pop()
            for s in facet_sets:
                g = f & s
                if g not in seen:
                    seen.add(g)
                    stack.append(g)
        return seen

    def is_simplicial(self) -> bool:
        return len(self.rays) == self.dim

    def is_unimodular(self) -> bool:
        return self.is_simplicial() and lattice_index(self.rays, self.ambient_rank) == 1

    def h_representation(self) -> tuple[list[Vector], list[Vector]]:
        return list(self.normals), [tuple(e) for e in self.equations]


def cone_from_inequalities(ineqs: Sequence[Sequence[int]], eqs: Sequence[Sequence[int]],
                           d: int) -> Cone:
    """The pointed cone ``{x : a·x >= 0 (ineqs), e·x = 0 (eqs)}`` in Z^d."""
    k = kernel_basis(as_matrix(eqs), d) if eqs else identity(d)
    if not k:
        return Cone([], d)
    kdim = len(k)
    reduced = [tuple(_dot(a, row) for row in k) for a in ineqs]
    ys = extreme_rays(reduced, kdim)
    kt = transpose(k)
    return Cone([matvec(kt, y) for y in ys], d)


def apply_matrix(a: IntMatrix, cone: Cone) -> Cone:
    return Cone([matvec(a, r) for r in cone.rays], len(a))


def is_surjective(h: IntMatrix, m: int) -> bool:
    cols = columns(h) if h and h[0] else []
    if m == 0:
        return True
    if rank(as_matrix(cols)) < m if cols else True:
        return False
    return lattice_index(cols, m) == 1


def fiber_product_cones(s1: Cone, h1: IntMatrix, s2: Cone, h2: IntMatrix) -> Cone:
    """The cone ``s1 ×_{N̄} s2`` in ``N1 ⊕ N2``.

    ``h1``, ``h2`` are surjective lattice maps to a common ``N̄`` (possibly of
    rank 0, given as matrices with no rows) with equal cone images.
    """
    d1, d2 = s1.ambient_rank, s2.ambient_rank
    m = len(h1)
    if len(h2) != m:
        raise ValueError("target lattices differ")
    if m:
        if not (is_surjective(h1, m) and is_surjective(h2, m)):
            raise ValueError("lattice maps must be surjective")
        img1 = Cone([matvec(h1, r) for r in s1.rays], m)
        img2 = Cone([matvec(h2, r) for r in s2.rays], m)
        if img1 != img2:
            raise ValueError("images of the cones differ")
    ineqs = [tuple(w) + (0,) * d2 for w in s1.normals] + [(0,) * d1 + tuple(w) for w in s2.normals]
    eqs = [tuple(e) + (0,) * d2 for e in s1.equations] + [(0,) * d1 + tuple(e) for e in s2.equations]
    for i in range(m):
        eqs.append(tuple(h1[i]) + tuple(-x for x in h2[i]))
    return cone_from_inequalities(ineqs, eqs, d1 + d2)


# ---------------------------------------------------------------------------
# fans


@dataclass(frozen=True)
class Fan:
    ambient_rank: int
    rays: tuple[Vector, ...]
    maximal_cones: tuple[frozenset[int], ...]
    face_lists: tuple[frozenset[int], ...] | None = field(default=None, compare=False)

    @cached_property
    def ray_index(self) -> dict[Vector, int]:
        return {r: i for i, r in enumerate(self.rays)}

    def cone(self, idx: Iterable[int]) -> Cone:
        return Cone([self.rays[i] for i in idx], self.ambient_rank)

    def _local_facets(self, idx: frozenset[int]):
        c = self.cone(idx)
        back = [self.ray_index[r] for r in c.rays]
        return [(w, frozenset(back[i] for i in s)) for w, s in c.facets()]

    def all_cones(self) -> list[frozenset[int]]:
        """Every cone of the fan as a ray-index set, sorted by (dim, indices)."""
        if self.face_lists is not None:
            cones = set(self.face_lists)
        else:
            cones = set()
            for mc in self.maximal_cones:
                c = self.cone(mc)
                back = [self.ray_index[r] for r in c.rays]
                cones |= {frozenset(back[i] for i in f) for f in c.faces()}
        return sorted(cones, key=lambda s: (len(s), sorted(s)))

    def to_json(self) -> dict:
        order = sorted(range(len(self.rays)), key=lambda i: self.rays[i])
        new = {old: k for k, old in enumerate(order)}
        return {
            "ambient_rank": self.ambient_rank,
            "rays": [list(self.rays[i]) for i in order],
            "maximal_cones": sorted(sorted(new[i] for i in mc) for mc in self.maximal_cones),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def permute_rays(self, a: IntMatrix) -> dict[int, int] | None:
        """Ray permutation induced by ``a``; ``None`` if ``a`` does not preserve the rays."""
        out = {}
        for i, r in enumerate(self.rays):
            j = self.ray_index.get(primitive(matvec(a, r)))
            if j is None or tuple(matvec(a, r)) != self.rays[j]:
                return None
            out[i] = j
        return out

    def verify_intersections(self) -> list[str]:
        """Check that maximal cones meet along common faces; returns problems."""
        problems = []
        cones = [self.cone(mc) for mc in self.maximal_cones]
        faces = []
        for c in cones:
            back = [self.ray_index[r] for r in c.rays]
            faces.append({frozenset(back[i] for i in f) for f in c.faces()})
        for i in range(len(cones)):
            for j in range(i + 1, len(cones)):
                a, b = cones[i], cones[j]
                ia, ea = a.h_representation()
                ib, eb = b.h_representation()
                inter = cone_from_inequalities(ia + ib, ea + eb, self.ambient_rank)
                common = self.maximal_cones[i] & self.maximal_cones[j]
                ok = (all(self.ray_index.get(r) in common for r in inter.rays)
                      and common in faces[i] and common in faces[j])
                if not ok:
                    problems.append(f"cones {sorted(self.maximal_cones[i])} and "
                                    f"{sorted(self.maximal_cones[j])} do not meet in a common face")
        return problems


def star_subdivision(fan: Fan, ray: Sequence[int]) -> Fan:
    """Star subdivision of ``fan`` at the primitive vector ``ray``."""
    v = primitive(ray)
    hit = [mc for mc in fan.maximal_cones if fan.cone(mc).contains(v)]
    if not hit:
        raise ValueError(f"{v} is not in the support of the fan")
    rays = list(fan.rays)
    if v in fan.ray_index:
        vi = fan.ray_index[v]
    else:
        vi = len(rays)
        rays.append(v)
    new: list[frozenset[int]] = []
    for mc in fan.maximal_cones:
        if mc not in hit:
            new.append(mc)
            continue
        for w, facet in fan._local_facets(mc):
            if _dot(w, v) > 0:
                new.append(facet | {vi})
    uniq = []
    for c in new:
        if c not in uniq:
            uniq.append(c)
    uniq = [c for c in uniq if not any(c < o for o in uniq)]
    return Fan(fan.ambient_rank, tuple(rays), tuple(uniq))


# ---------------------------------------------------------------------------
# the cones sigma^(n)_2, sigma^(n)_3 and the fan Delta^(n)


def build_C2(n: int) -> IntMatrix:
    """(n+1) x 2^n matrix of the relative self-product of x1*x2 = t."""
    if n < 1:
        raise ValueError("n must be positive")
    cols = 2 ** n
    rows = [[int(c % 2 == 0) for c in range(cols)], [int(c % 2 == 1) for c in range(cols)]]
    for j in range(1, n):
        rows.append([(c >> j) & 1 for c in range(cols)])
    return as_matrix(rows)


def build_C3(n: int) -> IntMatrix:
    """(2n+1) x 3^n matrix of the relative self-product of x1*x2*x3 = t."""
    if n < 1:
        raise ValueError("n must be positive")
    cols = 3 ** n
    digit = lambda c, j: (c // 3 ** j) % 3
    rows = [[int(digit(c, 0) == v) for c in range(cols)] for v in range(3)]
    for j in range(1, n):
        for v in (1, 2):
            rows.append([int(digit(c, j) == v) for c in range(cols)])
    return as_matrix(rows)


def delta_generators(n: int) -> IntMatrix:
    """Generators of the distinguished maximal cone δ^(n) (as columns)."""
    m = [[0] * (n + 1) for _ in range(n + 1)]
    m[0][0] = 1
    for j in range(1, n + 1):
        for i in range(1, j + 1):
            m[i][j] = 1
    return as_matrix(m)


@lru_cache(maxsize=None)
def build_delta_fan(n: int) -> Fan:
    """Δ^(n): star-subdivide cone(C2) at its first 2^n - 1 columns, in order."""
    if not 1 <= n <= 5:
        raise ValueError("geometric construction supported for 1 <= n <= 5")
    c2 = build_C2(n)
    cols = columns(c2)
    fan = Fan(n + 1, tuple(cols), (frozenset(range(len(cols))),))
    for v in cols[:-1]:
        fan = star_subdivision(fan, v)
    return fan


def sn_generators_N(n: int) -> list[IntMatrix]:
    """Matrices of (1 2), (2 3), ..., (n-1 n) acting on N = Z^(n+1)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    first = block_diag(as_matrix([[1, 1, -1], [0, 0, 1], [0, 1, 0]]), identity(n - 2))
    gens = [first]
    for k in range(2, n):
        m = [list(r) for r in identity(n + 1)]
        m[k][k], m[k][k + 1], m[k + 1][k], m[k + 1][k + 1] = 0, 1, 1, 0
        gens.append(as_matrix(m))
    return gens


def sn_action_N(n: int) -> list[IntMatrix]:
    return sn_generators_N(n)


def matrix_of_perm(p: Permutation, gens: Sequence[IntMatrix]) -> IntMatrix:
    """Representation matrix of ``p`` from the adjacent-transposition matrices."""
    dim = len(gens[0]) if gens else 0
    out = identity(dim)
    for k in adjacent_word(p):
        out = matmul(gens[k - 1], out)
    return out


def group_elements(n: int, gens: Sequence[IntMatrix]) -> dict[Permutation, IntMatrix]:
    return {p: matrix_of_perm(p, gens) for p in permutations(range(1, n + 1))}


# ---------------------------------------------------------------------------
# Coxeter fan of A_{r-1}


def subset_vector(subset: Iterable[int], r: int) -> Vector:
    """Image of the indicator of a proper subset of {1..r} in Z^(r-1)."""
    s = set(subset)
    if r in s:
        comp = set(range(1, r + 1)) - s
        return tuple(-int(i in comp) for i in range(1, r))
    return tuple(int(i in s) for i in range(1, r))


def ordered_set_partitions(r: int) -> list[tuple[tuple[int, ...], ...]]:
    out = []

    def rec(remaining: tuple[int, ...], prefix):
        if not remaining:
            out.append(tuple(prefix))
            return
        n = len(remaining)
        for mask in range(1, 2 ** n):
            block = tuple(remaining[i] for i in range(n) if mask >> i & 1)
            rest = tuple(remaining[i] for i in range(n) if not mask >> i & 1)
            rec(rest, prefix + [block])

    rec(tuple(range(1, r + 1)), [])
    return out


def coxeter_generators(r: int) -> list[IntMatrix]:
    """Matrices of (k k+1), k = 1..r-1, on the weight lattice Z^(r-1)."""
    gens = []
    for k in range(1, r - 1):
        m = [list(x) for x in identity(r - 1)]
        m[k - 1][k - 1], m[k - 1][k], m[k][k - 1], m[k][k] = 0, 1, 1, 0
        gens.append(as_matrix(m))
    last = [list(x) for x in identity(r - 1)]
    for i in range(r - 1):
        last[i][r - 2] = -1
    gens.append(as_matrix(last))
    return gens


def coxeter_matrix(p: Permutation) -> IntMatrix:
    """Action of ``p`` on Z^(r-1), sending the class of e_i to that of e_{p(i)}."""
    r = len(p)
    return from_columns([subset_vector({p[i - 1]}, r) for i in range(1, r)]) if r > 1 else ()


@dataclass(frozen=True)
class CoxeterFan:
    r: int
    fan: Fan
    faces: tuple[tuple[tuple[int, ...], ...], ...]
    face_rays: tuple[frozenset[int], ...]

    def chamber(self, p: Permutation) -> frozenset[int]:
        idx = self.fan.ray_index
        return frozenset(idx[subset_vector(p[:i], self.r)] for i in range(1, self.r))

    def action(self, p: Permutation) -> IntMatrix:
        return coxeter_matrix(p)

    def stabilizes(self, p: Permutation, blocks: tuple[tuple[int, ...], ...]) -> bool:
        return all(set(p[x - 1] for x in b) == set(b) for b in blocks)


def _flag_rays(blocks, r, idx) -> frozenset[int]:
    acc: list[int] = []
    out = []
    for b in blocks[:-1]:
        acc += list(b)
        out.append(idx[subset_vector(acc, r)])
    return frozenset(out)


@lru_cache(maxsize=None)
def coxeter_fan(r: int) -> CoxeterFan:
    if r < 2:
        raise ValueError("r must be at least 2")
    pos = [tuple((m >> i) & 1 for i in range(r - 1)) for m in range(1, 2 ** (r - 1))]
    rays = tuple(sorted(pos + [tuple(-x for x in v) for v in pos]))
    idx = {v: i for i, v in enumerate(rays)}
    faces = tuple(ordered_set_partitions(r))
    face_rays = tuple(_flag_rays(f, r, idx) for f in faces)
    maximal = tuple(fr for f, fr in zip(faces, face_rays) if len(f) == r)
    fan = Fan(r - 1, rays, maximal, face_lists=face_rays)
    return CoxeterFan(r, fan, faces, face_rays)


# ---------------------------------------------------------------------------
# structural checks


@dataclass
class Report:
    name: str
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, label: str, ok: bool, detail: str = ""):
        self.checks.append((label, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list[str]:
        return [label for label, ok, _ in self.checks if not ok]

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok,
                "checks": [{"check": l, "pass": ok, "detail": d} for l, ok, d in self.checks]}

    def render(self) -> str:
        lines = [f"{self.name}: {'PASS' if self.ok else 'FAIL'}"]
        for label, ok, detail in self.checks:
            lines.append(f"  [{'pass' if ok else 'FAIL'}] {label}" + (f" ({detail})" if detail else ""))
        return "\n".join(lines)


def matrix_Q(n: int) -> IntMatrix:
    q = [[0] * (n + 1) for _ in range(n + 1)]
    q[0][0] = q[0][1] = 1
    q[0][n] = -1
    for i in range(1, n):
        q[i][i] = 1
        q[i][n] = -1
    q[n][n] = 1
    if n == 1:
        q = [[1, 0], [0, 1]]
    return as_matrix(q)


def projection_Pi(n: int) -> IntMatrix:
    """Π = p∘Q : N = Z^(n+1) -> N̄ = Z^(n-1) (middle rows of Q)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return matrix_Q(n)[1:n]


def verify_bundle_structure(n: int, geometric: bool = True) -> Report:
    rep = Report(f"bundle structure n={n}")
    q = matrix_Q(n)
    qc = columns(matmul(q, build_C2(n)))
    pos = [tuple((m >> i) & 1 for i in range(n - 1)) for m in range(1, 2 ** (n - 1))]
    expected = ([(1,) + (0,) * (n - 1) + (0,)]
                + [(1,) + w + (0,) for w in pos]
                + [(0,) + tuple(-x for x in w) + (1,) for w in pos]
                + [(0,) * n + (1,)])
    rep.add("Q*C2 columns = (1;0;0), (1;pos;0), (0;neg;1), (0;0;1)", sorted(qc) == sorted(expected))
    qd = matmul(q, delta_generators(n))
    want = [[0] * (n + 1) for _ in range(n + 1)]
    for j in range(n):
        for i in range(j + 1):
            want[i][j] = 1
    want[0][0] = 1
    want[n][n] = 1
    rep.add("Q*delta block form", qd == as_matrix(want))
    pi = projection_Pi(n)
    gens_n, gens_bar = sn_generators_N(n), coxeter_generators(n)
    eq = all(matmul(pi, a) == matmul(b, pi) for a, b in zip(gens_n, gens_bar))
    rep.add("Pi is S_n-equivariant on generators", eq)
    cox = coxeter_fan(n)
    chambers = set(cox.fan.maximal_cones)
    rep.add("Coxeter fan has n! chambers", len(chambers) == factorial(n), str(len(chambers)))
    rep.add("Coxeter fan ray count 2(2^(n-1)-1)", len(cox.fan.rays) == 2 * (2 ** (n - 1) - 1))
    if geometric:
        fan = build_delta_fan(n)
        bad = 0
        for mc in fan.maximal_cones:
            imgs = [matvec(pi, fan.rays[i]) for i in mc]
            nonzero = [v for v in imgs if any(v)]
            zeros = len(imgs) - len(nonzero)
            idx = cox.fan.ray_index
            ok = (zeros == 2 and len(set(nonzero)) == len(nonzero) == n - 1
                  and all(v in idx for v in nonzero)
                  and frozenset(idx[v] for v in nonzero) in chambers)
            bad += not ok
        rep.add("Pi maps each maximal cone of Delta onto a Weyl chamber", bad == 0,
                f"{bad} bad cones" if bad else "")
    return rep


def multiplicity_check(n: int) -> Report:
    rep = Report(f"multiplicity n={n}")
    g = (1, 1) + (0,) * (n - 1)
    cols = columns(build_C2(n))
    rep.add("every ray of Delta pairs to 1 with g", all(_dot(g, c) == 1 for c in cols))
    gens = sn_generators_N(n)
    inv = all(tuple(_dot(g, col) for col in columns(a)) == g for a in gens)
    rep.add("g is S_n-invariant", inv)
    basis = [(1, -1) + (0,) * (n - 1)] + [tuple(-int(i == j) for i in range(n + 1)) for j in range(2, n + 1)]
    rep.add("basis of Ker(g)", all(_dot(g, b) == 0 for b in basis)
            and lattice_index(basis, n + 1) == 1 and rank(as_matrix(basis)) == n)
    perm_ok, trace_ok = True, True
    elems = group_elements(n, gens) if n <= 6 else {}
    for p, a in elems.items():
        for i, b in enumerate(basis, start=1):
            if matvec(a, b) != basis[p[i - 1] - 1]:
                perm_ok = False
        kb = kernel_basis(as_matrix([g]), n + 1)
        res = restricted_lattice_action(a, kb)
        fixed = sum(1 for i in range(n) if p[i] == i + 1)
        if sum(res[i][i] for i in range(n)) != fixed:
            trace_ok = False
    rep.add("S_n acts on Ker(g) by permuting the basis", perm_ok)
    rep.add("character on Ker(g) is the permutation character", trace_ok)
    return rep


def delta_fan_report(n: int) -> Report:
    """Geometric checks on Δ^(n) (n <= 4 by default use)."""
    rep = Report(f"Delta fan n={n}")
    fan = build_delta_fan(n)
    mcs = fan.maximal_cones
    rep.add("n! maximal cones", len(mcs) == factorial(n), str(len(mcs)))
    rep.add("every maximal cone unimodular", all(fan.cone(mc).is_unimodular() for mc in mcs))
    used = set().union(*mcs)
    cols = set(columns(build_C2(n)))
    rep.add("rays = columns of C2 (small)", {fan.rays[i] for i in used} == cols and set(fan.rays) == cols)
    dcone = Cone.from_columns(delta_generators(n))
    rep.add("contains delta^(n)", any(fan.cone(mc) == dcone for mc in mcs))
    gens = sn_generators_N(n)
    elems = group_elements(n, gens)
    start = frozenset(fan.ray_index[r] for r in dcone.rays)
    orbit = set()
    stab = 0
    closed = True
    mcset = set(mcs)
    for p, a in elems.items():
        perm = fan.permute_rays(a)
        if perm is None:
            closed = False
            continue
        img = frozenset(perm[i] for i in start)
        orbit.add(img)
        stab += img == start
        if any(frozenset(perm[i] for i in mc) not in mcset for mc in mcs):
            closed = False
    rep.add("S_n permutes the maximal cones", closed)
    rep.add("simply transitive on maximal cones", orbit == mcset and stab == 1)
    problems = fan.verify_intersections()
    rep.add("maximal cones meet in common faces", not problems, "; ".join(problems[:2]))
    return rep


# ---------------------------------------------------------------------------
# fiber products realising sigma^(n)_2 and sigma^(n)_3


def _iterated_fiber_product(d: int, n: int) -> Cone:
    base = Cone(identity(d), d)
    h = as_matrix([[1] * d])
    acc = base
    for k in range(2, n + 1):
        acc = fiber_product_cones(acc, as_matrix([[1] * d + [0] * (d * (k - 2))]), base, h)
    return acc


def product_basis(d: int, n: int) -> IntMatrix:
    """Columns: the explicit basis of (N_C/N_B)^n used to identify it with Z^rank."""
    def slot_vec(vs):
        return tuple(x for v in vs for x in v)

    f = [tuple(int(i == j) for i in range(d)) for j in range(d)]
    zero = (0,) * d
    cols = []
    for j in range(d):
        cols.append(slot_vec([f[j]] + [f[0]] * (n - 1)))
    for slot in range(1, n):
        for j in range(1, d):
            diff = tuple(a - b for a, b in zip(f[j], f[0]))
            cols.append(slot_vec([diff if s == slot else zero for s in range(n)]))
    return from_columns(cols)


def fiber_product_identity(d: int, n: int) -> tuple[bool, str]:
    """Compare the iterated fiber product with cone(C_d^(n)) in the explicit basis."""
    cone = _iterated_fiber_product(d, n)
    e = product_basis(d, n)
    target = build_C2(n) if d == 2 else build_C3(n)
    ecols = columns(e)
    dim = len(ecols)
    if rank(as_matrix(ecols)) != dim or lattice_index(ecols, len(e)) != 1 or cone.dim != dim:
        return False, "basis is not a basis of the fiber-product lattice"
    # coordinates via a left inverse on the pivot rows
    coords = set()
    rows_sel = _pivot_rows(e)
    sub = as_matrix([e[i] for i in rows_sel])
    inv = inverse(sub)
    for r in cone.rays:
        rhs = [r[i] for i in rows_sel]
        c = [sum(inv[i][j] * rhs[j] for j in range(dim)) for i in range(dim)]
        if any(x.denominator != 1 for x in c):
            return False, f"ray {r} not in the lattice spanned by the basis"
        c = tuple(int(x) for x in c)
        if matvec(e, c) != r:
            return False, f"ray {r} not in the span of the basis"
        coords.add(c)
    ok = coords == set(columns(target))
    return ok, f"{len(cone.rays)} rays"


def _pivot_rows(e: IntMatrix) -> list[int]:
    chosen, rows = [], []
    for i, row in enumerate(e):
        if rank(as_matrix(rows + [row])) > len(rows):
            rows.append(row)
            chosen.append(i)
    return chosen
