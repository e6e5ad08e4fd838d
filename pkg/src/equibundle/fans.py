"""Rational polyhedral fans in the cocharacter lattice X_*(T).

Ray generators are integer vectors in the basis of X_*(T) dual to the
weight-lattice basis of the root datum.  Cones are given by their maximal
members; faces are derived.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Sequence

from .exactla import SubspaceQ, mat, nullspace, rank, smith_normal_form, solve, transpose
from .rootdata import Coweight, RootDatum, primitive_coweight

Ray = tuple[int, ...]


class FanError(ValueError):
    pass


def _dot(u, v) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


@dataclass(frozen=True)
class Cone:
    rays: tuple[Ray, ...]

    @property
    def ambient_dim(self) -> int:
        return len(self.rays[0]) if self.rays else 0

    def dim(self) -> int:
        return rank(mat(self.rays)) if self.rays else 0


def is_primitive(v: Sequence[int]) -> bool:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g == 1


def is_smooth(cone: Cone) -> bool:
    """Ray generators are independent and extend to a basis of the lattice."""
    if not cone.rays:
        return True
    snf = smith_normal_form(cone.rays, cone.ambient_dim)
    return snf.rank == len(cone.rays) and all(d == 1 for d in snf.diag[: snf.rank])


def is_pointed(rays: Sequence[Ray]) -> bool:
    """No nontrivial nonnegative combination of the rays vanishes (checked on circuits)."""
    if not rays:
        return True
    n = len(rays[0])
    for k in range(1, min(len(rays), n + 1) + 1):
        for sub in itertools.combinations(rays, k):
            ker = nullspace(transpose(mat(sub)), k)
            if len(ker) != 1:
                continue
            v = ker[0]
            if all(x > 0 for x in v) or all(x < 0 for x in v):
                return False
    return True


def _facets(rays: Sequence[Ray], n: int) -> list[tuple[frozenset[int], tuple[Fraction, ...]]]:
    """Facets of a pointed cone as (ray index set, inner normal)."""
    if not rays:
        return []
    k = rank(mat(rays))
    out: dict[frozenset[int], tuple[Fraction, ...]] = {}
    for sub in itertools.combinations(range(len(rays)), k - 1):
        pts = [rays[i] for i in sub]
        if pts and rank(mat(pts)) != k - 1:
            continue
        null = nullspace(mat(pts), n) if pts else tuple(
            tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)
        )
        u = None
        for cand in null:
            for r in rays:
                s = _dot(cand, r)
                if s and rank(mat(pts + [r])) == k:
                    u = cand if s > 0 else tuple(-x for x in cand)
                    break
            if u is not None:
                break
        if u is None:
            continue
        vals = [_dot(u, r) for r in rays]
        if any(v < 0 for v in vals):
            continue
        on = frozenset(i for i, v in enumerate(vals) if v == 0)
        on_rank = rank(mat([rays[i] for i in on])) if on else 0
        if on_rank != k - 1:
            continue
        out.setdefault(on, u)
    return sorted(out.items(), key=lambda kv: sorted(kv[0]))


def cone_faces(rays: Sequence[Ray]) -> set[frozenset[int]]:
    """All faces of the cone as sets of indices into ``rays``."""
    n = len(rays[0]) if rays else 0
    faces: set[frozenset[int]] = set()

    def walk(idx: frozenset[int]):
        if idx in faces:
            return
        faces.add(idx)
        sub = sorted(idx)
        for f, _ in _facets([rays[i] for i in sub], n):
            walk(frozenset(sub[j] for j in f))

    walk(frozenset(range(len(rays))))
    return faces


def _h_rep(rays: Sequence[Ray], n: int):
    """(equalities, inequalities) describing the cone."""
    span = SubspaceQ.span(n, rays) if rays else SubspaceQ.zero(n)
    eqs = list(span.complement_equations())
    ineqs = [u for _, u in _facets(rays, n)]
    return eqs, ineqs


def in_cone(rays: Sequence[Ray], p: Sequence) -> bool:
    """Exact membership by Carathéodory: p is a nonnegative combination of independent rays."""
    if not any(p):
        return True
    for k in range(1, len(rays) + 1):
        for sub in itertools.combinations(rays, k):
            if rank(mat(sub)) != k:
                continue
            x = solve(transpose(mat(sub)), [Fraction(v) for v in p])
            if x is not None and all(c >= 0 for c in x):
                return True
    return False


def intersection_rays(a: Sequence[Ray], b: Sequence[Ray], n: int) -> list[tuple[Fraction, ...]]:
    """Extreme rays of the intersection of two pointed cones."""
    ea, ia = _h_rep(a, n)
    eb, ib = _h_rep(b, n)
    eqs = ea + eb
    ineqs = ia + ib
    base_rank = rank(mat(eqs), n) if eqs else 0
    if base_rank >= n:
        return []
    out = []
    seen = set()
    need = n - 1 - base_rank
    for sub in itertools.combinations(range(len(ineqs)), need):
        rows = eqs + [ineqs[i] for i in sub]
        ker = nullspace(mat(rows), n) if rows else None
        if ker is None or len(ker) != 1:
            continue
        for v in (ker[0], tuple(-x for x in ker[0])):
            if all(_dot(u, v) >= 0 for u in ineqs):
                key = SubspaceQ.span(n, [v]).basis
                if key not in seen:
                    seen.add(key)
                    out.append(v)
    return out


@dataclass(frozen=True)
class Fan:
    datum: RootDatum
    rays: tuple[Ray, ...]
    max_cones: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def ambient_dim(self) -> int:
        return self.datum.rank

    @cached_property
    def cones(self) -> tuple[tuple[int, ...], ...]:
        """All cones (as sorted ray index tuples), including the origin."""
        found: set[tuple[int, ...]] = {()}
        for mc in self.max_cones:
            rs = [self.rays[i] for i in mc]
            for face in cone_faces(rs):
                found.add(tuple(sorted(mc[j] for j in face)))
        return tuple(sorted(found, key=lambda c: (len(c), c)))

    def cone(self, idx: Sequence[int]) -> Cone:
        return Cone(tuple(self.rays[i] for i in idx))

    def ray_coweight(self, i: int) -> Coweight:
        return self.datum.coweight_from_lattice(self.rays[i])

    @cached_property
    def ray_coweights(self) -> tuple[Coweight, ...]:
        return tuple(self.ray_coweight(i) for i in range(len(self.rays)))

    def to_json(self) -> dict:
        return {"rays": [list(r) for r in self.rays], "max_cones": [list(c) for c in self.max_cones]}


def make_fan(datum: RootDatum, rays: Sequence[Sequence[int]], max_cones: Sequence[Sequence[int]] | None = None) -> Fan:
    rays_t = tuple(tuple(int(x) for x in r) for r in rays)
    for r in rays_t:
        if len(r) != datum.rank:
            raise FanError(f"ray {list(r)} has length {len(r)}, expected {datum.rank}")
    if max_cones is None:
        max_cones = [[i] for i in range(len(rays_t))]
    cones = []
    for c in max_cones:
        c = tuple(sorted(int(i) for i in c))
        for i in c:
            if not 0 <= i < len(rays_t):
                raise FanError(f"cone {list(c)} references absent ray index {i}")
        if len(set(c)) != len(c):
            raise FanError(f"cone {list(c)} repeats a ray")
        cones.append(c)
    return Fan(datum, rays_t, tuple(cones))


def sigma0(datum: RootDatum) -> Fan:
    """The fan of faces of the dominant Weyl co-chamber, pulled back to X_*(T)."""
    if datum.ss_rank == 0:
        raise FanError("datum has no semisimple part")
    rays = [primitive_coweight(datum, w) for w in datum.fundamental_coweights]
    return make_fan(datum, rays, [list(range(len(rays)))])


def is_sigma0(fan: Fan) -> bool:
    ref = sigma0(fan.datum)
    if sorted(fan.rays) != sorted(ref.rays):
        return False
    return {tuple(sorted(fan.rays[i] for i in c)) for c in fan.cones} == {
        tuple(sorted(ref.rays[i] for i in c)) for c in ref.cones
    }


def maps_to_sigma0(fan: Fan) -> bool:
    """Every cone maps into the dominant co-chamber (all ray images are dominant)."""
    n = fan.datum.ss_rank
    return all(all(c[i] >= 0 for i in range(n)) for c in fan.ray_coweights)


@dataclass
class FanReport:
    primitive: list[str]
    pointed: list[str]
    intersections: list[str]
    smooth: list[str]
    sigma0: list[str]

    @property
    def ok(self) -> bool:
        return not (self.primitive or self.pointed or self.intersections or self.smooth or self.sigma0)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "non_primitive_rays": self.primitive,
            "non_pointed_cones": self.pointed,
            "bad_intersections": self.intersections,
            "non_smooth_cones": self.smooth,
            "not_mapping_to_sigma0": self.sigma0,
        }


def validate_fan(fan: Fan) -> FanReport:
    n = fan.ambient_dim
    rep = FanReport([], [], [], [], [])
    for i, r in enumerate(fan.rays):
        if not is_primitive(r):
            rep.primitive.append(f"ray {i} {list(r)} is not primitive")
    for c in fan.max_cones:
        rs = [fan.rays[i] for i in c]
        if not is_pointed(rs):
            rep.pointed.append(f"cone {list(c)} is not strongly convex")
        elif not is_smooth(Cone(tuple(rs))):
            rep.smooth.append(f"cone {list(c)} is not smooth")
    if not rep.pointed:
        cone_sets = {frozenset(c) for c in fan.cones}
        for a, b in itertools.combinations(fan.max_cones, 2):
            common = sorted(set(a) & set(b))
            if frozenset(common) not in cone_sets or not _is_face(fan, a, common) or not _is_face(fan, b, common):
                rep.intersections.append(f"cones {list(a)} and {list(b)} do not meet in a common face")
                continue
            ra = [fan.rays[i] for i in a]
            rb = [fan.rays[i] for i in b]
            rc = [fan.rays[i] for i in common]
            for v in intersection_rays(ra, rb, n):
                if not in_cone(rc, v):
                    rep.intersections.append(f"cones {list(a)} and {list(b)} do not meet in a common face")
                    break
    for i, c in enumerate(fan.ray_coweights):
        if any(x < 0 for x in c[: fan.datum.ss_rank]):
            rep.sigma0.append(f"ray {i} {list(fan.rays[i])} is not dominant")
    return rep


def _is_face(fan: Fan, cone: Sequence[int], sub: Sequence[int]) -> bool:
    faces = cone_faces([fan.rays[i] for i in cone])
    pos = {r: k for k, r in enumerate(cone)}
    return frozenset(pos[i] for i in sub) in faces
