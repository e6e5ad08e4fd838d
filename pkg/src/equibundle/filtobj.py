"""Multifiltered representations: one decreasing Z-filtration per ray of a fan.

A :class:`Filtration` is stored by its steps ``(d_0, S_0), ..., (d_k, S_k)``
with increasing degrees.  ``F(m)`` is the subspace of the first step whose
degree is at least ``m``, and ``F(m) = 0`` for ``m > d_k``.  The filtration is
exhaustive when ``S_0`` is the whole space.

Besides its weight, every basis vector of an object carries a tag: its
character under the right action of the finite central group.  Tags default to
the trivial character.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Callable, Iterable, Sequence

from .exactla import (
    SubspaceQ,
    common_adapted_basis,
    contains,
    intersect,
    subspace_sum,
)
from .fans import Fan, is_sigma0, sigma0
from .repcore import Rep, adjoint_rep, direct_sum_reps, labelled_vector, root_vector_label
from .rootdata import Weight


class ObjectError(ValueError):
    pass


@dataclass(frozen=True)
class Filtration:
    dim: int
    steps: tuple[tuple[int, SubspaceQ], ...]

    @classmethod
    def from_steps(cls, dim: int, pairs: Iterable[tuple[int, SubspaceQ]]) -> "Filtration":
        """Normalize (degree, subspace) pairs: sort, merge repeats, drop trailing zeros."""
        pairs = sorted(((int(d), s) for d, s in pairs), key=lambda p: p[0])
        degrees = [d for d, _ in pairs]
        if len(set(degrees)) != len(degrees):
            raise ObjectError(f"repeated degree in filtration: {degrees}")
        for _, s in pairs:
            if s.ambient_dim != dim:
                raise ObjectError("filtration subspace has the wrong ambient dimension")
        out: list[tuple[int, SubspaceQ]] = []
        for d, s in pairs:
            if out and out[-1][1] == s:
                out[-1] = (d, s)
            else:
                out.append((d, s))
        while out and out[-1][1].is_zero():
            out.pop()
        return cls(dim, tuple(out))

    @classmethod
    def from_function(cls, dim: int, fn: Callable[[int], SubspaceQ], lo: int, hi: int) -> "Filtration":
        """Filtration with F(n) = fn(n) for lo <= n <= hi, constant below lo, zero above hi."""
        return cls.from_steps(dim, [(n, fn(n)) for n in range(lo, hi + 1)])

    @classmethod
    def null(cls, dim: int) -> "Filtration":
        return cls.from_steps(dim, [(0, SubspaceQ.full(dim))])

    def at(self, n: int) -> SubspaceQ:
        for d, s in self.steps:
            if d >= n:
                return s
        return SubspaceQ.zero(self.dim)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(d for d, _ in self.steps)

    @property
    def subspaces(self) -> tuple[SubspaceQ, ...]:
        return tuple(s for _, s in self.steps)

    def shift(self, s: int) -> "Filtration":
        """The filtration n -> F(n - s)."""
        return Filtration(self.dim, tuple((d + s, sub) for d, sub in self.steps))

    def is_exhaustive(self) -> bool:
        return self.dim == 0 or (bool(self.steps) and self.steps[0][1].is_full())

    def is_decreasing(self) -> bool:
        return all(contains(a, b) for (_, a), (_, b) in zip(self.steps, self.steps[1:]))

    def dims(self) -> tuple[tuple[int, int], ...]:
        return tuple((d, s.dim) for d, s in self.steps)

    def to_json(self) -> list:
        return [[d, s.to_json()] for d, s in self.steps]


@dataclass(frozen=True, eq=False)
class FiltrationObject:
    rep: Rep
    fan: Fan
    filtrations: tuple[Filtration, ...]
    tags: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        if len(self.filtrations) != len(self.fan.rays):
            raise ObjectError(f"expected {len(self.fan.rays)} filtrations, got {len(self.filtrations)}")
        for f in self.filtrations:
            if f.dim != self.rep.dim:
                raise ObjectError("filtration ambient dimension differs from the representation")
        if not self.tags:
            object.__setattr__(self, "tags", (self.rep.datum.trivial_character,) * self.rep.dim)
        if len(self.tags) != self.rep.dim:
            raise ObjectError("one central-character tag per basis vector is required")

    @property
    def dim(self) -> int:
        return self.rep.dim

    @property
    def datum(self):
        return self.rep.datum

    def ray_coweight(self, i: int):
        return self.fan.ray_coweights[i]

    def with_filtrations(self, filtrations: Sequence[Filtration]) -> "FiltrationObject":
        return FiltrationObject(self.rep, self.fan, tuple(filtrations), self.tags)

    def same_as(self, other: "FiltrationObject") -> bool:
        """Equality of the underlying data (same basis, same subspaces)."""
        return (
            self.rep.weights == other.rep.weights
            and self.rep.e == other.rep.e
            and self.rep.f == other.rep.f
            and self.tags == other.tags
            and self.fan.rays == other.fan.rays
            and self.filtrations == other.filtrations
        )

    def to_json(self) -> dict:
        return {
            "rep": self.rep.to_json(),
            "fan": self.fan.to_json(),
            "tags": [list(t) for t in self.tags],
            "filtrations": {str(i): f.to_json() for i, f in enumerate(self.filtrations)},
        }


def make_object(
    rep: Rep,
    fan: Fan,
    filtrations: dict[int, Sequence[tuple[int, Sequence[Sequence]]]] | None = None,
    tags: Sequence[Sequence[int]] | None = None,
) -> FiltrationObject:
    """Object from explicit (degree, spanning vectors) lists; unlisted rays get the null filtration."""
    filtrations = filtrations or {}
    fs = []
    for i in range(len(fan.rays)):
        if i in filtrations:
            pairs = [(d, SubspaceQ.span(rep.dim, vs)) for d, vs in filtrations[i]]
            fs.append(Filtration.from_steps(rep.dim, pairs))
        else:
            fs.append(Filtration.null(rep.dim))
    unknown = set(filtrations) - set(range(len(fan.rays)))
    if unknown:
        raise ObjectError(f"filtration given for absent ray index {sorted(unknown)[0]}")
    return FiltrationObject(rep, fan, tuple(fs), tuple(tuple(t) for t in tags) if tags else ())


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------


def _blocks(obj: FiltrationObject) -> list[tuple[int, ...]]:
    groups: dict[tuple, list[int]] = defaultdict(list)
    for i, (w, t) in enumerate(zip(obj.rep.weights, obj.tags)):
        groups[(w, t)].append(i)
    return [tuple(v) for v in groups.values()]


def is_block_spanned(sub: SubspaceQ, blocks: Sequence[Sequence[int]]) -> bool:
    """True iff sub is the sum of its intersections with the coordinate blocks."""
    for b in sub.basis:
        for blk in blocks:
            proj = [Fraction(0)] * sub.ambient_dim
            nonzero = False
            for i in blk:
                if b[i]:
                    proj[i] = b[i]
                    nonzero = True
            if nonzero and not sub.contains_vector(proj):
                return False
    return True


def _check_ray(obj: FiltrationObject, i: int) -> None:
    if not 0 <= i < len(obj.fan.rays):
        raise ObjectError(f"unknown ray index {i}")


def standard_failures(obj: FiltrationObject, i: int) -> list[str]:
    _check_ray(obj, i)
    filt = obj.filtrations[i]
    out = []
    if not filt.is_exhaustive():
        out.append(f"ray {i}: lowest step is not the whole space")
    if not filt.is_decreasing():
        out.append(f"ray {i}: filtration is not decreasing")
    tau = obj.ray_coweight(i)
    blocks = _blocks(obj)
    zero, pos, _ = obj.datum.parabolic_split(tau)
    for d, s in filt.steps:
        if not is_block_spanned(s, blocks):
            out.append(f"ray {i}, degree {d}: not spanned by weight vectors")
            continue
        for alpha in zero + pos:
            if not contains(s, s.image(obj.rep.root_action(alpha))):
                out.append(f"ray {i}, degree {d}: not stable under e_{list(alpha)}")
                break
    return out


def transversal_failures(obj: FiltrationObject, i: int) -> list[str]:
    _check_ray(obj, i)
    filt = obj.filtrations[i]
    tau = obj.ray_coweight(i)
    _, _, neg = obj.datum.parabolic_split(tau)
    out = []
    for alpha in neg:
        m = obj.datum.pairing_root(tau, alpha)
        if m.denominator != 1:
            raise ObjectError(f"ray {i} pairs non-integrally with root {alpha}")
        act = obj.rep.root_action(alpha)
        for d, s in filt.steps:
            if not contains(filt.at(d + int(m)), s.image(act)):
                out.append(f"ray {i}: e_{list(alpha)} F({d}) is not contained in F({d + int(m)})")
    return out


def distributive_failures(obj: FiltrationObject, cone: Sequence[int]) -> list[str]:
    family = []
    for i in cone:
        family.extend(obj.filtrations[i].subspaces)
    if not family or common_adapted_basis(family) is not None:
        return []
    return [f"cone {list(cone)}: filtrations admit no common adapted basis"]


def check_standard(obj: FiltrationObject, i: int) -> bool:
    return not standard_failures(obj, i)


def check_transversal(obj: FiltrationObject, i: int) -> bool:
    if standard_failures(obj, i):
        raise ObjectError(f"ray {i}: filtration is not standard")
    return not transversal_failures(obj, i)


def check_distributive(obj: FiltrationObject, cone: Sequence[int]) -> bool:
    return not distributive_failures(obj, cone)


CLASS_NONE = "not-an-object"
CLASS_L = "C(Sigma)_c^l"
CLASS_C = "C(Sigma)_c"


@dataclass
class ValidationReport:
    standard: dict[int, bool]
    transversal: dict[int, bool | None]
    distributive: dict[tuple[int, ...], bool]
    failures: list[str]

    @property
    def klass(self) -> str:
        if not all(self.standard.values()) or not all(self.distributive.values()):
            return CLASS_NONE
        if all(self.transversal.values()):
            return CLASS_C
        return CLASS_L

    def to_json(self) -> dict:
        return {
            "class": self.klass,
            "standard": {str(k): v for k, v in self.standard.items()},
            "transversal": {str(k): v for k, v in self.transversal.items()},
            "distributive": {",".join(map(str, k)): v for k, v in self.distributive.items()},
            "failures": list(self.failures),
        }


def validate(obj: FiltrationObject) -> ValidationReport:
    std, trans, dist, fails = {}, {}, {}, []
    for i in range(len(obj.fan.rays)):
        sf = standard_failures(obj, i)
        std[i] = not sf
        fails += sf
        if sf:
            trans[i] = None
        else:
            tf = transversal_failures(obj, i)
            trans[i] = not tf
            fails += tf
    cones = [c for c in obj.fan.cones if c]
    maximal = [c for c in cones if not any(set(c) < set(d) for d in cones)]
    for c in maximal:
        df = distributive_failures(obj, c)
        dist[tuple(c)] = not df
        fails += df
    return ValidationReport(std, trans, dist, fails)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def f_null(rep: Rep, fan: Fan, tags=None) -> FiltrationObject:
    return FiltrationObject(rep, fan, tuple(Filtration.null(rep.dim) for _ in fan.rays), tuple(tags or ()))


def _weight_pieces(rep: Rep) -> list[tuple[Weight, Weight, SubspaceQ]]:
    """(weight, lowest weight of its isotypic component, piece) for the isotypic decomposition."""
    from .repcore import cyclic_submodule, highest_weight_vectors

    d = rep.datum
    simple = [d.root_to_weight(a) for a in d.simple_roots]
    pieces = []
    total = 0
    for mu in sorted(rep.weight_blocks, key=lambda w: tuple(-x for x in w)):
        if not d.is_dominant(mu):
            continue
        hws = highest_weight_vectors(rep, mu)
        if not hws:
            continue
        iso = cyclic_submodule(rep, hws)
        one = cyclic_submodule(rep, hws[:1])
        wts = {w for w, idx in rep.weight_blocks.items() if not intersect(one, SubspaceQ.coordinate(rep.dim, idx)).is_zero()}
        lowest = [w for w in wts if not any(tuple(x - y for x, y in zip(w, s)) in wts for s in simple)]
        if len(lowest) != 1:
            raise ObjectError(f"could not locate the lowest weight of V_{list(mu)}")
        for w, idx in rep.weight_blocks.items():
            piece = intersect(iso, SubspaceQ.coordinate(rep.dim, idx))
            if not piece.is_zero():
                pieces.append((w, lowest[0], piece))
                total += piece.dim
    if total != rep.dim:
        raise ObjectError("representation is not the sum of its isotypic components")
    return pieces


def f_max(rep: Rep, fan: Fan, tags=None) -> FiltrationObject:
    """Maximal filtration: weight mu of V_lambda sits in degree <tau, mu - w0 lambda>."""
    pieces = _weight_pieces(rep)
    fs = []
    for i in range(len(fan.rays)):
        tau = fan.ray_coweights[i]
        graded = []
        for w, low, piece in pieces:
            p = rep.datum.pairing(tau, tuple(a - b for a, b in zip(w, low)))
            if p.denominator != 1:
                raise ObjectError("ray pairs non-integrally with a root-lattice weight")
            graded.append((int(p), piece))
        fs.append(_from_grading(rep.dim, graded))
    return FiltrationObject(rep, fan, tuple(fs), tuple(tags or ()))


def _from_grading(dim: int, graded: Sequence[tuple[int, SubspaceQ]]) -> Filtration:
    """F(m) = sum of pieces of degree >= m."""
    if not graded:
        return Filtration.from_steps(dim, [])
    lo = min(g for g, _ in graded)
    hi = max(g for g, _ in graded)

    def fn(m):
        s = SubspaceQ.zero(dim)
        for g, piece in graded:
            if g >= m:
                s = subspace_sum(s, piece)
        return s

    return Filtration.from_function(dim, fn, lo, hi)


def f_can(rep: Rep, fan: Fan | None = None) -> FiltrationObject:
    """Canonical filtration: F(n) = sum of weight spaces with <varpi, lambda> >= 2n."""
    d = rep.datum
    fan = fan or sigma0(d)
    if not d.is_adjoint or not is_sigma0(fan):
        raise ObjectError("canonical filtration needs the co-chamber fan of an adjoint datum")
    if any(not d.in_weight_lattice(w) for w in rep.weights):
        raise ObjectError("canonical filtration needs a trivial central character")
    fs = []
    for i in range(len(fan.rays)):
        tau = fan.ray_coweights[i]
        graded = []
        for w, idx in rep.weight_blocks.items():
            p = d.pairing(tau, w)
            graded.append((floor(Fraction(p) / 2), SubspaceQ.coordinate(rep.dim, idx)))
        fs.append(_from_grading(rep.dim, graded))
    return FiltrationObject(rep, fan, tuple(fs))


def twist_shifts(obj: FiltrationObject, lam: Sequence[int]) -> tuple[int, ...]:
    return tuple(floor(obj.datum.pairing(tau, lam)) for tau in obj.fan.ray_coweights)


def twist(obj: FiltrationObject, lam: Sequence[int]) -> FiltrationObject:
    """Degree shift n -> F(n - floor<tau, lam>) and tags moved by the class of lam."""
    lam = tuple(int(x) for x in lam)
    shifts = twist_shifts(obj, lam)
    chi = obj.datum.central_character(lam)
    tags = tuple(obj.datum.add_characters(t, chi) for t in obj.tags)
    fs = tuple(f.shift(s) for f, s in zip(obj.filtrations, shifts))
    return FiltrationObject(obj.rep, obj.fan, fs, tags)


def shift_object(obj: FiltrationObject, shifts: Sequence[int]) -> FiltrationObject:
    return obj.with_filtrations([f.shift(s) for f, s in zip(obj.filtrations, shifts)])


def _pad(sub: SubspaceQ, before: int, after: int) -> list[tuple[Fraction, ...]]:
    z0 = (Fraction(0),) * before
    z1 = (Fraction(0),) * after
    return [z0 + tuple(b) + z1 for b in sub.basis]


def direct_sum(a: FiltrationObject, b: FiltrationObject) -> FiltrationObject:
    if a.fan.rays != b.fan.rays or a.fan.max_cones != b.fan.max_cones or a.datum != b.datum:
        raise ObjectError("direct sum needs the same fan and root datum")
    rep = direct_sum_reps(a.rep, b.rep)
    n = rep.dim
    fs = []
    for fa, fb in zip(a.filtrations, b.filtrations):
        degrees = sorted(set(fa.degrees) | set(fb.degrees))
        pairs = [
            (d, SubspaceQ(n, tuple(_pad(fa.at(d), 0, b.dim) + _pad(fb.at(d), a.dim, 0))))
            for d in degrees
        ]
        fs.append(Filtration.from_steps(n, pairs))
    return FiltrationObject(rep, a.fan, tuple(fs), a.tags + b.tags)


def restrict_to_indices(obj: FiltrationObject, idx: Sequence[int]) -> FiltrationObject:
    """Sub-object on a set of basis vectors closed under the action and spanning each F(n) piece."""
    idx = list(idx)
    pos = {i: k for k, i in enumerate(idx)}
    rest = [i for i in range(obj.dim) if i not in pos]
    for m in obj.rep.e + obj.rep.f:
        for r in rest:
            for c in idx:
                if m[r][c] or m[c][r]:
                    raise ObjectError("basis subset is not a direct summand of the representation")
    sub_rep = Rep(
        obj.datum,
        tuple(obj.rep.weights[i] for i in idx),
        tuple(tuple(tuple(m[r][c] for c in idx) for r in idx) for m in obj.rep.e),
        tuple(tuple(tuple(m[r][c] for c in idx) for r in idx) for m in obj.rep.f),
    )
    block = SubspaceQ.coordinate(obj.dim, idx)
    fs = []
    for f in obj.filtrations:
        pairs = []
        for d, s in f.steps:
            piece = intersect(s, block)
            pairs.append((d, SubspaceQ.span(len(idx), [[v[i] for i in idx] for v in piece.basis])))
        fs.append(Filtration.from_steps(len(idx), pairs))
    return FiltrationObject(sub_rep, obj.fan, tuple(fs), tuple(obj.tags[i] for i in idx))


def isotypical_split(obj: FiltrationObject) -> list[FiltrationObject]:
    """Pieces on which the central group acts through a single character, sorted by character."""
    groups: dict[tuple[int, ...], list[int]] = defaultdict(list)
    for i, t in enumerate(obj.tags):
        groups[t].append(i)
    blocks = list(groups.values())
    for f in obj.filtrations:
        for s in f.subspaces:
            if not is_block_spanned(s, blocks):
                raise ObjectError("filtration does not respect the central-character decomposition")
    return [restrict_to_indices(obj, groups[t]) for t in sorted(groups)]


def tangent_bundle(datum, logarithmic: bool = False, torus_line: str = "coweight") -> FiltrationObject:
    """Object of the (logarithmic) tangent bundle of the wonderful compactification.

    In degree 1 the ray omega_i^vee contributes a line of the Cartan subalgebra.
    With ``torus_line="coweight"`` this is omega_i^vee itself, the only line of
    the Cartan subalgebra killed by every level-zero root.  ``"coroot"`` uses
    H_i = [e_{alpha_i}, e_{-alpha_i}] instead, which agrees in rank one.
    """
    if torus_line not in ("coweight", "coroot"):
        raise ObjectError(f"unknown torus line {torus_line!r}")
    rep = adjoint_rep(datum)
    fan = sigma0(datum)
    roots = datum.roots
    n_ss = datum.ss_rank
    fs = []
    for i, tau in enumerate(fan.ray_coweights):
        levels = {a: datum.pairing_root(tau, a) for a in roots}
        top = int(max(levels.values()))
        if torus_line == "coroot":
            h = labelled_vector(rep, f"H{i + 1}")
        else:
            coeffs = [datum._cartan_inv[i][j] for j in range(n_ss)]
            h = tuple(
                sum((c * x for c, x in zip(coeffs, col)), Fraction(0))
                for col in zip(*(labelled_vector(rep, f"H{j + 1}") for j in range(n_ss)))
            )

        def fn(n, levels=levels, h=h):
            if n <= 0:
                return SubspaceQ.full(rep.dim)
            vecs = [labelled_vector(rep, root_vector_label(a)) for a, p in levels.items() if p >= n]
            if n == 1 and not logarithmic:
                vecs.append(h)
            return SubspaceQ.span(rep.dim, vecs)

        fs.append(Filtration.from_function(rep.dim, fn, 0, max(top, 1)))
    return FiltrationObject(rep, fan, tuple(fs))


def character_table(obj: FiltrationObject, i: int) -> list[tuple[int, dict[Weight, int]]]:
    """Per-step weight multiplicities of the ray-i filtration."""
    out = []
    for d, s in obj.filtrations[i].steps:
        ch = {}
        for w, idx in obj.rep.weight_blocks.items():
            k = intersect(s, SubspaceQ.coordinate(obj.dim, idx)).dim
            if k:
                ch[w] = k
        out.append((d, dict(sorted(ch.items(), reverse=True))))
    return out
