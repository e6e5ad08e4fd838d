"""Morphisms between multifiltered representations, PGL2 classification, splitting and Kostant checks."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Sequence

from .exactla import (
    MatrixQ,
    SubspaceQ,
    common_adapted_basis,
    contains,
    determinant,
    intersect,
    mat,
    matmul,
    matvec,
    nullspace,
    zeros,
)
from .fans import is_sigma0, sigma0
from .filtobj import (
    CLASS_C,
    Filtration,
    FiltrationObject,
    ObjectError,
    character_table,
    validate,
)
from .repcore import Rep, RepError, sl2_irrep
from .rootdata import CartanType, RootDatum, build_root_datum

_SEED = 20240601


# ---------------------------------------------------------------------------
# morphisms
# ---------------------------------------------------------------------------


def hom_equivariant(a: Rep, b: Rep, tags_a=None, tags_b=None) -> list[MatrixQ]:
    """Basis of the matrices X (dim b x dim a) commuting with every Chevalley generator."""
    if a.datum != b.datum:
        raise RepError("datum mismatch")
    variables = [
        (r, c)
        for r in range(b.dim)
        for c in range(a.dim)
        if b.weights[r] == a.weights[c] and (tags_a is None or tags_a[c] == tags_b[r])
    ]
    index = {v: k for k, v in enumerate(variables)}
    nv = len(variables)
    if nv == 0:
        return []
    rows = []
    for ga, gb in zip(a.e + a.f, b.e + b.f):
        # (X ga - gb X)[r][c] = 0
        for r in range(b.dim):
            for c in range(a.dim):
                row = [Fraction(0)] * nv
                nz = False
                for k in range(a.dim):
                    x = ga[k][c]
                    if x and (r, k) in index:
                        row[index[(r, k)]] += x
                        nz = True
                for k in range(b.dim):
                    x = gb[r][k]
                    if x and (k, c) in index:
                        row[index[(k, c)]] -= x
                        nz = True
                if nz and any(row):
                    rows.append(row)
    sols = nullspace(rows, nv) if rows else tuple(
        tuple(Fraction(int(i == j)) for j in range(nv)) for i in range(nv)
    )
    out = []
    for s in sols:
        m = [[Fraction(0)] * a.dim for _ in range(b.dim)]
        for (r, c), x in zip(variables, s):
            m[r][c] = x
        out.append(mat(m))
    return out


def _combine(basis: Sequence[MatrixQ], coeffs: Sequence[Fraction], nrows: int, ncols: int) -> MatrixQ:
    m = [[Fraction(0)] * ncols for _ in range(nrows)]
    for x, c in zip(basis, coeffs):
        if c:
            for r in range(nrows):
                for k in range(ncols):
                    if x[r][k]:
                        m[r][k] += c * x[r][k]
    return mat(m)


def _same_setting(a: FiltrationObject, b: FiltrationObject) -> None:
    if a.fan.rays != b.fan.rays or a.fan.max_cones != b.fan.max_cones:
        raise ObjectError("fan mismatch")
    if a.datum != b.datum:
        raise ObjectError("datum mismatch")


def hom_c(a: FiltrationObject, b: FiltrationObject) -> list[MatrixQ]:
    """Basis of equivariant maps sending every F_a(n) into F_b(n)."""
    _same_setting(a, b)
    base = hom_equivariant(a.rep, b.rep, a.tags, b.tags)
    if not base:
        return []
    rows = []
    for fa, fb in zip(a.filtrations, b.filtrations):
        for d, s in fa.steps:
            eqs = fb.at(d).complement_equations()
            if not eqs:
                continue
            for v in s.basis:
                imgs = [matvec(x, v) for x in base]
                for q in eqs:
                    row = [sum((qi * yi for qi, yi in zip(q, img)), Fraction(0)) for img in imgs]
                    if any(row):
                        rows.append(row)
    if not rows:
        return base
    sols = nullspace(rows, len(base))
    return [_combine(base, s, b.dim, a.dim) for s in sols]


@dataclass(frozen=True, eq=False)
class Morphism:
    source: FiltrationObject
    target: FiltrationObject
    matrix: MatrixQ

    def image(self) -> SubspaceQ:
        return SubspaceQ.full(self.source.dim).image(self.matrix, self.target.dim)

    def is_injective(self) -> bool:
        return self.image().dim == self.source.dim


def is_c_morphism(f: Morphism) -> bool:
    a, b, x = f.source, f.target, f.matrix
    if len(x) != b.dim or any(len(r) != a.dim for r in x):
        return False
    for ga, gb in zip(a.rep.e + a.rep.f, b.rep.e + b.rep.f):
        if matmul(x, ga) != matmul(gb, x):
            return False
    for r in range(b.dim):
        for c in range(a.dim):
            if x[r][c] and (a.rep.weights[c] != b.rep.weights[r] or a.tags[c] != b.tags[r]):
                return False
    for fa, fb in zip(a.filtrations, b.filtrations):
        for d, s in fa.steps:
            if not contains(fb.at(d), s.image(x, b.dim)):
                return False
    return True


def is_strict_morphism(f: Morphism) -> bool:
    """Conditions (L) and (R): images of the filtrations are cut out by the target filtration,
    and the image together with the target filtrations is distributive on each cone."""
    if not is_c_morphism(f):
        raise ObjectError("not a morphism of filtered objects")
    a, b, x = f.source, f.target, f.matrix
    img = f.image()
    for fa, fb in zip(a.filtrations, b.filtrations):
        for d in sorted(set(fa.degrees) | set(fb.degrees)):
            if fa.at(d).image(x, b.dim) != intersect(img, fb.at(d)):
                return False
    cones = [c for c in b.fan.cones if c]
    for c in cones:
        family = [img]
        for i in c:
            family.extend(b.filtrations[i].subspaces)
        if common_adapted_basis(family) is None:
            return False
    return True


def _invertible_in(space: Sequence[MatrixQ], n: int, tries: int = 24) -> MatrixQ | None:
    """An invertible member of a linear space of n x n matrices, if one is found."""
    if not space or n == 0:
        return mat([]) if n == 0 else None
    if len(space) == 1:
        return space[0] if determinant(space[0]) != 0 else None
    rng = random.Random(_SEED)
    for _ in range(tries):
        coeffs = [Fraction(rng.randint(-50, 50)) for _ in space]
        m = _combine(space, coeffs, n, n)
        if determinant(m) != 0:
            return m
    return None


def is_isomorphic(a: FiltrationObject, b: FiltrationObject) -> bool:
    """Isomorphism test: equal step dimensions, then an invertible c-morphism."""
    _same_setting(a, b)
    if a.dim != b.dim:
        return False
    for fa, fb in zip(a.filtrations, b.filtrations):
        for d in sorted(set(fa.degrees) | set(fb.degrees)):
            if fa.at(d).dim != fb.at(d).dim:
                return False
    return _invertible_in(hom_c(a, b), a.dim) is not None


# ---------------------------------------------------------------------------
# enumeration and PGL2 classification
# ---------------------------------------------------------------------------


def standard_subspaces(rep: Rep, tau) -> list[SubspaceQ]:
    """Subspaces spanned by basis weight vectors and stable under the parabolic; needs
    distinct weights on the basis."""
    if len(set(rep.weights)) != rep.dim:
        raise RepError("enumeration needs a multiplicity-free representation")
    zero, pos, _ = rep.datum.parabolic_split(tau)
    acts = [rep.root_action(a) for a in zero + pos]
    out = []
    for k in range(rep.dim + 1):
        for idx in itertools.combinations(range(rep.dim), k):
            s = SubspaceQ.coordinate(rep.dim, idx)
            if all(contains(s, s.image(m)) for m in acts):
                out.append(s)
    return out


def _chains(subs: Sequence[SubspaceQ], full: SubspaceQ) -> list[list[SubspaceQ]]:
    """Strictly decreasing chains starting at the whole space, nonzero members only."""
    proper = [s for s in subs if not s.is_zero() and s != full]
    out = []

    def grow(chain):
        out.append(list(chain))
        last = chain[-1]
        for s in proper:
            if s.dim < last.dim and contains(last, s):
                grow(chain + [s])

    grow([full])
    return out


def enumerate_filtrations(rep: Rep, fan, ray: int, lo: int, hi: int, tags=None) -> list[FiltrationObject]:
    """All objects with null filtrations off ``ray`` and a standard transversal filtration on it
    whose steps lie in degrees lo..hi."""
    tau = fan.ray_coweights[ray]
    full = SubspaceQ.full(rep.dim)
    out = []
    for chain in _chains(standard_subspaces(rep, tau), full):
        for degs in itertools.combinations(range(lo, hi + 1), len(chain)):
            filt = Filtration.from_steps(rep.dim, list(zip(degs, chain)))
            fs = [Filtration.null(rep.dim)] * len(fan.rays)
            fs[ray] = filt
            obj = FiltrationObject(rep, fan, tuple(fs), tuple(tags or ()))
            if validate(obj).klass == CLASS_C:
                out.append(obj)
    return out


def pgl2_datum() -> RootDatum:
    return build_root_datum(CartanType.parse("A1"), "adjoint")


@dataclass
class ClassifiedObject:
    obj: FiltrationObject
    table: list[tuple[int, dict]]

    def jumps(self) -> dict[tuple[int, ...], int]:
        """For each weight, the largest degree whose step contains it."""
        out: dict[tuple[int, ...], int] = {}
        for d, ch in self.table:
            for w in ch:
                out[w] = d
        return out

    def to_json(self) -> dict:
        return {
            "object": self.obj.to_json(),
            "character_table": [
                [d, {",".join(map(str, w)): k for w, k in ch.items()}] for d, ch in self.table
            ],
        }


def classify_pgl2(n: int, max_gap: int = 2) -> list[ClassifiedObject]:
    """Objects on the rank-n irreducible fiber over the wonderful compactification of PGL2,
    one per class up to degree shift, normalized so that F(0) = V and F(1) != V."""
    if n < 1:
        raise ValueError("rank must be at least 1")
    datum = pgl2_datum()
    fan = sigma0(datum)
    rep = sl2_irrep(datum, n - 1)
    chi = datum.central_character(rep.weights[0])
    tags = (chi,) * rep.dim
    tau = fan.ray_coweights[0]
    full = SubspaceQ.full(rep.dim)
    reps: list[FiltrationObject] = []
    for chain in _chains(standard_subspaces(rep, tau), full):
        for gaps in itertools.product(range(1, max_gap + 1), repeat=len(chain) - 1):
            degs = [0]
            for g in gaps:
                degs.append(degs[-1] + g)
            filt = Filtration.from_steps(rep.dim, list(zip(degs, chain)))
            obj = FiltrationObject(rep, fan, (filt,), tags)
            if validate(obj).klass != CLASS_C:
                continue
            if any(is_isomorphic(obj, other) for other in reps):
                continue
            reps.append(obj)
    reps.sort(key=lambda o: o.filtrations[0].dims())
    return [ClassifiedObject(o, character_table(o, 0)) for o in reps]


# jump degree of each weight (alpha, 0, -alpha) in the four rank-three tables
PGL2_RANK3_TABLES = {
    "sl2 (x) O": {(2,): 0, (0,): 0, (-2,): 0},
    "O (x) sl2": {(2,): 1, (0,): 0, (-2,): -1},
    "TX": {(2,): 1, (0,): 1, (-2,): 0},
    "T*X": {(2,): 0, (0,): -1, (-2,): -1},
}


def normalized_jumps(jumps: dict) -> tuple:
    low = min(jumps.values())
    return tuple(sorted((w, d - low) for w, d in jumps.items()))


def match_rank3_tables(classes: Sequence[ClassifiedObject]) -> dict[str, int]:
    """Index of the class matching each named table up to shift (-1 when absent)."""
    out = {}
    for name, table in PGL2_RANK3_TABLES.items():
        key = normalized_jumps(table)
        out[name] = next((k for k, c in enumerate(classes) if normalized_jumps(c.jumps()) == key), -1)
    return out


# ---------------------------------------------------------------------------
# splitting
# ---------------------------------------------------------------------------


@dataclass
class SplitDecomposition:
    pieces: list[FiltrationObject]
    basis: MatrixQ  # rows are the new basis vectors in old coordinates

    def to_json(self) -> dict:
        return {
            "pieces": [p.to_json() for p in self.pieces],
            "basis": [[str(x) for x in r] for r in self.basis],
        }


@dataclass
class SplitAbsent:
    witness: str


_MIN_DIM = {"A": lambda r: r + 1, "B": lambda r: 2 * r + 1, "C": lambda r: 2 * r, "D": lambda r: 2 * r}
# B2 = C2 and D3 = A3 fall below the generic formulas
_MIN_DIM_EXC = {("E", 6): 27, ("E", 7): 56, ("E", 8): 248, ("F", 4): 26, ("G", 2): 7, ("B", 2): 4, ("D", 3): 4}


def minimal_rep_dim(family: str, r: int | None = None) -> int:
    """Smallest dimension of a nontrivial representation of a simply connected simple group."""
    if r is None:
        ct = CartanType.parse(family)
        if len(ct.factors) != 1 or ct.torus_rank:
            raise ValueError(f"{family} is not a simple type")
        family, r = ct.factors[0]
    CartanType(((family, r),), 0)
    if (family, r) in _MIN_DIM_EXC:
        return _MIN_DIM_EXC[(family, r)]
    if family in _MIN_DIM:
        return _MIN_DIM[family](r)
    raise ValueError(f"unknown type {family}{r}")


def split_check(obj: FiltrationObject) -> SplitDecomposition | SplitAbsent:
    """Rank-one decomposition when the semisimple part acts trivially on the fiber."""
    if not is_sigma0(obj.fan):
        raise ObjectError("splitting is decided over the co-chamber fan")
    rep = obj.rep
    for name, gens in (("e", rep.e), ("f", rep.f)):
        for i, m in enumerate(gens):
            if any(any(r) for r in m):
                return SplitAbsent(f"{name}{i + 1} acts nontrivially")
    blocks: dict[tuple, list[int]] = {}
    for i, (w, t) in enumerate(zip(rep.weights, obj.tags)):
        blocks.setdefault((w, t), []).append(i)
    vectors = []
    info = []
    for (w, t), idx in sorted(blocks.items()):
        blk = SubspaceQ.coordinate(obj.dim, idx)
        family = [blk]
        for f in obj.filtrations:
            family.extend(intersect(s, blk) for s in f.subspaces)
        ab = common_adapted_basis(family)
        if ab is None:
            raise ObjectError("filtrations admit no common adapted basis")
        for v in ab.vectors:
            vectors.append(v)
            info.append((w, t))
    pieces = []
    z = zeros(1, 1)
    for v, (w, t) in zip(vectors, info):
        line = Rep(rep.datum, (w,), (z,) * len(rep.e), (z,) * len(rep.f))
        fs = []
        for f in obj.filtrations:
            degs = [d for d, s in f.steps if s.contains_vector(v)]
            fs.append(Filtration.from_steps(1, [(max(degs), SubspaceQ.full(1))] if degs else []))
        pieces.append(FiltrationObject(line, obj.fan, tuple(fs), (t,)))
    return SplitDecomposition(pieces, mat(vectors))


def reassemble(dec: SplitDecomposition, dim: int) -> list[Filtration]:
    """Filtrations of the direct sum of the pieces, written back in the original coordinates."""
    nrays = len(dec.pieces[0].filtrations) if dec.pieces else 0
    out = []
    for i in range(nrays):
        degrees = sorted({d for p in dec.pieces for d in p.filtrations[i].degrees})
        pairs = []
        for d in degrees:
            vecs = [v for v, p in zip(dec.basis, dec.pieces) if not p.filtrations[i].at(d).is_zero()]
            pairs.append((d, SubspaceQ.span(dim, vecs)))
        out.append(Filtration.from_steps(dim, pairs))
    return out


# ---------------------------------------------------------------------------
# Kostant conditions
# ---------------------------------------------------------------------------


@dataclass
class KostantReport:
    convergence: dict[tuple[int, tuple[int, ...]], bool] = field(default_factory=dict)
    maximality: dict[tuple[int, tuple[int, ...]], bool] = field(default_factory=dict)

    @property
    def converges(self) -> bool:
        return all(self.convergence.values())

    @property
    def maximal(self) -> bool:
        return all(self.maximality.values())

    @property
    def ok(self) -> bool:
        return self.converges and self.maximal

    def to_json(self) -> dict:
        def fmt(d):
            return {f"{i}:{','.join(map(str, w))}": v for (i, w), v in sorted(d.items())}

        return {
            "ok": self.ok,
            "convergence": fmt(self.convergence),
            "maximality": fmt(self.maximality),
        }


def _check_kostant_setting(obj: FiltrationObject) -> None:
    d = obj.datum
    if not d.is_adjoint or not is_sigma0(obj.fan):
        raise ObjectError("Kostant conditions are stated over the co-chamber fan of an adjoint datum")
    if any(not d.in_weight_lattice(w) for w in obj.rep.weights):
        raise ObjectError("Kostant conditions need a trivial central character")


def kostant_check(obj: FiltrationObject) -> KostantReport:
    """Per ray and weight: convergence V^l ∩ F(floor(p/2)+1) = 0 and maximality V^l ⊆ F(floor(p/2))."""
    _check_kostant_setting(obj)
    rep = KostantReport()
    for i, tau in enumerate(obj.fan.ray_coweights):
        f = obj.filtrations[i]
        for w, idx in sorted(obj.rep.weight_blocks.items()):
            block = SubspaceQ.coordinate(obj.dim, idx)
            half = floor(Fraction(obj.datum.pairing(tau, w)) / 2)
            rep.convergence[(i, w)] = intersect(block, f.at(half + 1)).is_zero()
            rep.maximality[(i, w)] = contains(f.at(half), block)
    return rep


def kostant_embedding(obj: FiltrationObject) -> Morphism | None:
    """An injective morphism into the canonical filtration of the same representation."""
    from .filtobj import f_can

    if not kostant_check(obj).converges:
        raise ObjectError("object violates the convergence condition")
    target = f_can(obj.rep, obj.fan)
    target = FiltrationObject(target.rep, target.fan, target.filtrations, obj.tags)
    ident = mat([[Fraction(int(i == j)) for j in range(obj.dim)] for i in range(obj.dim)])
    cand = Morphism(obj, target, ident)
    if is_c_morphism(cand):
        return cand
    m = _invertible_in(hom_c(obj, target), obj.dim)
    return Morphism(obj, target, m) if m is not None else None
