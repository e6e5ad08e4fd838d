"""Finite-dimensional representations given by weight bases and Chevalley generators.

A :class:`Rep` stores, for each simple root ``alpha_i``, the matrices of the
raising operator ``e_i`` and the lowering operator ``f_i`` acting on column
vectors in a basis of weight vectors.
"""

from __future__ import annotations

import itertools
import os
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Sequence

from .exactla import (
    MatrixQ,
    SubspaceQ,
    block_diag,
    commutator,
    identity,
    intersect,
    is_zero_matrix,
    kron,
    mat,
    matadd,
    matvec,
    nullspace,
    zeros,
)
from .rootdata import RootDatum, Root, Weight


class RepError(ValueError):
    pass


def max_dim() -> int:
    return int(os.environ.get("EQUIBUNDLE_MAX_DIM", "512"))


def _check_dim(n: int) -> None:
    if n > max_dim():
        raise RepError(f"representation dimension {n} exceeds EQUIBUNDLE_MAX_DIM={max_dim()}")


@dataclass(frozen=True, eq=False)
class Rep:
    datum: RootDatum
    weights: tuple[Weight, ...]
    e: tuple[MatrixQ, ...]
    f: tuple[MatrixQ, ...]
    labels: tuple[str, ...] | None = None

    @property
    def dim(self) -> int:
        return len(self.weights)

    @cached_property
    def weight_blocks(self) -> dict[Weight, tuple[int, ...]]:
        blocks: dict[Weight, list[int]] = defaultdict(list)
        for i, w in enumerate(self.weights):
            blocks[w].append(i)
        return {w: tuple(ix) for w, ix in blocks.items()}

    def weight_space(self, w: Weight) -> SubspaceQ:
        return SubspaceQ.coordinate(self.dim, self.weight_blocks.get(tuple(w), ()))

    @cached_property
    def character(self) -> Counter:
        return Counter(self.weights)

    def central_characters(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.datum.central_character(w) for w in self.weights)

    @property
    def central_character(self) -> tuple[int, ...] | None:
        """Class of the weights in X*(T~)/X*(T) if all weights share one coset."""
        chars = set(self.central_characters())
        if len(chars) > 1:
            return None
        return chars.pop() if chars else self.datum.trivial_character

    def is_semisimple_trivial(self) -> bool:
        return all(is_zero_matrix(m) for m in self.e + self.f)

    def root_action(self, alpha: Root) -> MatrixQ:
        """Matrix of e_alpha, built as left-normed commutators of simple generators."""
        alpha = tuple(alpha)
        cache = self.__dict__.setdefault("_root_cache", {})
        if alpha in cache:
            return cache[alpha]
        seq = self.datum.decompose_root(alpha)
        gens = self.e if sum(alpha) > 0 else self.f
        m = gens[seq[0]]
        for i in seq[1:]:
            m = commutator(gens[i], m)
        cache[alpha] = m
        return m

    def to_json(self) -> dict:
        out = {
            "weights": [list(w) for w in self.weights],
            "generators": {},
        }
        for i in range(len(self.e)):
            out["generators"][f"e{i + 1}"] = [[str(x) for x in r] for r in self.e[i]]
            out["generators"][f"f{i + 1}"] = [[str(x) for x in r] for r in self.f[i]]
        if self.labels:
            out["labels"] = list(self.labels)
        return out


def check_rep(rep: Rep) -> list[str]:
    """Return the list of violated Rep invariants (empty when valid)."""
    problems = []
    d = rep.datum
    n = d.ss_rank
    if len(rep.e) != n or len(rep.f) != n:
        return [f"expected {n} raising and lowering matrices"]
    for w in rep.weights:
        if len(w) != d.rank:
            return [f"weight {w} has wrong length (expected {d.rank})"]
    dim = rep.dim
    for i in range(n):
        shift = d.root_to_weight(d.simple_roots[i])
        for name, m, sgn in (("e", rep.e[i], 1), ("f", rep.f[i], -1)):
            if len(m) != dim or any(len(r) != dim for r in m):
                problems.append(f"{name}{i + 1} is not {dim}x{dim}")
                continue
            for r in range(dim):
                for c in range(dim):
                    if m[r][c]:
                        want = tuple(x + sgn * s for x, s in zip(rep.weights[c], shift))
                        if rep.weights[r] != want:
                            problems.append(f"{name}{i + 1} maps weight {rep.weights[c]} outside {want}")
                            break
    if problems:
        return problems
    for i in range(n):
        for j in range(n):
            h = commutator(rep.e[i], rep.f[j])
            for r in range(dim):
                for c in range(dim):
                    want = Fraction(rep.weights[r][i]) if (i == j and r == c) else Fraction(0)
                    if h[r][c] != want:
                        problems.append(f"[e{i + 1}, f{j + 1}] does not act by the expected scalar")
                        break
                else:
                    continue
                break
    return problems


def validated(rep: Rep) -> Rep:
    problems = check_rep(rep)
    if problems:
        raise RepError("; ".join(problems))
    return rep


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def trivial_rep(datum: RootDatum, dim: int = 1, torus_weight: Sequence[int] | None = None) -> Rep:
    w = tuple([0] * datum.ss_rank) + tuple(torus_weight or [0] * datum.cartan_type.torus_rank)
    z = zeros(dim, dim)
    return Rep(datum, (w,) * dim, (z,) * datum.ss_rank, (z,) * datum.ss_rank)


def _factor_offsets(datum: RootDatum) -> list[tuple[str, int, int]]:
    out = []
    off = 0
    for fam, r in datum.cartan_type.factors:
        out.append((fam, r, off))
        off += r
    return out


def _embed(datum: RootDatum, offset: int, local_weights, local_e, local_f) -> Rep:
    """Place a representation of one simple factor into the whole datum."""
    dim = len(local_weights)
    z = zeros(dim, dim)
    weights = []
    for lw in local_weights:
        w = [0] * datum.rank
        for k, x in enumerate(lw):
            w[offset + k] = x
        weights.append(tuple(w))
    e = [z] * datum.ss_rank
    f = [z] * datum.ss_rank
    for k in range(len(local_e)):
        e[offset + k] = local_e[k]
        f[offset + k] = local_f[k]
    return Rep(datum, tuple(weights), tuple(e), tuple(f))


def sl2_irrep(datum: RootDatum, n: int, index: int | None = None) -> Rep:
    """Irreducible module of highest weight n*varpi for an A1 factor.

    Basis v_0..v_n of weights n-2k; f v_k = v_{k+1}, e v_k = k(n-k+1) v_{k-1}.
    """
    if n < 0:
        raise RepError("highest weight must be nonnegative")
    if index is None:
        index = next((off for fam, r, off in _factor_offsets(datum) if fam == "A" and r == 1), None)
        if index is None:
            raise RepError("datum has no A1 factor")
    _check_dim(n + 1)
    e = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    f = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    for k in range(n + 1):
        if k >= 1:
            e[k - 1][k] = Fraction(k * (n - k + 1))
        if k < n:
            f[k + 1][k] = Fraction(1)
    return _embed(datum, index, [(n - 2 * k,) for k in range(n + 1)], [mat(e)], [mat(f)])


def _vector_rep_A(r: int):
    """Weights and generators of the vector representation of sl_{r+1}."""
    n = r + 1
    weights = []
    for k in range(n):
        w = [0] * r
        if k < r:
            w[k] += 1
        if k >= 1:
            w[k - 1] -= 1
        weights.append(tuple(w))
    es, fs = [], []
    for i in range(r):
        e = [[Fraction(0)] * n for _ in range(n)]
        f = [[Fraction(0)] * n for _ in range(n)]
        e[i][i + 1] = Fraction(1)
        f[i + 1][i] = Fraction(1)
        es.append(mat(e))
        fs.append(mat(f))
    return weights, es, fs


def _wedge_action(m: MatrixQ, subsets: list[tuple[int, ...]]) -> MatrixQ:
    index = {s: k for k, s in enumerate(subsets)}
    size = len(subsets)
    out = [[Fraction(0)] * size for _ in range(size)]
    n = len(m)
    for col, s in enumerate(subsets):
        for pos, j in enumerate(s):
            for i in range(n):
                x = m[i][j]
                if not x:
                    continue
                t = list(s)
                t[pos] = i
                if len(set(t)) < len(t):
                    continue
                # sign of the sorting permutation
                sign = 1
                for a in range(len(t)):
                    for b in range(a + 1, len(t)):
                        if t[a] > t[b]:
                            sign = -sign
                out[index[tuple(sorted(t))]][col] += sign * x
    return mat(out)


def fundamental_rep_A(datum: RootDatum, i: int, offset: int | None = None) -> Rep:
    """i-th exterior power of the vector representation of a type-A factor."""
    factors = [(r, off) for fam, r, off in _factor_offsets(datum) if fam == "A"]
    if not factors:
        raise RepError("datum has no type A factor")
    if offset is None:
        r, offset = factors[0]
    else:
        r = next(rr for rr, off in factors if off == offset)
    if not 1 <= i <= r:
        raise RepError(f"fundamental index {i} out of range 1..{r}")
    _check_dim(comb(r + 1, i))
    vw, ve, vf = _vector_rep_A(r)
    subsets = list(itertools.combinations(range(r + 1), i))
    weights = [tuple(sum(vw[j][k] for j in s) for k in range(r)) for s in subsets]
    e = [_wedge_action(m, subsets) for m in ve]
    f = [_wedge_action(m, subsets) for m in vf]
    return _embed(datum, offset, weights, e, f)


def tensor(a: Rep, b: Rep) -> Rep:
    if a.datum != b.datum:
        raise RepError("datum mismatch")
    _check_dim(a.dim * b.dim)
    ia, ib = identity(a.dim), identity(b.dim)
    weights = tuple(tuple(x + y for x, y in zip(wa, wb)) for wa in a.weights for wb in b.weights)
    e = tuple(matadd(kron(ea, ib), kron(ia, eb)) for ea, eb in zip(a.e, b.e))
    f = tuple(matadd(kron(fa, ib), kron(ia, fb)) for fa, fb in zip(a.f, b.f))
    return Rep(a.datum, weights, e, f)


def direct_sum_reps(a: Rep, b: Rep) -> Rep:
    if a.datum != b.datum:
        raise RepError("datum mismatch")
    return Rep(
        a.datum,
        a.weights + b.weights,
        tuple(block_diag(x, y) for x, y in zip(a.e, b.e)),
        tuple(block_diag(x, y) for x, y in zip(a.f, b.f)),
    )


def sym_power(rep: Rep, k: int) -> Rep:
    """k-th symmetric power; basis = sorted multi-indices."""
    monos = list(itertools.combinations_with_replacement(range(rep.dim), k))
    _check_dim(len(monos))
    index = {m: i for i, m in enumerate(monos)}

    def act(m: MatrixQ) -> MatrixQ:
        out = [[Fraction(0)] * len(monos) for _ in monos]
        for col, mono in enumerate(monos):
            for pos, j in enumerate(mono):
                for i in range(rep.dim):
                    x = m[i][j]
                    if x:
                        t = tuple(sorted(mono[:pos] + (i,) + mono[pos + 1:]))
                        out[index[t]][col] += x
        return mat(out)

    weights = tuple(
        tuple(sum(rep.weights[j][c] for j in mono) for c in range(rep.datum.rank)) if mono else (0,) * rep.datum.rank
        for mono in monos
    )
    return Rep(rep.datum, weights, tuple(act(m) for m in rep.e), tuple(act(m) for m in rep.f))


def _in_basis(pivots: Sequence[int], v: Sequence[Fraction]) -> list[Fraction]:
    """Coordinates of v (known to lie in the span) against RREF rows with these pivots."""
    return [v[p] for p in pivots]


def highest_weight_vectors(rep: Rep, w: Weight) -> tuple:
    idx = rep.weight_blocks.get(tuple(w), ())
    if not idx:
        return ()
    eqs = []
    for e in rep.e:
        for r in range(rep.dim):
            row = [e[r][c] for c in idx]
            if any(row):
                eqs.append(row)
    ker = nullspace(eqs, len(idx)) if eqs else identity(len(idx))
    out = []
    for k in ker:
        v = [Fraction(0)] * rep.dim
        for c, x in zip(idx, k):
            v[c] = x
        out.append(tuple(v))
    return tuple(out)


def cyclic_submodule(rep: Rep, generators: Sequence[Sequence[Fraction]]) -> SubspaceQ:
    """Smallest subspace containing the given weight vectors and stable under all e_i, f_i."""
    span = SubspaceQ(rep.dim, tuple(tuple(g) for g in generators))
    queue = list(span.basis)
    while queue:
        v = queue.pop()
        for m in rep.e + rep.f:
            w = matvec(m, v)
            if any(w) and not span.contains_vector(w):
                span = SubspaceQ(rep.dim, span.basis + (w,))
                queue.append(w)
    return span


def restrict(rep: Rep, sub: SubspaceQ) -> Rep:
    """Representation on an invariant subspace spanned by weight vectors, with its own weight basis."""
    per_weight: dict[Weight, SubspaceQ] = {}
    for w, idx in rep.weight_blocks.items():
        piece = intersect(sub, SubspaceQ.coordinate(rep.dim, idx))
        if not piece.is_zero():
            per_weight[w] = piece
    if sum(p.dim for p in per_weight.values()) != sub.dim:
        raise RepError("subspace is not spanned by weight vectors")
    order = sorted(per_weight, key=lambda w: tuple(-x for x in w))
    basis = []
    weights = []
    loc: dict[Weight, tuple[int, int]] = {}
    for w in order:
        loc[w] = (len(basis), per_weight[w].dim)
        basis.extend(per_weight[w].basis)
        weights.extend([w] * per_weight[w].dim)
    dim = len(basis)

    def coords(v: Sequence[Fraction], w: Weight) -> list[Fraction]:
        piece = per_weight.get(w)
        if piece is None:
            if any(v):
                raise RepError("subspace is not invariant")
            return []
        if not piece.contains_vector(v):
            raise RepError("subspace is not invariant")
        return _in_basis(piece.pivots, v)

    def restrict_matrix(m: MatrixQ, shift: Weight) -> MatrixQ:
        out = [[Fraction(0)] * dim for _ in range(dim)]
        for col, b in enumerate(basis):
            img = matvec(m, b)
            if not any(img):
                continue
            tw = tuple(x + s for x, s in zip(weights[col], shift))
            start, _ = loc.get(tw, (0, 0))
            for k, x in enumerate(coords(img, tw)):
                out[start + k][col] = x
        return mat(out)

    d = rep.datum
    shifts = [d.root_to_weight(a) for a in d.simple_roots]
    e = tuple(restrict_matrix(m, s) for m, s in zip(rep.e, shifts))
    f = tuple(restrict_matrix(m, tuple(-x for x in s)) for m, s in zip(rep.f, shifts))
    sub_rep = Rep(d, tuple(weights), e, f)
    object.__setattr__(sub_rep, "_embedding", tuple(basis))
    return sub_rep


def embedding(rep: Rep):
    """Basis vectors of a restricted rep in ambient coordinates (None when not a restriction)."""
    return getattr(rep, "_embedding", None)


def highest_weight_submodule(ambient: Rep, lam: Weight) -> Rep:
    """Cyclic submodule generated by a highest-weight vector of weight lam."""
    lam = tuple(lam)
    if not ambient.datum.is_dominant(lam):
        raise RepError(f"{lam} is not dominant")
    hws = highest_weight_vectors(ambient, lam)
    if not hws:
        raise RepError(f"no highest-weight vector of weight {lam}")
    sub = cyclic_submodule(ambient, [hws[0]])
    rep = restrict(ambient, sub)
    expected = weyl_dim(ambient.datum, lam)
    if rep.dim != expected:
        raise RepError(f"submodule has dimension {rep.dim}, Weyl dimension is {expected}")
    return rep


def irrep(datum: RootDatum, lam: Sequence[int]) -> Rep:
    """Irreducible module V_lam for data whose simple factors are all of type A.

    Built inside the tensor product over factors of Sym^{a_i}(wedge^i V).
    """
    lam = tuple(int(x) for x in lam)
    if len(lam) != datum.rank:
        raise RepError(f"weight {lam} has wrong length")
    if not datum.is_dominant(lam):
        raise RepError(f"{lam} is not dominant")
    _check_dim(weyl_dim(datum, lam))
    torus = lam[datum.ss_rank:]
    current = trivial_rep(datum, 1, torus)
    for fam, r, off in _factor_offsets(datum):
        local = lam[off:off + r]
        if not any(local):
            continue
        if fam != "A":
            raise RepError(f"irreducible construction for type {fam}{r} needs explicit generator matrices")
        if r == 1:
            piece = sl2_irrep(datum, local[0], off)
        else:
            piece = trivial_rep(datum)
            for i, a in enumerate(local, start=1):
                if a:
                    piece = tensor(piece, sym_power(fundamental_rep_A(datum, i, off), a))
            piece = highest_weight_submodule(piece, _embed_weight(datum, off, local))
        current = tensor(current, piece)
    if current.dim != weyl_dim(datum, lam):
        current = highest_weight_submodule(current, lam)
    return current


def _embed_weight(datum: RootDatum, off: int, local) -> Weight:
    w = [0] * datum.rank
    for k, x in enumerate(local):
        w[off + k] = x
    return tuple(w)


def adjoint_rep(datum: RootDatum) -> Rep:
    """Adjoint representation for data whose simple factors are all of type A.

    Basis: positive root vectors E_ij, then the coroot vectors H_i, then the
    negative root vectors, then torus directions.  Labels name each basis
    vector (``e[1,0]``, ``H1`` ...).
    """
    blocks = []
    labels: list[str] = []
    for fam, r, off in _factor_offsets(datum):
        if fam != "A":
            raise RepError(f"adjoint construction implemented for type A factors only, got {fam}{r}")
        n = r + 1
        pos = [(i, j) for i in range(n) for j in range(i + 1, n)]
        pos.sort(key=lambda ij: (ij[1] - ij[0], ij))
        elems = [("E", ij) for ij in pos] + [("H", k) for k in range(r)] + [("E", (j, i)) for i, j in pos]

        def as_matrix(el):
            m = [[Fraction(0)] * n for _ in range(n)]
            kind, x = el
            if kind == "E":
                m[x[0]][x[1]] = Fraction(1)
            else:
                m[x][x] = Fraction(1)
                m[x + 1][x + 1] = Fraction(-1)
            return m

        def coords(m):
            out = []
            for kind, x in elems:
                if kind == "E":
                    out.append(m[x[0]][x[1]])
                else:
                    out.append(sum((m[k][k] for k in range(x + 1)), Fraction(0)))
            return out

        def ad(x):
            cols = []
            for el in elems:
                y = as_matrix(el)
                xy = [[sum(x[a][c] * y[c][b] for c in range(n)) for b in range(n)] for a in range(n)]
                yx = [[sum(y[a][c] * x[c][b] for c in range(n)) for b in range(n)] for a in range(n)]
                cols.append(coords([[xy[a][b] - yx[a][b] for b in range(n)] for a in range(n)]))
            return mat(list(zip(*cols)))

        es, fs = [], []
        for i in range(r):
            es.append(ad(as_matrix(("E", (i, i + 1)))))
            fs.append(ad(as_matrix(("E", (i + 1, i)))))
        local_weights = []
        for kind, x in elems:
            if kind == "H":
                local_weights.append((0,) * r)
                labels.append(f"H{off + x + 1}")
            else:
                i, j = x
                root = [0] * datum.ss_rank
                sgn = 1 if i < j else -1
                for k in range(min(i, j), max(i, j)):
                    root[off + k] = sgn
                w = datum.root_to_weight(tuple(root))
                local_weights.append(tuple(w[off:off + r]))
                labels.append("e[" + ",".join(str(c) for c in root) + "]")
        blocks.append(_embed(datum, off, local_weights, es, fs))
    t = datum.cartan_type.torus_rank
    rep = trivial_rep(datum, 0)
    for b in blocks:
        rep = direct_sum_reps(rep, b)
    if t:
        rep = direct_sum_reps(rep, trivial_rep(datum, t))
        labels += [f"t{k + 1}" for k in range(t)]
    return Rep(datum, rep.weights, rep.e, rep.f, tuple(labels))


def labelled_vector(rep: Rep, label: str) -> tuple[Fraction, ...]:
    if not rep.labels or label not in rep.labels:
        raise RepError(f"no basis vector labelled {label!r}")
    k = rep.labels.index(label)
    return tuple(Fraction(int(i == k)) for i in range(rep.dim))


def root_vector_label(root: Root) -> str:
    return "e[" + ",".join(str(c) for c in root) + "]"


# ---------------------------------------------------------------------------
# multiplicity oracles
# ---------------------------------------------------------------------------


def weyl_dim(datum: RootDatum, lam: Sequence[int]) -> int:
    if not datum.is_dominant(lam):
        raise RepError(f"{tuple(lam)} is not dominant")
    num = Fraction(1)
    rho = datum.rho
    lr = tuple(l + r for l, r in zip(lam, rho))
    for alpha in datum.positive_roots:
        num *= datum.weight_coroot(lr, alpha) / datum.weight_coroot(rho, alpha)
    assert num.denominator == 1
    return int(num)


def freudenthal(datum: RootDatum, lam: Sequence[int]) -> dict[Weight, int]:
    """Weight multiplicities of V_lam by Freudenthal's recursion."""
    lam = tuple(int(x) for x in lam)
    if not datum.is_dominant(lam):
        raise RepError(f"{lam} is not dominant")
    rho = datum.rho
    pos = datum.positive_roots
    root_w = {a: datum.root_to_weight(a) for a in pos}
    simple_w = [datum.root_to_weight(a) for a in datum.simple_roots]

    def add(u, v, k=1):
        return tuple(x + k * y for x, y in zip(u, v))

    lr = add(lam, rho)
    top = datum.form_weights(lr, lr)
    mult: dict[Weight, int] = {lam: 1}
    layer = [lam]
    while layer:
        cands = sorted({add(mu, s, -1) for mu in layer for s in simple_w} - set(mult), reverse=True)
        nxt = []
        for mu in cands:
            mr = add(mu, rho)
            denom = top - datum.form_weights(mr, mr)
            if denom <= 0:
                continue
            total = Fraction(0)
            for nu, m in mult.items():
                diff = tuple(x - y for x, y in zip(nu, mu))
                for a in pos:
                    aw = root_w[a]
                    k = next((Fraction(x, y) for x, y in zip(diff, aw) if y), None)
                    if k and k > 0 and k.denominator == 1 and all(x == k * y for x, y in zip(diff, aw)):
                        total += m * datum.form_weights(nu, aw)
            val = 2 * total / denom
            if val:
                assert val.denominator == 1 and val > 0, (mu, val)
                mult[mu] = int(val)
                nxt.append(mu)
        layer = nxt
    return mult
