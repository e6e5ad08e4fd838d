"""Exact linear algebra over the rationals.

Matrices are tuples of tuples of :class:`fractions.Fraction`.  Subspaces are
kept in reduced row-echelon form so that equality of subspaces is structural
equality of their bases.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]
MatrixQ = tuple[Vector, ...]


class AmbientMismatch(ValueError):
    pass


class Indeterminate(RuntimeError):
    """Raised when the brute-force lattice closure exceeds its element cap."""


def to_q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def vec(xs: Iterable) -> Vector:
    return tuple(to_q(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> MatrixQ:
    return tuple(vec(r) for r in rows)


def zeros(nrows: int, ncols: int) -> MatrixQ:
    z = Fraction(0)
    return tuple((z,) * ncols for _ in range(nrows))


def identity(n: int) -> MatrixQ:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )


def transpose(m: Sequence[Sequence[Fraction]], ncols: int | None = None) -> MatrixQ:
    if not m:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*m))


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> MatrixQ:
    if not a:
        return ()
    bt = transpose(b) if b else ()
    inner = len(b)
    if inner == 0:
        return tuple(() for _ in a)
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        out.append(tuple(sum((x * col[k] for k, x in nz), Fraction(0)) for col in bt))
    return tuple(out)


def matvec(a: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    nz = [(k, x) for k, x in enumerate(v) if x]
    return tuple(sum((row[k] * x for k, x in nz), Fraction(0)) for row in a)


def matadd(a, b, scale_b=1) -> MatrixQ:
    s = to_q(scale_b)
    return tuple(tuple(x + s * y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def commutator(a, b) -> MatrixQ:
    return matadd(matmul(a, b), matmul(b, a), -1)


def is_zero_matrix(m) -> bool:
    return all(not x for row in m for x in row)


def kron(a, b) -> MatrixQ:
    rows = []
    for ra in a:
        for rb in b:
            rows.append(tuple(x * y for x in ra for y in rb))
    return tuple(rows)


def block_diag(a, b) -> MatrixQ:
    na = len(a)
    nb = len(b)
    z = Fraction(0)
    rows = [tuple(r) + (z,) * nb for r in a]
    rows += [(z,) * na + tuple(r) for r in b]
    return tuple(rows)


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r >= nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [x / piv for x in rows[r]]
        prow = rows[r]
        nzc = [k for k in range(c, ncols) if prow[k]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    ri = rows[i]
                    for k in nzc:
                        ri[k] -= f * prow[k]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref(m: Sequence[Sequence], ncols: int | None = None) -> MatrixQ:
    """Reduced row-echelon form with zero rows dropped."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    rows = [[to_q(x) for x in r] for r in m]
    red, _ = _rref_rows(rows, ncols)
    return tuple(tuple(r) for r in red)


def rref_full(m: Sequence[Sequence]) -> MatrixQ:
    """RREF padded with zero rows to the input shape."""
    ncols = len(m[0]) if m else 0
    red = rref(m, ncols)
    return red + zeros(len(m) - len(red), ncols)


def rank(m: Sequence[Sequence], ncols: int | None = None) -> int:
    return len(rref(m, ncols))


def determinant(m: Sequence[Sequence]) -> Fraction:
    n = len(m)
    rows = [[to_q(x) for x in r] for r in m]
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        piv = rows[c][c]
        det *= piv
        for i in range(c + 1, n):
            f = rows[i][c] / piv
            if f:
                for k in range(c, n):
                    rows[i][k] -= f * rows[c][k]
    return det


def nullspace(m: Sequence[Sequence], ncols: int) -> MatrixQ:
    """Basis (as rows, in RREF) of {x : m x = 0}."""
    red, pivots = _rref_rows([[to_q(x) for x in r] for r in m], ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return rref(basis, ncols) if basis else ()


def solve(a: Sequence[Sequence], b: Sequence) -> Vector | None:
    """One solution x of a x = b, or None when inconsistent."""
    ncols = len(a[0]) if a else 0
    aug = [[to_q(x) for x in row] + [to_q(y)] for row, y in zip(a, b)]
    red, pivots = _rref_rows(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return tuple(x)


def inverse(m: Sequence[Sequence]) -> MatrixQ:
    n = len(m)
    aug = [[to_q(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    red, pivots = _rref_rows(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(r[n:]) for r in red)


def primitive_integer(v: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector (same direction)."""
    q = [to_q(x) for x in v]
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in q), 1)
    ints = [int(x * den) for x in q]
    g = reduce(gcd, (abs(i) for i in ints), 0)
    if g == 0:
        return tuple(ints)
    return tuple(i // g for i in ints)


@dataclass(frozen=True)
class SubspaceQ:
    """A subspace of Q^n stored by its canonical RREF basis."""

    ambient_dim: int
    basis: MatrixQ = ()

    def __post_init__(self):
        object.__setattr__(self, "basis", rref(self.basis, self.ambient_dim) if self.basis else ())

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> "SubspaceQ":
        return cls(ambient_dim, tuple(vec(v) for v in vectors))

    @classmethod
    def zero(cls, ambient_dim: int) -> "SubspaceQ":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "SubspaceQ":
        return cls(ambient_dim, identity(ambient_dim))

    @classmethod
    def coordinate(cls, ambient_dim: int, indices: Iterable[int]) -> "SubspaceQ":
        rows = []
        for i in sorted(set(indices)):
            r = [Fraction(0)] * ambient_dim
            r[i] = Fraction(1)
            rows.append(tuple(r))
        return cls(ambient_dim, tuple(rows))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(r) if x) for r in self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def contains_vector(self, v: Sequence) -> bool:
        w = list(vec(v))
        for row, p in zip(self.basis, self.pivots):
            f = w[p]
            if f:
                for k in range(p, self.ambient_dim):
                    if row[k]:
                        w[k] -= f * row[k]
        return not any(w)

    def __le__(self, other: "SubspaceQ") -> bool:
        return contains(other, self)

    def image(self, m: Sequence[Sequence[Fraction]], target_dim: int | None = None) -> "SubspaceQ":
        """Image under the linear map with matrix m (acting on column vectors)."""
        n = len(m) if target_dim is None else target_dim
        return SubspaceQ(n, tuple(matvec(m, b) for b in self.basis))

    def complement_equations(self) -> MatrixQ:
        """Rows spanning the annihilator, so that v is in self iff eqs . v = 0."""
        return nullspace(self.basis, self.ambient_dim) if self.basis else identity(self.ambient_dim)

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.basis]


def _check_ambient(a: SubspaceQ, b: SubspaceQ) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise AmbientMismatch(f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")


def subspace_sum(a: SubspaceQ, b: SubspaceQ) -> SubspaceQ:
    _check_ambient(a, b)
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    return SubspaceQ(a.ambient_dim, a.basis + b.basis)


def intersect(a: SubspaceQ, b: SubspaceQ) -> SubspaceQ:
    """a ∩ b by the kernel method: solve x.A = y.B."""
    _check_ambient(a, b)
    n = a.ambient_dim
    if a.is_zero() or b.is_zero():
        return SubspaceQ.zero(n)
    if a.is_full():
        return b
    if b.is_full():
        return a
    # v in a ∩ b  iff  v in a and eqs_b . v = 0
    eqs = b.complement_equations()
    coeff_rows = matmul(eqs, transpose(a.basis))
    ker = nullspace(coeff_rows, a.dim)
    return SubspaceQ(n, tuple(matvec(transpose(a.basis), k) for k in ker))


def contains(a: SubspaceQ, b: SubspaceQ) -> bool:
    """True iff b ⊆ a."""
    _check_ambient(a, b)
    if b.dim > a.dim:
        return False
    return all(a.contains_vector(r) for r in b.basis)


# ---------------------------------------------------------------------------
# common adapted bases
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AdaptedBasis:
    vectors: tuple[Vector, ...]
    assignment: tuple[tuple[int, ...], ...]

    def spans(self, family: Sequence[SubspaceQ]) -> bool:
        if not self.vectors:
            return all(s.is_zero() for s in family)
        n = len(self.vectors[0])
        if rank(self.vectors, n) != len(self.vectors):
            return False
        for s, idx in zip(family, self.assignment):
            if SubspaceQ(n, tuple(self.vectors[i] for i in idx)) != s:
                return False
        return True


def _assign(vectors: Sequence[Vector], family: Sequence[SubspaceQ]) -> AdaptedBasis | None:
    assignment = []
    for s in family:
        idx = tuple(i for i, v in enumerate(vectors) if s.contains_vector(v))
        if len(idx) != s.dim:
            return None
        assignment.append(idx)
    ab = AdaptedBasis(tuple(vectors), tuple(assignment))
    return ab if ab.spans(family) else None


def _as_chains(family: Sequence[SubspaceQ]) -> list[list[SubspaceQ]] | None:
    """Partition a family into chains if it is a union of few totally ordered pieces.

    Greedy: sort by dimension descending, place each subspace in the first chain
    whose last element contains it.
    """
    chains: list[list[SubspaceQ]] = []
    for s in sorted(set(family), key=lambda s: (-s.dim, s.basis)):
        for ch in chains:
            if contains(ch[-1], s):
                ch.append(s)
                break
        else:
            chains.append([s])
    return chains


def _multigraded_basis(chains: Sequence[Sequence[SubspaceQ]], n: int) -> list[Vector] | None:
    """Lift bases of the multigraded pieces of a family of chains.

    Each chain is extended to V = c[0] ⊇ ... ⊇ c[L] and clamped with an
    implicit zero at level L+1.  Returns None when the graded dimensions do
    not add up to n.
    """
    full = SubspaceQ.full(n)
    zero = SubspaceQ.zero(n)
    levels = []
    for ch in chains:
        lv = [full] + [s for s in ch if s != full]
        levels.append(lv)
    k = len(levels)
    table: dict[tuple[int, ...], SubspaceQ] = {}

    def inter(idx: tuple[int, ...]) -> SubspaceQ:
        got = table.get(idx)
        if got is not None:
            return got
        for j, i in enumerate(idx):
            if i >= len(levels[j]):
                table[idx] = zero
                return zero
        nz = [j for j, i in enumerate(idx) if i > 0]
        if not nz:
            res = full
        else:
            j = nz[-1]
            prev = idx[:j] + (0,) + idx[j + 1:]
            res = intersect(inter(prev), levels[j][idx[j]])
        table[idx] = res
        return res

    total = 0
    lifted: list[Vector] = []
    for idx in itertools.product(*(range(len(lv)) for lv in levels)):
        v_n = inter(idx)
        if v_n.is_zero():
            continue
        lower = zero
        for j in range(k):
            up = idx[:j] + (idx[j] + 1,) + idx[j + 1:]
            lower = subspace_sum(lower, inter(up))
        d = v_n.dim - lower.dim
        if d <= 0:
            continue
        total += d
        if total > n:
            return None
        # complement of `lower` inside v_n, taken from v_n's RREF rows
        acc = lower
        for row in v_n.basis:
            if not acc.contains_vector(row):
                lifted.append(row)
                acc = subspace_sum(acc, SubspaceQ(n, (row,)))
                if acc.dim == v_n.dim:
                    break
    if total != n:
        return None
    return lifted


def common_adapted_basis(family: Sequence[SubspaceQ]) -> AdaptedBasis | None:
    """A basis B with B ∩ S spanning S for every S in the family, or None.

    The family is split into chains and decided by the multigraded dimension
    count; the lifted basis is verified before it is returned.
    """
    if not family:
        raise ValueError("family must be nonempty")
    n = family[0].ambient_dim
    for s in family:
        _check_ambient(family[0], s)
    if n == 0:
        return AdaptedBasis((), tuple(() for _ in family))
    chains = _as_chains(family)
    lifted = _multigraded_basis(chains, n)
    if lifted is None:
        return None
    return _assign(lifted, family)


def is_distributive_family(family: Sequence[SubspaceQ]) -> bool:
    return common_adapted_basis(family) is not None


# brute force -----------------------------------------------------------------


def lattice_closure(family: Sequence[SubspaceQ], cap: int = 10_000) -> list[SubspaceQ]:
    """Sublattice generated by the family under sum and intersection."""
    n = family[0].ambient_dim
    elems = {SubspaceQ.zero(n), SubspaceQ.full(n), *family}
    frontier = list(elems)
    seen = list(elems)
    while frontier:
        new = []
        for x in frontier:
            for y in seen:
                for z in (subspace_sum(x, y), intersect(x, y)):
                    if z not in elems:
                        elems.add(z)
                        new.append(z)
                        if len(elems) > cap:
                            raise Indeterminate(f"lattice closure exceeds {cap} elements")
        seen.extend(new)
        frontier = new
    return sorted(elems, key=lambda s: (s.dim, s.basis))


def brute_force_adapted_basis(family: Sequence[SubspaceQ], cap: int = 10_000) -> AdaptedBasis | None:
    """Decide by closing under sum/intersection and testing the distributive law.

    When distributive, a basis is built greedily from complements of the lower
    covers of join-irreducible elements.
    """
    n = family[0].ambient_dim
    if n == 0:
        return AdaptedBasis((), tuple(() for _ in family))
    # with an adapted basis every lattice element is a coordinate subspace,
    # so a closure with more than 2^n elements already rules one out
    bound = 2**n
    try:
        elems = lattice_closure(family, min(cap, bound))
    except Indeterminate:
        if bound <= cap:
            return None
        raise
    index = {s: i for i, s in enumerate(elems)}
    m = len(elems)
    join = [[0] * m for _ in range(m)]
    meet = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            join[i][j] = join[j][i] = index[subspace_sum(elems[i], elems[j])]
            meet[i][j] = meet[j][i] = index[intersect(elems[i], elems[j])]
    for x in range(m):
        mx = meet[x]
        for y in range(m):
            jy = join[y]
            for z in range(y + 1, m):
                if mx[jy[z]] != join[mx[y]][mx[z]]:
                    return None
    vectors: list[Vector] = []
    for i, s in enumerate(elems):
        below = [t for t in elems if t != s and contains(s, t)]
        if not below:
            continue
        maxima = [t for t in below if not any(u != t and contains(u, t) for u in below)]
        if len(maxima) != 1:
            continue
        lower = maxima[0]
        acc = lower
        for row in s.basis:
            if not acc.contains_vector(row):
                vectors.append(row)
                acc = subspace_sum(acc, SubspaceQ(n, (row,)))
    if len(vectors) != n:
        return None
    return _assign(vectors, family)


# ---------------------------------------------------------------------------
# integer Smith normal form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmithForm:
    """U @ A @ V = D with U, V unimodular and D diagonal (d1 | d2 | ...)."""

    diag: tuple[int, ...]
    U: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]
    shape: tuple[int, int] = field(default=(0, 0))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d)


def smith_normal_form(a: Sequence[Sequence[int]], ncols: int | None = None) -> SmithForm:
    rows = len(a)
    cols = ncols if ncols is not None else (len(a[0]) if a else 0)
    A = [[int(x) for x in r] for r in a]
    U = [[int(i == j) for j in range(rows)] for i in range(rows)]
    V = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, f):
        A[dst] = [x + f * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, f):
        for r in A:
            r[dst] += f * r[src]
        for r in V:
            r[dst] += f * r[src]

    t = 0
    while t < min(rows, cols):
        nz = [(abs(A[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, rows):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(t, i, -q)
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(t, j, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                bad = next(
                    ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if A[i][j] % A[t][t]),
                    None,
                )
                if bad is None:
                    break
                add_row(bad[0], t, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    diag = tuple(A[i][i] for i in range(min(rows, cols)))
    return SmithForm(diag, tuple(map(tuple, U)), tuple(map(tuple, V)), (rows, cols))


def int_inverse(m: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    inv = inverse(m)
    out = []
    for r in inv:
        if any(x.denominator != 1 for x in r):
            raise ValueError("matrix is not unimodular")
        out.append(tuple(int(x) for x in r))
    return tuple(out)


def in_integer_rowspan(basis: Sequence[Sequence[int]], v: Sequence) -> bool:
    """True iff v is an integer combination of the rows of basis."""
    if not basis:
        return all(to_q(x) == 0 for x in v)
    x = solve(transpose(mat(basis)), vec(v))
    if x is None:
        return False
    if rank(mat(basis)) == len(basis):
        return all(c.denominator == 1 for c in x)
    # dependent rows: reduce through the Smith form
    snf = smith_normal_form(basis)
    # v = y B  <=>  v V = (y U^-1) D
    vv = [sum(to_q(v[k]) * snf.V[k][j] for k in range(len(v))) for j in range(len(v))]
    for j, val in enumerate(vv):
        d = snf.diag[j] if j < len(snf.diag) else 0
        if d == 0:
            if val != 0:
                return False
        elif (val / d).denominator != 1:
            return False
    return True
