"""Root data of connected reductive groups.

Conventions
-----------
* Weights (elements of X*(T~)) are integer vectors in fundamental-weight
  coordinates for the semisimple factors, followed by torus-character
  coordinates.
* Coweights are rational vectors in fundamental-coweight coordinates followed
  by torus-cocharacter coordinates.  ``<w_i^v, alpha_j> = delta_ij`` holds by
  construction.
* Roots are integer vectors in simple-root coordinates.
* ``cartan[i][j] = <alpha_i^v, alpha_j>``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .exactla import (
    in_integer_rowspan,
    inverse,
    mat,
    matmul,
    primitive_integer,
    rank,
    smith_normal_form,
    transpose,
)

Weight = tuple[int, ...]
Coweight = tuple[Fraction, ...]
Root = tuple[int, ...]


class RootDatumError(ValueError):
    pass


_VALID = {
    "A": lambda r: r >= 1,
    "B": lambda r: r >= 2,
    "C": lambda r: r >= 2,
    "D": lambda r: r >= 3,
    "E": lambda r: r in (6, 7, 8),
    "F": lambda r: r == 4,
    "G": lambda r: r == 2,
}


def cartan_matrix(family: str, r: int) -> list[list[int]]:
    """Cartan matrix with entries <alpha_i^v, alpha_j> (Bourbaki numbering)."""
    if family not in _VALID or not _VALID[family](r):
        raise RootDatumError(f"invalid Cartan type {family}{r}")
    a = [[0] * r for _ in range(r)]
    for i in range(r):
        a[i][i] = 2
    if family in "ABCD":
        for i in range(r - 1):
            a[i][i + 1] = a[i + 1][i] = -1
        if family == "B":
            # alpha_r short: <alpha_{r-1}^v, alpha_r> = -1, <alpha_r^v, alpha_{r-1}> = -2
            a[r - 1][r - 2] = -2
        elif family == "C":
            a[r - 2][r - 1] = -2
        elif family == "D":
            a[r - 2][r - 1] = a[r - 1][r - 2] = 0
            a[r - 3][r - 1] = a[r - 1][r - 3] = -1
    elif family == "E":
        # Bourbaki: 1-3-4-5-6-(7-8), 2 attached to 4
        edges = [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)]
        edges += [(6, 7)] if r >= 7 else []
        edges += [(7, 8)] if r >= 8 else []
        for i, j in edges:
            a[i - 1][j - 1] = a[j - 1][i - 1] = -1
    elif family == "F":
        a[0][1] = a[1][0] = -1
        # alpha_3, alpha_4 short
        a[1][2] = -1
        a[2][1] = -2
        a[2][3] = a[3][2] = -1
    elif family == "G":
        # alpha_1 short
        a[0][1] = -3
        a[1][0] = -1
    return a


@dataclass(frozen=True)
class CartanType:
    factors: tuple[tuple[str, int], ...]
    torus_rank: int = 0

    def __post_init__(self):
        for fam, r in self.factors:
            if fam not in _VALID or not _VALID[fam](r):
                raise RootDatumError(f"invalid Cartan type {fam}{r}")
        if self.torus_rank < 0:
            raise RootDatumError("torus rank must be nonnegative")

    @property
    def ss_rank(self) -> int:
        return sum(r for _, r in self.factors)

    @property
    def rank(self) -> int:
        return self.ss_rank + self.torus_rank

    def cartan(self) -> list[list[int]]:
        n = self.ss_rank
        a = [[0] * n for _ in range(n)]
        off = 0
        for fam, r in self.factors:
            block = cartan_matrix(fam, r)
            for i in range(r):
                for j in range(r):
                    a[off + i][off + j] = block[i][j]
            off += r
        return a

    def factor_of(self, i: int) -> int:
        off = 0
        for k, (_, r) in enumerate(self.factors):
            if i < off + r:
                return k
            off += r
        raise IndexError(i)

    def label(self) -> str:
        s = "x".join(f"{f}{r}" for f, r in self.factors) or "T0"
        return s + (f"xT{self.torus_rank}" if self.torus_rank and self.factors else "")

    @classmethod
    def parse(cls, text: str, torus_rank: int = 0) -> "CartanType":
        """Parse strings like ``"A1"``, ``"A2xA1"``."""
        factors = []
        for part in text.replace("×", "x").split("x"):
            part = part.strip()
            if not part:
                continue
            factors.append((part[0].upper(), int(part[1:])))
        return cls(tuple(factors), torus_rank)


def _symmetrizer(a: Sequence[Sequence[int]]) -> list[Fraction]:
    """d with d_i a_ij = d_j a_ji, normalised so each component's smallest d is 1."""
    n = len(a)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        comp = [start]
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if a[i][j] and j != i and d[j] is None:
                    d[j] = d[i] * a[i][j] / a[j][i]
                    comp.append(j)
                    stack.append(j)
        m = min(d[i] for i in comp)
        for i in comp:
            d[i] = d[i] / m
    return d  # type: ignore[return-value]


@dataclass(frozen=True)
class RootDatum:
    cartan_type: CartanType
    weight_lattice_basis: tuple[tuple[int, ...], ...]

    # -- basic data --------------------------------------------------------------

    @property
    def ss_rank(self) -> int:
        return self.cartan_type.ss_rank

    @property
    def rank(self) -> int:
        return self.cartan_type.rank

    @cached_property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(r) for r in self.cartan_type.cartan())

    @cached_property
    def _cartan_inv(self):
        if not self.ss_rank:
            return ()
        return inverse(mat(self.cartan))

    @cached_property
    def symmetrizer(self) -> tuple[Fraction, ...]:
        return tuple(_symmetrizer(self.cartan))

    @cached_property
    def simple_roots(self) -> tuple[Root, ...]:
        n = self.ss_rank
        return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))

    @cached_property
    def positive_roots(self) -> tuple[Root, ...]:
        """Positive roots by closure under simple-root addition, sorted by (height, coords)."""
        n = self.ss_rank
        a = self.cartan
        roots = set(self.simple_roots)
        layer = list(self.simple_roots)
        while layer:
            nxt = []
            for beta in layer:
                for i in range(n):
                    # p = largest k with beta - k alpha_i a root
                    p = 0
                    while True:
                        cand = tuple(c - (p + 1) * (j == i) for j, c in enumerate(beta))
                        if cand in roots:
                            p += 1
                        else:
                            break
                    pairing = sum(a[i][j] * beta[j] for j in range(n))
                    q = p - pairing
                    if q > 0:
                        up = tuple(c + (j == i) for j, c in enumerate(beta))
                        if up not in roots:
                            roots.add(up)
                            nxt.append(up)
            layer = nxt
        return tuple(sorted(roots, key=lambda r: (sum(r), r)))

    @cached_property
    def roots(self) -> tuple[Root, ...]:
        pos = self.positive_roots
        return pos + tuple(tuple(-c for c in r) for r in pos)

    # -- lattices ----------------------------------------------------------------

    def root_to_weight(self, root: Root) -> Weight:
        n = self.ss_rank
        ss = tuple(sum(self.cartan[i][j] * root[j] for j in range(n)) for i in range(n))
        return ss + (0,) * self.cartan_type.torus_rank

    @cached_property
    def root_lattice_basis(self) -> tuple[Weight, ...]:
        return tuple(self.root_to_weight(r) for r in self.simple_roots)

    def weight_to_root_coords(self, w: Sequence) -> tuple[Fraction, ...]:
        """Simple-root coordinates of the semisimple part of w (rational)."""
        n = self.ss_rank
        ai = self._cartan_inv
        return tuple(sum((ai[i][j] * w[j] for j in range(n)), Fraction(0)) for i in range(n))

    @cached_property
    def coweight_lattice_basis(self) -> tuple[Coweight, ...]:
        """Basis of X_*(T) dual to the weight lattice basis, in fundamental-coweight coordinates."""
        n = self.ss_rank
        t = self.cartan_type.torus_rank
        # pairing matrix M with <c, w> = c^T M w
        m = [[Fraction(0)] * (n + t) for _ in range(n + t)]
        ai = self._cartan_inv
        for i in range(n):
            for j in range(n):
                m[i][j] = ai[i][j]
        for k in range(t):
            m[n + k][n + k] = Fraction(1)
        mb = matmul(m, transpose(mat(self.weight_lattice_basis)))
        # C (M B^T) = I
        return tuple(tuple(r) for r in transpose(inverse(transpose(mb))))

    def coweight_from_lattice(self, coords: Sequence[int]) -> Coweight:
        basis = self.coweight_lattice_basis
        dim = self.rank
        return tuple(sum((Fraction(c) * basis[k][j] for k, c in enumerate(coords)), Fraction(0)) for j in range(dim))

    def coweight_to_lattice(self, c: Sequence) -> tuple[Fraction, ...]:
        """Coordinates of a coweight in the X_*(T) lattice basis (pairing with the weight basis)."""
        return tuple(self.pairing(c, b) for b in self.weight_lattice_basis)

    def in_weight_lattice(self, w: Sequence[int]) -> bool:
        return in_integer_rowspan(self.weight_lattice_basis, w)

    @cached_property
    def fundamental_coweights(self) -> tuple[Coweight, ...]:
        n = self.ss_rank
        dim = self.rank
        return tuple(tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(n))

    @cached_property
    def simple_coroots(self) -> tuple[Coweight, ...]:
        n = self.ss_rank
        t = self.cartan_type.torus_rank
        return tuple(tuple(Fraction(self.cartan[i][j]) for j in range(n)) + (Fraction(0),) * t for i in range(n))

    def fundamental_weight(self, i: int) -> Weight:
        return tuple(int(i == j) for j in range(self.rank))

    # -- pairings ---------------------------------------------------------------

    def pairing(self, c: Sequence, w: Sequence) -> Fraction:
        """<c, w> for a coweight c and a weight w in X*(T~)."""
        n = self.ss_rank
        rc = self.weight_to_root_coords(w)
        ss = sum((Fraction(c[i]) * rc[i] for i in range(n)), Fraction(0))
        tor = sum((Fraction(c[k]) * w[k] for k in range(n, self.rank)), Fraction(0))
        return ss + tor

    def pairing_root(self, c: Sequence, root: Root) -> Fraction:
        return sum((Fraction(c[i]) * root[i] for i in range(self.ss_rank)), Fraction(0))

    def coroot_pairing(self, i: int, w: Sequence) -> int:
        """<alpha_i^v, w>; in fundamental-weight coordinates this is w_i."""
        return int(w[i])

    def root_coroot(self, alpha: Root, beta: Root) -> Fraction:
        """<alpha^v, beta> via the symmetrized form."""
        return 2 * self.form_roots(alpha, beta) / self.form_roots(alpha, alpha)

    def form_roots(self, a: Sequence, b: Sequence) -> Fraction:
        n = self.ss_rank
        d = self.symmetrizer
        return sum(
            (d[i] * self.cartan[i][j] * Fraction(a[i]) * Fraction(b[j]) for i in range(n) for j in range(n)),
            Fraction(0),
        )

    def form_weights(self, u: Sequence, v: Sequence) -> Fraction:
        """Invariant form on the semisimple part of weights (fundamental coords)."""
        return self.form_roots(self.weight_to_root_coords(u), self.weight_to_root_coords(v))

    def weight_coroot(self, w: Sequence, alpha: Root) -> Fraction:
        """<alpha^v, w> for any root alpha."""
        rc = self.weight_to_root_coords(w)
        return 2 * self.form_roots(alpha, rc) / self.form_roots(alpha, alpha)

    def is_dominant(self, w: Sequence) -> bool:
        return all(w[i] >= 0 for i in range(self.ss_rank))

    @cached_property
    def rho(self) -> Weight:
        return (1,) * self.ss_rank + (0,) * self.cartan_type.torus_rank

    def parabolic_split(self, tau: Sequence) -> tuple[tuple[Root, ...], tuple[Root, ...], tuple[Root, ...]]:
        """(level zero, positive level, negative level) roots for the coweight tau."""
        zero, pos, neg = [], [], []
        for r in self.roots:
            p = self.pairing_root(tau, r)
            (zero if p == 0 else pos if p > 0 else neg).append(r)
        return tuple(zero), tuple(pos), tuple(neg)

    def decompose_root(self, alpha: Root) -> tuple[int, ...]:
        """Simple-root indices i_1, ..., i_h with alpha = alpha_{i_1} + ... built left to right.

        Each prefix sum is a root; the choice takes the smallest index i such
        that alpha - alpha_i is a root, recursively.  The last index is the
        one added last.
        """
        sign = 1 if sum(alpha) > 0 else -1
        beta = tuple(sign * c for c in alpha)
        pos = set(self.positive_roots)
        if beta not in pos:
            raise RootDatumError(f"{alpha} is not a root")
        seq = []
        while sum(beta) > 1:
            for i in range(self.ss_rank):
                cand = tuple(c - (j == i) for j, c in enumerate(beta))
                if cand in pos:
                    seq.append(i)
                    beta = cand
                    break
        seq.append(beta.index(1))
        return tuple(reversed(seq))

    # -- central characters -------------------------------------------------

    @cached_property
    def central_character_snf(self):
        return smith_normal_form(self.weight_lattice_basis, self.rank)

    @cached_property
    def central_character_group(self) -> tuple[int, ...]:
        """Invariant factors (> 1) of X*(T~)/X*(T); free part reported as 0."""
        snf = self.central_character_snf
        out = [d for d in snf.diag if d > 1]
        out += [0] * (self.rank - snf.rank)
        return tuple(out)

    def central_character(self, w: Sequence[int]) -> tuple[int, ...]:
        """Class of a weight in X*(T~)/X*(T) in Smith coordinates."""
        snf = self.central_character_snf
        dim = self.rank
        wv = [sum(int(w[k]) * snf.V[k][j] for k in range(dim)) for j in range(dim)]
        out = []
        for j in range(dim):
            d = snf.diag[j] if j < len(snf.diag) else 0
            if d > 1:
                out.append(wv[j] % d)
            elif d == 0:
                out.append(wv[j])
        return tuple(out)

    def add_characters(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        mods = self.central_character_group
        return tuple((x + y) % m if m else x + y for x, y, m in zip(a, b, mods))

    @property
    def trivial_character(self) -> tuple[int, ...]:
        return (0,) * len(self.central_character_group)

    @property
    def is_adjoint(self) -> bool:
        return self.cartan_type.torus_rank == 0 and _same_lattice(self.weight_lattice_basis, self.root_lattice_basis)

    def to_json(self) -> dict:
        return {
            "type": [[f, r] for f, r in self.cartan_type.factors],
            "torus_rank": self.cartan_type.torus_rank,
            "weight_lattice": [list(r) for r in self.weight_lattice_basis],
        }


def _same_lattice(a, b) -> bool:
    return all(in_integer_rowspan(a, v) for v in b) and all(in_integer_rowspan(b, v) for v in a)


def build_root_datum(cartan_type: CartanType, weight_lattice_basis="adjoint") -> RootDatum:
    """Validate a lattice sandwiched between root lattice (+ torus) and X*(T~)."""
    n = cartan_type.ss_rank
    t = cartan_type.torus_rank
    dim = n + t
    if isinstance(weight_lattice_basis, str):
        key = weight_lattice_basis.lower()
        tmp = RootDatum(cartan_type, tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))
        if key in ("sc", "simply_connected", "simply-connected"):
            basis = tmp.weight_lattice_basis
        elif key in ("adjoint", "ad"):
            basis = tmp.root_lattice_basis + tuple(
                tuple(int(j == n + k) for j in range(dim)) for k in range(t)
            )
        else:
            raise RootDatumError(f"unknown lattice shorthand {weight_lattice_basis!r}")
    else:
        basis = tuple(tuple(int(x) for x in r) for r in weight_lattice_basis)
    if len(basis) != dim or any(len(r) != dim for r in basis):
        raise RootDatumError(f"weight lattice basis must be {dim}x{dim}")
    if rank(mat(basis)) != dim:
        raise RootDatumError("weight lattice basis is not full rank")
    datum = RootDatum(cartan_type, basis)
    for r in datum.root_lattice_basis:
        if not datum.in_weight_lattice(r):
            raise RootDatumError("root lattice is not contained in the weight lattice")
    # X*(T) ⊆ X*(T~) holds because the basis is integral in fundamental-weight coordinates
    return datum


def primitive_coweight(datum: RootDatum, c: Sequence) -> tuple[int, ...]:
    """Primitive X_*(T)-lattice vector along the direction of the coweight c."""
    return primitive_integer(datum.coweight_to_lattice(c))
