"""
Linear algebra over F_q: matrices, reduced row echelon form, canonical
subspaces, points, hyperplanes and the subspace/injection distances.

Vectors are tuples of field elements. A subspace is stored by its RREF basis
with zero rows dropped, so two subspaces are equal exactly when their bases
are entrywise equal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .errors import AmbientMismatch, ParameterError, ZeroSpace
from .finite_field import FieldCtx

Vector = tuple[int, ...]
Rows = tuple[Vector, ...]


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n (0 outside 0 <= k <= n)."""
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    if q < 2:
        raise ParameterError(f"q must be >= 2, got {q}")
    if k < 0 or k > n:
        return 0
    k = min(k, n - k)
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def num_points(n: int, q: int) -> int:
    return (q**n - 1) // (q - 1)


# -- matrices ---------------------------------------------------------------

@dataclass(frozen=True)
class FqMatrix:
    ctx: FieldCtx
    rows: Rows
    ncols: int = field(default=-1)

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if self.ncols < 0:
            if not rows:
                raise ParameterError("cannot infer the column count of an empty matrix")
            object.__setattr__(self, "ncols", len(rows[0]))
        if any(len(r) != self.ncols for r in rows):
            raise ParameterError("ragged matrix")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __sub__(self, other: FqMatrix) -> FqMatrix:
        if self.shape != other.shape:
            raise ParameterError(f"shape mismatch {self.shape} vs {other.shape}")
        sub = self.ctx.sub
        return FqMatrix(
            self.ctx,
            tuple(tuple(sub(a, b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.ncols,
        )

    def transpose(self) -> FqMatrix:
        return FqMatrix(self.ctx, tuple(zip(*self.rows)) if self.rows else (), self.nrows)

    def rank(self) -> int:
        return len(rref_rows(self.ctx, self.rows)[0])

    @classmethod
    def zeros(cls, ctx: FieldCtx, r: int, c: int) -> FqMatrix:
        return cls(ctx, tuple((0,) * c for _ in range(r)), c)


def rref_rows(ctx: FieldCtx, rows: Iterable[Sequence[int]]) -> tuple[Rows, tuple[int, ...]]:
    """Reduced row echelon form with zero rows removed, plus pivot columns."""
    m = [list(r) for r in rows]
    if not m:
        return (), ()
    ncols = len(m[0])
    add, mul, inv, neg = ctx.add, ctx.mul, ctx.inv, ctx.neg
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        if m[r][c] != 1:
            s = inv(m[r][c])
            m[r] = [mul(s, x) for x in m[r]]
        prow = m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = neg(m[i][c])
                m[i] = [add(x, mul(f, y)) if y else x for x, y in zip(m[i], prow)]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in m[:r]), tuple(pivots)


class RREFResult(NamedTuple):
    matrix: FqMatrix
    rank: int
    pivots: tuple[int, ...]


def rref(M: FqMatrix) -> RREFResult:
    rows, pivots = rref_rows(M.ctx, M.rows)
    return RREFResult(FqMatrix(M.ctx, rows, M.ncols), len(pivots), pivots)


def null_space(ctx: FieldCtx, rows: Sequence[Sequence[int]], ncols: int) -> Rows:
    """Basis (in RREF) of {x : r . x = 0 for every row r}."""
    red, pivots = rref_rows(ctx, rows) if rows else ((), ())
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = ctx.neg(row[f])
        basis.append(v)
    return rref_rows(ctx, basis)[0]


def dot(ctx: FieldCtx, u: Sequence[int], v: Sequence[int]) -> int:
    if ctx.e == 1:
        return sum(a * b for a, b in zip(u, v)) % ctx.p
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc = ctx.add(acc, ctx.mul(a, b))
    return acc


def combine(ctx: FieldCtx, coeffs: Sequence[int], rows: Sequence[Sequence[int]], n: int) -> Vector:
    """Linear combination sum_i coeffs[i] * rows[i]."""
    out = [0] * n
    for c, row in zip(coeffs, rows):
        if c:
            for j, x in enumerate(row):
                if x:
                    out[j] = ctx.add(out[j], ctx.mul(c, x))
    return tuple(out)


# -- subspaces and points ---------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """A subspace of F_q^n given by its canonical RREF basis."""

    ctx: FieldCtx
    n: int
    basis: Rows

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return self.n

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(row) if x) for row in self.basis)

    def is_canonical(self) -> bool:
        return rref_rows(self.ctx, self.basis)[0] == self.basis

    def contains_vector(self, v: Sequence[int]) -> bool:
        if not any(v):
            return True
        return len(rref_rows(self.ctx, self.basis + (tuple(v),))[0]) == self.dim

    def contains(self, other: Subspace) -> bool:
        _same_ambient(self, other)
        return all(self.contains_vector(row) for row in other.basis)

    def orthogonal_complement(self) -> Subspace:
        return Subspace(self.ctx, self.n, null_space(self.ctx, self.basis, self.n))

    def vectors(self) -> Iterable[Vector]:
        for coeffs in itertools.product(range(self.ctx.q), repeat=self.dim):
            yield combine(self.ctx, coeffs, self.basis, self.n)

    def to_matrix(self) -> FqMatrix:
        return FqMatrix(self.ctx, self.basis, self.n)

    def __repr__(self):
        return f"Subspace(q={self.ctx.q}, n={self.n}, basis={[list(r) for r in self.basis]})"


def subspace_from_generators(ctx: FieldCtx, n: int, generators: Iterable[Sequence[int]]) -> Subspace:
    gens = [tuple(g) for g in generators]
    if any(len(g) != n for g in gens):
        raise AmbientMismatch(f"generators must have length {n}")
    basis, _ = rref_rows(ctx, gens)
    if not basis:
        raise ZeroSpace("the generators span the zero space")
    return Subspace(ctx, n, basis)


def full_space(ctx: FieldCtx, n: int) -> Subspace:
    return Subspace(ctx, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def normalize(ctx: FieldCtx, v: Sequence[int]) -> Vector:
    """Scale v so that its first nonzero coordinate is 1."""
    lead = next((x for x in v if x), None)
    if lead is None:
        raise ZeroSpace("the zero vector is not a point")
    if lead == 1:
        return tuple(v)
    s = ctx.inv(lead)
    return tuple(ctx.mul(s, x) for x in v)


def _same_ambient(U: Subspace, V: Subspace) -> None:
    if U.ctx != V.ctx or U.n != V.n:
        raise AmbientMismatch(
            f"subspaces live in different spaces: GF({U.ctx.q})^{U.n} vs GF({V.ctx.q})^{V.n}"
        )


class Distances(NamedTuple):
    dim_sum: int
    dim_meet: int
    subspace: int
    injection: int


def distances(U: Subspace, V: Subspace) -> Distances:
    _same_ambient(U, V)
    dim_sum = len(rref_rows(U.ctx, U.basis + V.basis)[0])
    dim_meet = U.dim + V.dim - dim_sum
    return Distances(
        dim_sum,
        dim_meet,
        2 * dim_sum - U.dim - V.dim,
        max(U.dim, V.dim) - dim_meet,
    )


def subspace_distance(U: Subspace, V: Subspace) -> int:
    return distances(U, V).subspace


def intersection(U: Subspace, V: Subspace) -> Subspace | None:
    """U ∩ V computed as the complement of U⊥ + V⊥; None for the zero space."""
    _same_ambient(U, V)
    ctx, n = U.ctx, U.n
    perp = null_space(ctx, U.basis, n) + null_space(ctx, V.basis, n)
    basis = null_space(ctx, perp, n) if perp else full_space(ctx, n).basis
    return Subspace(ctx, n, basis) if basis else None


def span(U: Subspace, V: Subspace) -> Subspace:
    _same_ambient(U, V)
    return Subspace(U.ctx, U.n, rref_rows(U.ctx, U.basis + V.basis)[0])


def all_points(ctx: FieldCtx, n: int) -> list[Vector]:
    """Normalized nonzero vectors of F_q^n in lexicographic order."""
    q = ctx.q
    out = []
    for lead in reversed(range(n)):
        for tail in itertools.product(range(q), repeat=n - lead - 1):
            out.append((0,) * lead + (1,) + tail)
    return out


def enumerate_points(U: Subspace) -> list[Vector]:
    """Projective points of U, sorted lexicographically.

    With an RREF basis, a combination is normalized exactly when its first
    nonzero coefficient is 1, because that coefficient lands on a pivot.
    """
    if U.dim < 1:
        raise ZeroSpace("the zero space has no points")
    ctx, q, k = U.ctx, U.ctx.q, U.dim
    pts = []
    for lead in range(k):
        for tail in itertools.product(range(q), repeat=k - lead - 1):
            coeffs = (0,) * lead + (1,) + tail
            pts.append(combine(ctx, coeffs, U.basis, U.n))
    pts.sort()
    return pts


def hyperplane(ctx: FieldCtx, normal: Sequence[int]) -> Subspace:
    """The hyperplane {x : normal . x = 0}."""
    return Subspace(ctx, len(normal), null_space(ctx, [tuple(normal)], len(normal)))


def hyperplane_normals(ctx: FieldCtx, n: int) -> list[Vector]:
    return all_points(ctx, n)


def enumerate_hyperplanes(ctx: FieldCtx, n: int) -> list[Subspace]:
    """All hyperplanes of F_q^n, ordered by their normalized normal vectors."""
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    return [hyperplane(ctx, h) for h in hyperplane_normals(ctx, n)]


def normal_vector(H: Subspace) -> Vector:
    if H.dim != H.n - 1:
        raise ParameterError(f"expected a hyperplane (dim {H.n - 1}), got dim {H.dim}")
    (h,) = null_space(H.ctx, H.basis, H.n)
    return normalize(H.ctx, h)


def hyperplane_section(U: Subspace, H: Subspace) -> Subspace | None:
    """U ∩ H for a hyperplane H (None when U is a point outside H)."""
    _same_ambient(U, H)
    h = normal_vector(H)
    ctx = U.ctx
    values = [dot(ctx, h, row) for row in U.basis]
    if not any(values):
        return U
    coeffs = null_space(ctx, [values], U.dim)
    if not coeffs:
        return None
    return subspace_from_generators(ctx, U.n, [combine(ctx, c, U.basis, U.n) for c in coeffs])
