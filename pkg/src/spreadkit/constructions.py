"""
Code constructions: full-rank-distance MRD matrix codes, lifted MRD codes,
the layered multi-component partial spread and Echelon-Ferrers assembly.

The MRD codes come from multiplication in GF(q^m): for a in GF(q^m) the
codeword has rows a*g_1, ..., a*g_k written over GF(q), with g_i = x^(i-1).
A nonzero a gives an injective GF(q)-linear map, so every nonzero codeword
has rank k.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import MixedDimensions, ParameterError, ShapeError, SkeletonDistanceError
from .finite_field import FieldCtx, FieldExtension, field_of_order
from .subspace import FqMatrix, Subspace, rref_rows

MAX_MATRIX_CODE_SIZE = 2_000_000


@dataclass(frozen=True)
class MatrixCode:
    ctx: FieldCtx
    rows: int
    cols: int
    codewords: tuple[FqMatrix, ...]
    declared_min_rank_distance: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "codewords", tuple(self.codewords))
        if any(c.shape != (self.rows, self.cols) for c in self.codewords):
            raise ShapeError(f"all codewords must be {self.rows}x{self.cols}")
        if len(set(self.codewords)) != len(self.codewords):
            raise ParameterError("duplicate codeword in matrix code")

    def __len__(self):
        return len(self.codewords)

    def __iter__(self):
        return iter(self.codewords)

    @classmethod
    def single_zero(cls, ctx: FieldCtx, rows: int, cols: int) -> MatrixCode:
        return cls(ctx, rows, cols, (FqMatrix.zeros(ctx, rows, cols),), None)


@dataclass(frozen=True)
class SubspaceCode:
    ctx: FieldCtx
    n: int
    k: int
    codewords: tuple[Subspace, ...]
    declared_min_subspace_distance: int | None = None
    method: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "codewords", tuple(self.codewords))
        for U in self.codewords:
            if U.ctx != self.ctx or U.n != self.n:
                raise ParameterError("codeword lives in a different ambient space")
            if U.dim != self.k:
                raise MixedDimensions(f"codeword of dimension {U.dim} in a dimension-{self.k} code")
        if len(set(self.codewords)) != len(self.codewords):
            raise ParameterError("duplicate codeword in subspace code")

    @property
    def q(self) -> int:
        return self.ctx.q

    def __len__(self):
        return len(self.codewords)

    def __iter__(self):
        return iter(self.codewords)

    def as_set(self) -> frozenset[Subspace]:
        return frozenset(self.codewords)


@dataclass(frozen=True)
class PivotVector:
    bits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))
        if any(b not in (0, 1) for b in self.bits):
            raise ParameterError("pivot vectors are binary")

    @classmethod
    def from_string(cls, s: str) -> PivotVector:
        return cls(tuple(int(c) for c in s))

    @property
    def n(self) -> int:
        return len(self.bits)

    @property
    def weight(self) -> int:
        return sum(self.bits)

    @property
    def positions(self) -> tuple[int, ...]:
        return tuple(i for i, b in enumerate(self.bits) if b)

    def hamming(self, other: PivotVector) -> int:
        return sum(a != b for a, b in zip(self.bits, other.bits))

    def __str__(self):
        return "".join(map(str, self.bits))


def mrd_size(q: int, m: int, n: int, d: int) -> int:
    """Maximum size of an m x n rank-metric code with minimum rank distance d."""
    if q < 2 or m < 1 or n < 1 or d < 1:
        raise ParameterError("need q >= 2 and m, n, d >= 1")
    if d > min(m, n):
        return 1
    return q ** (max(m, n) * (min(m, n) - d + 1))


def mrd_full_rank_code(q: int, k: int, m: int) -> MatrixCode:
    """k x m MRD code of size q^m whose nonzero differences all have rank k."""
    if not (m >= k >= 1):
        raise ParameterError(f"need m >= k >= 1, got k={k}, m={m}")
    base = field_of_order(q)
    ext = FieldExtension(base, m)
    big = ext.big
    gens = [ext.basis_element(i) for i in range(k)]
    words = []
    for a in range(big.q):
        rows = tuple(ext.coordinates(big.mul(a, g)) for g in gens)
        words.append(FqMatrix(base, rows, m))
    return MatrixCode(base, k, m, tuple(words), k)


def full_matrix_space(ctx: FieldCtx, rows: int, cols: int) -> MatrixCode:
    size = ctx.q ** (rows * cols)
    if size > MAX_MATRIX_CODE_SIZE:
        raise ParameterError(f"the full {rows}x{cols} matrix space has {size} elements")
    words = []
    for flat in itertools.product(range(ctx.q), repeat=rows * cols):
        words.append(FqMatrix(ctx, tuple(tuple(flat[i * cols:(i + 1) * cols]) for i in range(rows)), cols))
    return MatrixCode(ctx, rows, cols, tuple(words), 1 if rows and cols else None)


def min_rank_distance(C: MatrixCode) -> float | int:
    """Minimum rank(A - B) over distinct pairs; ``math.inf`` for |C| <= 1."""
    best = math.inf
    words = C.codewords
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            r = (words[i] - words[j]).rank()
            if r < best:
                best = r
                if best <= 1:
                    return best
    return best


def _lift(ctx: FieldCtx, n: int, positions: Sequence[int], block: FqMatrix | None) -> Subspace:
    """Row space of the echelon matrix with identity on ``positions`` and
    ``block`` filling the columns to the right of the last pivot."""
    k = len(positions)
    start = positions[-1] + 1 if positions else 0
    width = n - start
    rows = []
    for i, pc in enumerate(positions):
        row = [0] * n
        row[pc] = 1
        if block is not None:
            row[start:] = block.rows[i]
        rows.append(tuple(row))
    if block is not None and block.ncols != width:
        raise ShapeError(f"block has {block.ncols} columns, free region has {width}")
    basis = tuple(rows)
    return Subspace(ctx, n, basis) if k else Subspace(ctx, n, ())


def lift_matrix(A: FqMatrix) -> Subspace:
    """Row space of [I_k | A]."""
    k = A.nrows
    return _lift(A.ctx, k + A.ncols, tuple(range(k)), A)


def lifted_mrd(q: int, n: int, k: int, d: int) -> SubspaceCode:
    """Lifted MRD code in G_q(n, k) with subspace distance d (d even).

    Supported rank distances are d/2 = 1 (all of F_q^{k x (n-k)}) and
    d/2 = min(k, n-k) (the multiplication construction, transposed when
    n-k < k). Beyond 2*min(k, n-k) the code is a single codeword.
    """
    if d % 2 or d < 2:
        raise ParameterError(f"subspace distance must be even and >= 2, got {d}")
    if not (1 <= k <= n):
        raise ParameterError(f"need 1 <= k <= n, got k={k}, n={n}")
    ctx = field_of_order(q)
    cols = n - k
    delta = d // 2
    lo = min(k, cols)
    if cols == 0 or delta > lo:
        words = [lift_matrix(FqMatrix.zeros(ctx, k, cols))] if cols else [_identity_space(ctx, k)]
        return SubspaceCode(ctx, n, k, tuple(words), d, "lifted-mrd")
    if delta == lo:
        if k <= cols:
            inner = mrd_full_rank_code(q, k, cols).codewords
        else:
            inner = [c.transpose() for c in mrd_full_rank_code(q, cols, k).codewords]
    elif delta == 1:
        inner = full_matrix_space(ctx, k, cols).codewords
    else:
        raise ParameterError(
            f"rank distance {delta} not supported; only 1 and min(k, n-k) = {lo} are built"
        )
    return SubspaceCode(ctx, n, k, tuple(lift_matrix(A) for A in inner), d, "lifted-mrd")


def lifted_mrd_size(q: int, n: int, k: int, d: int) -> int:
    if d > 2 * min(k, n - k):
        return 1
    return q ** (max(k, n - k) * (min(k, n - k) - d // 2 + 1))


def _identity_space(ctx: FieldCtx, k: int) -> Subspace:
    return Subspace(ctx, k, tuple(tuple(int(i == j) for j in range(k)) for i in range(k)))


def block_skeleton(n: int, k: int) -> list[PivotVector]:
    """Pivot vectors with k consecutive ones in blocks (i-1)k .. ik-1."""
    return [
        PivotVector(tuple(int((i - 1) * k <= j < i * k) for j in range(n)))
        for i in range(1, n // k + 1)
    ]


def _layered(q: int, n: int, k: int, method: str) -> SubspaceCode:
    ctx = field_of_order(q)
    skeleton = block_skeleton(n, k)
    components = []
    for i, v in enumerate(skeleton, start=1):
        width = n - i * k
        if i < len(skeleton):
            components.append(mrd_full_rank_code(q, k, width))
        else:
            components.append(MatrixCode.single_zero(ctx, k, width))
    code = echelon_ferrers_assemble(skeleton, components, d=k)
    return SubspaceCode(ctx, n, k, code.codewords, 2 * k, method)


def multi_component(q: int, n: int, k: int) -> SubspaceCode:
    """Partial k-spread of size 1 + sum_{i=1}^{floor(n/k)-1} q^(n-ik), for k not dividing n."""
    if not (1 <= k <= n):
        raise ParameterError(f"need 1 <= k <= n, got k={k}, n={n}")
    if n % k == 0:
        raise ParameterError(f"k={k} divides n={n}; use spread() instead")
    return _layered(q, n, k, "multi-component")


def spread(q: int, n: int, k: int) -> SubspaceCode:
    """A k-spread of F_q^n (requires k | n), built by the same layering."""
    if not (1 <= k <= n) or n % k:
        raise ParameterError(f"a {k}-spread of F_q^{n} exists only when k divides n")
    return _layered(q, n, k, "spread")


def multi_component_size(q: int, n: int, k: int) -> int:
    return 1 + sum(q ** (n - i * k) for i in range(1, n // k))


def echelon_ferrers_assemble(
    skeleton: Sequence[PivotVector],
    components: Sequence[MatrixCode],
    d: int | None = None,
) -> SubspaceCode:
    """Union of lifted components, one per pivot vector.

    Component i must be k x w where w is the number of columns to the right
    of the last pivot of skeleton[i]. When d is omitted it is the smallest
    declared rank distance among the multi-codeword components (k if none).
    """
    if len(skeleton) != len(components) or not skeleton:
        raise ParameterError("need one component per pivot vector")
    n = skeleton[0].n
    k = skeleton[0].weight
    if any(v.n != n or v.weight != k for v in skeleton):
        raise ParameterError("pivot vectors must share length and weight")
    if d is None:
        declared = [
            c.declared_min_rank_distance
            for c in components
            if len(c) > 1 and c.declared_min_rank_distance is not None
        ]
        d = min(declared, default=k)
    for a, b in itertools.combinations(range(len(skeleton)), 2):
        h = skeleton[a].hamming(skeleton[b])
        if h < 2 * d:
            raise SkeletonDistanceError(
                f"pivot vectors {skeleton[a]} and {skeleton[b]} are at Hamming distance {h} < {2 * d}"
            )
    ctx = components[0].ctx
    words: list[Subspace] = []
    for v, comp in zip(skeleton, components):
        pos = v.positions
        width = n - (pos[-1] + 1)
        if comp.rows != k or comp.cols != width:
            raise ShapeError(
                f"component is {comp.rows}x{comp.cols}, the region right of {v} is {k}x{width}"
            )
        if comp.ctx != ctx:
            raise ParameterError("components over different fields")
        words.extend(_lift(ctx, n, pos, A) for A in comp.codewords)
    return SubspaceCode(ctx, n, k, tuple(words), 2 * d, "echelon-ferrers")


def code_from_generators(ctx: FieldCtx, n: int, generator_sets: Iterable[Sequence[Sequence[int]]]) -> SubspaceCode:
    words = []
    for gens in generator_sets:
        basis, _ = rref_rows(ctx, gens)
        words.append(Subspace(ctx, n, basis))
    dims = {U.dim for U in words}
    if len(dims) > 1:
        raise MixedDimensions(f"codewords of dimensions {sorted(dims)}")
    return SubspaceCode(ctx, n, dims.pop() if dims else 0, tuple(words))
