import itertools
import math
import random

import pytest

from oracles import prime_field_ops, rank_by_counting, span_vectors
from spreadkit.constructions import (
    MatrixCode,
    PivotVector,
    SubspaceCode,
    block_skeleton,
    echelon_ferrers_assemble,
    lift_matrix,
    lifted_mrd,
    lifted_mrd_size,
    min_rank_distance,
    mrd_full_rank_code,
    mrd_size,
    multi_component,
    multi_component_size,
    spread,
)
from spreadkit.errors import ParameterError, ShapeError, SkeletonDistanceError
from spreadkit.finite_field import make_field
from spreadkit.subspace import FqMatrix, distances

GF2 = make_field(2)


def _oracle_min_rank(code, q):
    add, mul = prime_field_ops(q)
    best = math.inf
    for A, B in itertools.combinations(code.codewords, 2):
        diff = [tuple((a - b) % q for a, b in zip(r, s)) for r, s in zip(A.rows, B.rows)]
        best = min(best, rank_by_counting(diff, q, add, mul))
    return best


def test_mrd_size_examples():
    assert mrd_size(2, 4, 6, 4) == 64
    assert mrd_size(2, 4, 2, 3) == 1
    assert mrd_size(2, 3, 3, 1) == 512


@pytest.mark.parametrize("q,k,m", [(2, 2, 3), (2, 3, 4), (2, 4, 6), (3, 2, 3)])
def test_mrd_full_rank_code_against_oracle(q, k, m):
    C = mrd_full_rank_code(q, k, m)
    assert len(C) == mrd_size(q, k, m, k) == q**m
    assert min_rank_distance(C) == k
    if q**m <= 16:
        assert _oracle_min_rank(C, q) == k


@pytest.mark.parametrize("q", [2, 3])
def test_mrd_full_rank_grid(q):
    for k in range(1, 5):
        for m in range(k, 7):
            if q**m > 800:
                continue
            C = mrd_full_rank_code(q, k, m)
            assert len(C) == mrd_size(q, k, m, k)
            assert min_rank_distance(C) == k


def test_mrd_square_and_zero_codeword():
    C = mrd_full_rank_code(2, 3, 3)
    assert len(C) == 8 and min_rank_distance(C) == 3
    assert C.codewords[0] == FqMatrix.zeros(GF2, 3, 3)
    with pytest.raises(ParameterError):
        mrd_full_rank_code(2, 4, 3)


def test_mrd_over_prime_power_field():
    C = mrd_full_rank_code(4, 2, 3)
    assert len(C) == 64 and min_rank_distance(C) == 2


def test_min_rank_distance_examples():
    Z = FqMatrix.zeros(GF2, 2, 2)
    I = FqMatrix(GF2, ((1, 0), (0, 1)))
    E = FqMatrix(GF2, ((1, 0), (0, 0)))
    assert min_rank_distance(MatrixCode(GF2, 2, 2, (Z, I))) == 2
    assert min_rank_distance(MatrixCode(GF2, 2, 2, (Z, E))) == 1
    assert min_rank_distance(MatrixCode.single_zero(GF2, 2, 2)) == math.inf
    assert min_rank_distance(mrd_full_rank_code(2, 2, 3)) == 2


def test_matrix_code_rejects_bad_input():
    Z = FqMatrix.zeros(GF2, 2, 2)
    with pytest.raises(ParameterError):
        MatrixCode(GF2, 2, 2, (Z, Z))
    with pytest.raises(ShapeError):
        MatrixCode(GF2, 2, 3, (Z,))


def test_lifted_mrd_examples():
    assert len(lifted_mrd(2, 10, 4, 8)) == 64 == lifted_mrd_size(2, 10, 4, 8)
    C = lifted_mrd(2, 6, 3, 6)
    assert len(C) == 8
    for U, V in itertools.combinations(C.codewords, 2):
        assert distances(U, V).dim_meet == 0
    assert len(lifted_mrd(2, 7, 3, 8)) == 1
    with pytest.raises(ParameterError):
        lifted_mrd(2, 6, 3, 5)


def test_lifted_mrd_rank_one_and_transposed():
    C = lifted_mrd(2, 5, 2, 2)
    assert len(C) == 2**6 == lifted_mrd_size(2, 5, 2, 2)
    # n - k < k uses the transposed multiplication code
    C = lifted_mrd(2, 5, 3, 4)
    assert len(C) == lifted_mrd_size(2, 5, 3, 4) == 8
    assert min(distances(U, V).subspace for U, V in itertools.combinations(C.codewords, 2)) == 4


def test_lifted_mrd_distance_is_twice_rank():
    q, k, m = 2, 3, 4
    inner = mrd_full_rank_code(q, k, m).codewords
    rng = random.Random(3)
    for _ in range(60):
        A, B = rng.sample(inner, 2)
        U, V = lift_matrix(A), lift_matrix(B)
        assert U.basis[0][:k] == (1, 0, 0) and U.pivots == (0, 1, 2)
        assert distances(U, V).subspace == 2 * (A - B).rank()


@pytest.mark.parametrize(
    "q,n,k,size",
    [(2, 10, 4, 65), (2, 8, 3, 33), (3, 10, 4, 730), (2, 7, 3, 17), (3, 7, 3, 82), (2, 5, 3, 1)],
)
def test_multi_component_sizes(q, n, k, size):
    C = multi_component(q, n, k)
    assert len(C) == size == multi_component_size(q, n, k)
    r = n % k
    assert size == (q**n - q ** (k + r) + q**k - 1) // (q**k - 1)


@pytest.mark.parametrize("q,n,k", [(2, 7, 3), (2, 8, 3), (2, 10, 4), (3, 7, 3)])
def test_multi_component_pairwise_trivial(q, n, k):
    C = multi_component(q, n, k)
    add, mul = prime_field_ops(q)
    zero = (0,) * n
    # independent check: spans share only the zero vector
    spans = [span_vectors(list(U.basis), q, add, mul) for U in C.codewords] if len(C) < 100 else None
    if spans is not None:
        for a, b in itertools.combinations(spans, 2):
            assert a & b == {zero}
    assert min(distances(U, V).subspace for U, V in itertools.combinations(C.codewords, 2)) == 2 * k


def test_multi_component_blocks_have_disjoint_pivots():
    C = multi_component(2, 10, 4)
    blocks = {}
    for U in C.codewords:
        blocks.setdefault(U.pivots, []).append(U)
    assert sorted(blocks) == [(0, 1, 2, 3), (4, 5, 6, 7)]
    for (pa, A), (pb, B) in itertools.combinations(blocks.items(), 2):
        assert not set(pa) & set(pb)
        for U in A[:5]:
            for V in B:
                assert distances(U, V).dim_meet == 0


def test_multi_component_requires_k_not_dividing_n():
    with pytest.raises(ParameterError):
        multi_component(2, 8, 4)
    assert len(spread(2, 8, 4)) == 17


def test_echelon_ferrers_matches_multi_component():
    q, n, k = 2, 10, 4
    skel = block_skeleton(n, k)
    comps = [mrd_full_rank_code(q, k, 6), MatrixCode.single_zero(GF2, k, 2)]
    C = echelon_ferrers_assemble(skel, comps)
    assert C.as_set() == multi_component(q, n, k).as_set()


def test_echelon_ferrers_small_example():
    skel = [PivotVector.from_string("111000"), PivotVector.from_string("000111")]
    comps = [mrd_full_rank_code(2, 3, 3), MatrixCode.single_zero(GF2, 3, 0)]
    C = echelon_ferrers_assemble(skel, comps)
    assert len(C) == 9
    assert min(distances(U, V).subspace for U, V in itertools.combinations(C.codewords, 2)) == 6


def test_echelon_ferrers_errors():
    skel = [PivotVector.from_string("1100"), PivotVector.from_string("1010")]
    comps = [MatrixCode.single_zero(GF2, 2, 2), MatrixCode.single_zero(GF2, 2, 1)]
    with pytest.raises(SkeletonDistanceError):
        echelon_ferrers_assemble(skel, comps, d=2)
    skel = [PivotVector.from_string("111000"), PivotVector.from_string("000111")]
    with pytest.raises(ShapeError):
        echelon_ferrers_assemble(skel, [mrd_full_rank_code(2, 3, 4), MatrixCode.single_zero(GF2, 3, 0)])


def test_pivot_vector():
    v = PivotVector.from_string("110100")
    assert v.weight == 3 and v.positions == (0, 1, 3)
    assert v.hamming(PivotVector.from_string("000111")) == 4
    with pytest.raises(ParameterError):
        PivotVector.from_string("1201")


def test_subspace_code_rejects_duplicates():
    U = lift_matrix(FqMatrix.zeros(GF2, 2, 2))
    with pytest.raises(ParameterError):
        SubspaceCode(GF2, 4, 2, (U, U))
