import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import count_subspaces, prime_field_ops, span_vectors
from spreadkit.errors import AmbientMismatch, ZeroSpace
from spreadkit.finite_field import make_field
from spreadkit.search import enumerate_k_subspaces
from spreadkit.subspace import (
    FqMatrix,
    Subspace,
    all_points,
    distances,
    enumerate_hyperplanes,
    enumerate_points,
    full_space,
    gaussian_binomial,
    hyperplane,
    hyperplane_section,
    intersection,
    normal_vector,
    num_points,
    rref,
    subspace_from_generators,
)

GF2 = make_field(2)
GF3 = make_field(3)


def test_gaussian_binomial_examples():
    assert gaussian_binomial(4, 2, 2) == count_subspaces(4, 2, 2) == 35
    assert gaussian_binomial(8, 7, 2) == 255
    assert gaussian_binomial(3, 5, 2) == 0
    assert gaussian_binomial(5, 1, 2) == 31
    assert gaussian_binomial(5, 1, 2) * 34 == 1054


@pytest.mark.parametrize("n,k,q", [(3, 1, 3), (3, 2, 3), (4, 2, 3), (5, 3, 2), (4, 1, 2)])
def test_gaussian_binomial_against_span_count(n, k, q):
    assert gaussian_binomial(n, k, q) == count_subspaces(n, k, q)


def test_gaussian_binomial_symmetry():
    for q in (2, 3, 4, 5):
        for n in range(0, 9):
            for k in range(0, n + 1):
                assert gaussian_binomial(n, k, q) == gaussian_binomial(n, n - k, q)


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("n", range(1, 7))
def test_enumeration_count_matches_gaussian_binomial(q, n):
    for k in range(0, n + 1):
        subs = enumerate_k_subspaces(q, n, k)
        assert len(subs) == gaussian_binomial(n, k, q)
        if q == 2 or n <= 5:
            assert len(set(subs)) == len(subs)


def test_rref_examples():
    I3 = FqMatrix(GF2, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    res = rref(I3)
    assert res.matrix == I3 and res.rank == 3 and res.pivots == (0, 1, 2)

    res = rref(FqMatrix(GF2, ((1, 1), (0, 1))))
    assert res.matrix.rows == ((1, 0), (0, 1)) and res.rank == 2

    res = rref(FqMatrix(GF2, ((1, 1, 0), (1, 1, 0))))
    assert res.matrix.rows == ((1, 1, 0),) and res.rank == 1


def _random_matrix(rng, ctx, r, c):
    return FqMatrix(ctx, tuple(tuple(rng.randrange(ctx.q) for _ in range(c)) for _ in range(r)))


@pytest.mark.parametrize("ctx", [GF2, GF3, make_field(2, 2), make_field(5)])
def test_rref_idempotent_and_rank(ctx):
    rng = random.Random(1)
    add, mul = ctx.add, ctx.mul
    for _ in range(40):
        M = _random_matrix(rng, ctx, rng.randint(1, 4), rng.randint(1, 5))
        R = rref(M)
        assert rref(R.matrix).matrix == R.matrix
        assert span_vectors(list(M.rows), ctx.q, add, mul) == span_vectors(list(R.matrix.rows), ctx.q, add, mul) or R.rank == 0
        assert ctx.q**R.rank == len(span_vectors(list(M.rows), ctx.q, add, mul))


def test_subspace_from_generators_examples():
    e1, e2 = (1, 0, 0, 0), (0, 1, 0, 0)
    e12 = (1, 1, 0, 0)
    assert subspace_from_generators(GF2, 4, [e1, e2]) == subspace_from_generators(GF2, 4, [e2, e12])
    assert subspace_from_generators(GF2, 3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]) == full_space(GF2, 3)
    U = subspace_from_generators(GF2, 3, [(1, 1, 0), (0, 1, 1)])
    assert U.basis == ((1, 0, 1), (0, 1, 1))
    with pytest.raises(ZeroSpace):
        subspace_from_generators(GF2, 3, [(0, 0, 0)])


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(2, 5), st.data())
def test_canonicity_under_generator_changes(q, n, data):
    ctx = make_field(q)
    gens = data.draw(
        st.lists(st.tuples(*[st.integers(0, q - 1)] * n), min_size=1, max_size=4).filter(
            lambda g: any(any(v) for v in g)
        )
    )
    U = subspace_from_generators(ctx, n, gens)
    # shuffle, scale and add combinations: same span
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    mixed = list(gens)
    rng.shuffle(mixed)
    scales = [rng.randrange(1, q) for _ in mixed]
    mixed = [tuple(x * c % q for x in v) for v, c in zip(mixed, scales)]
    mixed.append(tuple((a + b) % q for a, b in zip(mixed[0], mixed[-1])))
    assert subspace_from_generators(ctx, n, mixed) == U
    add, mul = prime_field_ops(q)
    assert span_vectors(list(U.basis), q, add, mul) == span_vectors(gens, q, add, mul)


def test_distances_examples():
    U = subspace_from_generators(GF2, 4, [(1, 0, 0, 0), (0, 1, 0, 0)])
    d = distances(U, U)
    assert d.subspace == 0 and d.injection == 0
    A = subspace_from_generators(GF2, 10, [tuple(int(i == j) for j in range(10)) for i in range(4)])
    B = subspace_from_generators(GF2, 10, [tuple(int(i == j) for j in range(10)) for i in range(4, 8)])
    d = distances(A, B)
    assert d.dim_meet == 0 and d.subspace == 8 and d.subspace == 2 * d.injection
    with pytest.raises(AmbientMismatch):
        distances(U, A)


def test_distance_properties_random():
    rng = random.Random(7)
    subs = enumerate_k_subspaces(2, 5, 2) + enumerate_k_subspaces(2, 5, 3)
    for _ in range(300):
        U, V, W = (rng.choice(subs) for _ in range(3))
        duv = distances(U, V).subspace
        assert duv == distances(V, U).subspace
        assert duv <= distances(U, W).subspace + distances(W, V).subspace
        if U.dim == V.dim:
            assert duv == 2 * distances(U, V).injection
        meet = intersection(U, V)
        assert (meet.dim if meet else 0) == distances(U, V).dim_meet


def test_enumerate_points_counts():
    U1 = subspace_from_generators(GF2, 4, [(1, 1, 0, 1)])
    assert len(enumerate_points(U1)) == 1
    U2 = subspace_from_generators(GF2, 4, [(1, 0, 0, 0), (0, 1, 1, 0)])
    assert len(enumerate_points(U2)) == 3
    assert len(enumerate_points(full_space(GF2, 4))) == 15
    pts = enumerate_points(full_space(GF3, 3))
    assert pts == sorted(pts) and len(pts) == 13 and pts == all_points(GF3, 3)


def test_hyperplane_counts():
    assert len(enumerate_hyperplanes(GF2, 4)) == 15
    assert len(enumerate_hyperplanes(GF3, 2)) == 4
    hs = enumerate_hyperplanes(GF2, 8)
    assert len(hs) == 255 and len(set(hs)) == 255
    assert all(H.dim == 7 for H in hs)


@pytest.mark.parametrize("q,n", [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (3, 4), (3, 5)])
def test_points_lie_in_expected_number_of_hyperplanes(q, n):
    ctx = make_field(q)
    normals = all_points(ctx, n)
    for x in all_points(ctx, n):
        on = sum(1 for h in normals if sum(a * b for a, b in zip(h, x)) % q == 0)
        assert on == num_points(n - 1, q)


def test_hyperplane_section_examples():
    H = hyperplane(GF2, (1, 0, 0))  # x1 = 0
    U = subspace_from_generators(GF2, 3, [(1, 0, 0), (0, 1, 0)])
    assert hyperplane_section(U, H) == subspace_from_generators(GF2, 3, [(0, 1, 0)])
    V = subspace_from_generators(GF2, 3, [(0, 1, 0), (0, 0, 1)])
    assert hyperplane_section(V, H) == V
    assert normal_vector(H) == (1, 0, 0)


def test_hyperplane_section_dimensions():
    ctx = GF3
    subs = enumerate_k_subspaces(3, 4, 2)
    for H in enumerate_hyperplanes(ctx, 4):
        for U in subs[::7]:
            S = hyperplane_section(U, H)
            if H.contains(U):
                assert S == U
            else:
                assert S.dim == 1 and H.contains(S) and U.contains(S)
