import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stackperc.faces import (
    FaceSet,
    InvalidFace,
    betti_top,
    boundary_matrix,
    check_face,
    colex_rank,
    colex_unrank,
    faces_of,
    facets,
    link,
)
from stackperc import linalg


@st.composite
def face_strategy(draw, max_label=40, max_k=5):
    k = draw(st.integers(1, max_k))
    return tuple(sorted(draw(st.sets(st.integers(1, max_label), min_size=k, max_size=k))))


@given(face_strategy())
def test_colex_roundtrip(f):
    assert colex_unrank(colex_rank(f), len(f)) == f


def test_colex_is_independent_of_n():
    # rank of 123 is 0 and of 124 is 1 whatever the ambient vertex count
    assert colex_rank((1, 2, 3)) == 0
    assert colex_rank((1, 2, 4)) == 1
    assert colex_rank((2, 3, 4)) == 3
    for n in (5, 9):
        assert [colex_rank(f) for f in faces_of(n, 2)] == list(range(comb(n, 3)))


def test_check_face_rejects():
    with pytest.raises(InvalidFace):
        check_face((1, 1, 2))
    with pytest.raises(InvalidFace):
        check_face((0, 1, 2))
    with pytest.raises(InvalidFace):
        check_face((1, 2, 9), n=8)
    with pytest.raises(InvalidFace):
        check_face((1, 2), d=2)
    with pytest.raises(InvalidFace):
        check_face((3, 1, 2))
    assert check_face([1, 2, 3]) == (1, 2, 3)


def test_facets_order_by_omitted_vertex():
    assert facets((1, 2, 3, 4)) == [(2, 3, 4), (1, 3, 4), (1, 2, 4), (1, 2, 3)]


def test_link():
    K = [(1, 2, 3), (1, 3, 4), (2, 3, 4)]
    assert link(3, K) == {(1, 2), (1, 4), (2, 4)}
    assert link(7, K) == set()


@given(st.integers(3, 9), st.data())
@settings(max_examples=40)
def test_faceset_set_ops(n, data):
    d = 2
    a = data.draw(st.sets(st.sampled_from(list(faces_of(n, d)))))
    b = data.draw(st.sets(st.sampled_from(list(faces_of(n, d)))))
    A, B = FaceSet.from_faces(n, d, a), FaceSet.from_faces(n, d, b)
    assert set(A | B) == a | b
    assert set(A & B) == a & b
    assert (A <= B) == (a <= b)
    assert len(A) == len(a)
    assert list(A) == sorted(a, key=colex_rank)


def test_faceset_json_roundtrip():
    A = FaceSet.from_faces(6, 2, [(1, 2, 3), (2, 5, 6)])
    B = FaceSet.from_json(A.to_json())
    assert A == B and B.n == 6 and B.d == 2


def test_boundary_squared_is_zero(rng):
    for _ in range(10):
        K = [f for f in faces_of(7, 3) if rng.random() < 0.4]
        if not K:
            continue
        rows, cols, M = boundary_matrix(K)
        rows2, cols2, M2 = boundary_matrix(rows)
        prod = np.array(M2) @ np.array(M)
        assert not prod.any()


def test_boundary_signs():
    rows, cols, M = boundary_matrix([(1, 2, 3)])
    # omitting position 0, 1, 2 gives signs +, -, +
    assert dict(zip(rows, (r[0] for r in M))) == {(2, 3): 1, (1, 3): -1, (1, 2): 1}


@pytest.mark.parametrize("d", [1, 2, 3])
def test_betti_of_sphere(d):
    sphere = list(itertools.combinations(range(1, d + 3), d + 1))
    assert betti_top(sphere) == 1
    assert betti_top(sphere, method="modular") == 1
    assert betti_top(sphere[:-1]) == 0


def test_betti_empty_status():
    assert betti_top([], with_status=True) == (0, "empty")


def test_betti_methods_agree(rng):
    for _ in range(10):
        K = [f for f in faces_of(8, 2) if rng.random() < 0.35]
        vals = {betti_top(K, method=m) for m in ("bareiss", "modular", f"prime:{linalg.PRIME_A}")}
        assert len(vals) == 1
