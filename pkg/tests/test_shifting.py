import itertools

import pytest

from stackperc.bootstrap import make_rng
from stackperc.faces import betti_top, faces_of
from stackperc.pedigree import fig6_pedigree, random_proper
from stackperc.shifting import (
    GenericityFailure,
    ShiftContext,
    ShiftedFamily,
    b_top,
    check_nevo_all,
    claim33_face,
    dominance,
    is_shifted,
    nevo_D,
    shift,
    verify_claim33,
    verify_nevo,
)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_simplex_boundary_is_fixed(d):
    sphere = set(itertools.combinations(range(1, d + 3), d + 1))
    assert shift(sphere, ShiftContext(d + 2)).as_set() == sphere


@pytest.mark.parametrize("d", [2, 3])
def test_single_face(d):
    f = tuple(range(3, d + 4))
    assert shift([f], ShiftContext(d + 5)).faces == (tuple(range(1, d + 2)),)


def test_fig6_shift():
    F = shift(fig6_pedigree().faces(), ShiftContext(6))
    assert is_shifted(F)
    assert b_top(F) == 7
    assert claim33_face(2, 3) in F


def test_bjorner_kalai_random():
    rng = make_rng(3)
    for t in range(25):
        n = int(rng.integers(5, 9))
        K = [f for f in faces_of(n, 2) if rng.random() < 0.5] or [(1, 2, 3)]
        F = shift(K, ShiftContext(n, t))
        assert len(F) == len(K) and is_shifted(F)
        assert b_top(F) == betti_top(K)


def test_seed_independence():
    rng = make_rng(4)
    K = [f for f in faces_of(8, 2) if rng.random() < 0.4]
    assert shift(K, ShiftContext(8, 1)) == shift(K, ShiftContext(8, 99))


def test_monotone():
    rng = make_rng(6)
    for t in range(20):
        K = [f for f in faces_of(8, 2) if rng.random() < 0.5]
        sub = [f for f in K if rng.random() < 0.5] or K[:1]
        ctx = ShiftContext(8, t)
        assert shift(sub, ctx).as_set() <= shift(K, ctx).as_set()


def test_dominance_matches_shifted_closure():
    # a family is shifted iff it is a down-set for the componentwise order
    for n in range(4, 7):
        all_faces = list(faces_of(n, 1))
        for mask in range(1, 1 << len(all_faces)):
            fam = {f for i, f in enumerate(all_faces) if mask >> i & 1}
            down = all(g in fam for f in fam for g in all_faces if dominance(g, f))
            assert is_shifted(fam) == down


def test_b_top_needs_shifted():
    with pytest.raises(ValueError):
        b_top(ShiftedFamily(2, ((2, 3, 4),)))


def test_context_guard():
    with pytest.raises(ValueError):
        ShiftContext(40)


def test_claim33_random_proper():
    for seed in range(20):
        d = 2 + seed % 2
        s = 1 + seed % 5
        assert verify_claim33(random_proper(d, s, s + d + 1, seed).faces(), seed=seed)


def test_claim33_needs_labels():
    with pytest.raises(ValueError):
        verify_claim33([(1, 2, 3)])


def test_nevo_claim33_step():
    # K' = one-move pedigree (s=1), L = one-move on the new label 5 at u=123
    Kp = [(1, 2, 3), (2, 3, 4), (1, 3, 4), (1, 2, 4)]
    L = [(1, 2, 3), (2, 3, 5), (1, 3, 5), (1, 2, 5)]
    ctx = ShiftContext(5)
    v0 = claim33_face(2, 2)
    assert v0 == (1, 3, 5)
    assert (nevo_D(Kp, v0, ctx), nevo_D(L, v0, ctx), nevo_D([(1, 2, 3)], v0, ctx)) == (1, 1, 0)
    chk = verify_nevo(Kp, L, v0, ctx)
    assert chk.in_shift and chk.predicted and chk.ok


def test_nevo_all_faces():
    Kp = [(1, 2, 3), (2, 3, 4), (1, 3, 4), (1, 2, 4)]
    L = [(1, 2, 3), (2, 3, 5), (1, 3, 5), (1, 2, 5)]
    assert all(c.ok for c in check_nevo_all(Kp, L, ShiftContext(5)))


def test_nevo_requires_one_shared_face():
    with pytest.raises(ValueError):
        verify_nevo([(1, 2, 3)], [(2, 3, 4)], (1, 2, 3), ShiftContext(4))
