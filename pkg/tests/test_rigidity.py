import itertools

import pytest

from stackperc.bootstrap import make_rng
from stackperc.faces import faces_of
from stackperc.linalg import det_int, rank_exact
from stackperc.pedigree import fig6_pedigree, generate_Gk, one_move, random_proper
from stackperc.pedigree.core import Pedigree
from stackperc.rigidity import (
    GeneralPositionError,
    PointConfig,
    claim_a2_rhs,
    claim_a3_negative_control,
    cofactor_vector,
    face_matrix,
    flat,
    inner,
    insertion_position,
    left_kernel_basis,
    motion_derivative,
    rigidity_matrix,
    subdivision_ranks,
    verify_claim_a2,
    verify_claim_a3,
    verify_prop_a1,
)


def unit_triangle():
    return PointConfig(2, ((0, 0), (1, 0), (0, 1)))


def test_face_matrix_layout():
    A = face_matrix((1, 2, 3), unit_triangle())
    assert A == [[0, 1, 0], [0, 0, 1], [1, 1, 1]]
    assert abs(det_int(A)) == 1


def test_collinear_rejected():
    cfg = PointConfig(2, ((0, 0), (1, 1), (2, 2)))
    assert not cfg.in_general_position()
    with pytest.raises(GeneralPositionError):
        cfg.require_general_position()


def test_random_config_general_position():
    cfg = PointConfig.random(3, 8, 1)
    assert all(det_int(face_matrix(f, cfg)) for f in itertools.combinations(range(1, 9), 4))
    assert PointConfig.random(3, 8, 1) == cfg


def test_cofactor_support_and_sign():
    cfg = PointConfig.random(2, 6, 0)
    w = cofactor_vector((2, 4, 5), cfg)
    assert all(not any(w[v - 1]) for v in (1, 3, 6))
    # sum over the columns of A_f of cofactors of row i times row d+1 entries is 0 (i < d+1)
    for i in range(2):
        assert sum(w[v - 1][i] for v in (2, 4, 5)) == 0


def test_derivative_identity():
    rng = make_rng(0)
    for d in (2, 3):
        cfg = PointConfig.random(d, d + 3, d)
        for f in itertools.combinations(range(1, d + 4), d + 1):
            z = [[int(x) for x in row] for row in rng.integers(-9, 10, size=(d + 3, d))]
            assert motion_derivative(f, cfg, z) == inner(flat(z), flat(cofactor_vector(f, cfg)))


@pytest.mark.parametrize("d", [2, 3])
def test_kernel_basis(d):
    cfg = PointConfig.random(d, d + 4, 7)
    ker = left_kernel_basis(cfg)
    assert len(ker) == rank_exact(ker) == d * d + d - 1
    _, A = rigidity_matrix(faces_of(d + 4, d), cfg)
    for col in zip(*A):
        assert all(inner(z, col) == 0 for z in ker)
    assert rank_exact(A) <= d * 3 + 1


def test_single_face_rank():
    _, A = rigidity_matrix([(1, 2, 3)], PointConfig.random(2, 3, 0))
    assert rank_exact(A) == 1


def test_prop_a1_examples():
    assert verify_prop_a1(Pedigree.single((1, 2, 3))).rank == 1
    r = verify_prop_a1(one_move(2))
    assert (r.rank, r.ker_dim, r.passed) == (3, 0, True)
    r = verify_prop_a1(fig6_pedigree())
    assert (r.l, r.s, r.rank, r.ker_dim, r.passed) == (11, 3, 7, 4, True)


def test_prop_a1_families():
    for k in range(4, 8):
        assert verify_prop_a1(generate_Gk(2, k)).passed
    for seed in range(10):
        assert verify_prop_a1(random_proper(3, 1 + seed % 6, 12, seed), seed=seed).passed


def test_prop_a1_cfg_guard():
    with pytest.raises(ValueError):
        verify_prop_a1(fig6_pedigree(), PointConfig.random(2, 4, 0))


@pytest.mark.parametrize("d", [2, 3])
def test_claim_a2_every_position(d):
    cfg = PointConfig.random(d, d + 5, 11)
    seen = set()
    for f in itertools.combinations(range(1, d + 6), d + 1):
        for z in range(1, d + 6):
            if z not in f:
                seen.add(insertion_position(f, z))
                assert verify_claim_a2(f, z, cfg)
    assert seen == set(range(1, d + 3))


def test_claim_a2_sign_matters():
    # flipping one sign breaks the identity
    cfg = PointConfig.random(2, 6, 3)
    f, z = (2, 4, 5), 3
    lhs = flat(cofactor_vector(f, cfg))
    rhs = claim_a2_rhs(f, z, cfg)
    assert lhs == rhs
    assert [-x for x in rhs] != lhs


def test_claim_a2_rejects_z_in_f():
    with pytest.raises(ValueError):
        verify_claim_a2((1, 2, 3), 2, PointConfig.random(2, 4, 0))


def test_claim_a3():
    rng = make_rng(1)
    for t in range(20):
        d = 2 + t % 2
        cfg = PointConfig.random(d, 8, t)
        vs = [int(x) + 1 for x in rng.choice(8, size=d + 2, replace=False)]
        f, z = tuple(sorted(vs[:-1])), vs[-1]
        assert verify_claim_a3(f, z, [f], cfg)
        pool = [g for g in faces_of(8, d) if z not in g]
        extra = [pool[i] for i in rng.choice(len(pool), size=3, replace=False)]
        assert verify_claim_a3(f, z, extra, cfg, seed=t)
        assert claim_a3_negative_control(f, z, extra, cfg, seed=t) < d + 3


def test_claim_a3_rejects():
    cfg = PointConfig.random(2, 6, 0)
    with pytest.raises(ValueError):
        verify_claim_a3((1, 2, 3), 4, [(1, 4, 5)], cfg)


def test_subdivision_does_not_lower_rank():
    cfg = PointConfig.random(2, 7, 2)
    K = [(1, 2, 3), (1, 2, 4), (2, 5, 6)]
    before, after = subdivision_ranks(K, (1, 2, 3), 7, cfg)
    assert before <= after
