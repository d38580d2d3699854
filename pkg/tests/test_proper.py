import itertools

import pytest

from stackperc.bootstrap import make_rng
from stackperc.pedigree import (
    LabelClass,
    Pedigree,
    classify_labels,
    enumerate_P,
    is_proper,
    random_balanced_proper,
    random_proper,
    stats,
    subpedigree_H,
    validate,
    verify_subpedigree_H,
)
from stackperc.pedigree.proper import (
    bound_count_given_B,
    bound_lemma_count,
    leaf_complements,
    link_is_cycle,
)


def fig5_tree():
    return Pedigree.build(2, (1, 2, 3), {(1, 2, 3): 4, (1, 2, 4): 5, (2, 3, 4): 6, (3, 4, 6): 7, (3, 6, 7): 8})


def test_fig5_example():
    T = fig5_tree()
    P = {(1, 2, 5), (2, 3, 6), (3, 7, 8), (6, 7, 8)}
    H = subpedigree_H(T, P)
    validate(H)
    assert H.outgoing() == {(1, 2, 3): 7, (2, 3, 7): 6, (1, 2, 7): 5, (3, 6, 7): 8}
    assert P <= set(H.leaves())


def test_H_full_and_empty():
    T = fig5_tree()
    assert subpedigree_H(T, T.leaves()) == T
    assert subpedigree_H(T, []) == Pedigree.single((1, 2, 3))


def test_H_rejects_non_leaves():
    with pytest.raises(ValueError):
        subpedigree_H(fig5_tree(), [(1, 2, 3)])


def test_H_random():
    rng = make_rng(5)
    for seed in range(30):
        T = random_proper(2, 6, 12, seed)
        leaves = T.leaves()
        P = [f for f in leaves if rng.random() < 0.4]
        H = subpedigree_H(T, P)
        validate(H)
        assert is_proper(H)
        R = {v for f in P for v in f} - {1, 2, 3}
        assert stats(H).s == len(R)
        assert set(P) <= set(H.leaves())


def test_subpedigree_H_exhaustive_small():
    rep = verify_subpedigree_H(2, 3)
    assert rep.ok and rep.trees == 1 + 3 + 12


def test_leaf_complements_sizes():
    T = fig5_tree()
    comps = leaf_complements(T)
    assert frozenset() in comps  # the root
    assert len(comps) == len(T.nodes)


def test_classify_trivial():
    L = random_balanced_proper(2, 2, 14, 1)
    leaves = L.leaves()
    assert set(classify_labels(leaves, L).values()) == {LabelClass.ENCIRCLED_IN_P}
    assert set(classify_labels([], L).values()) == {LabelClass.ENCIRCLED_IN_COMPLEMENT}


def test_classify_random_cross_check():
    rng = make_rng(2)
    for seed in range(40):
        L = random_balanced_proper(2, 2, 14, seed)
        P = [f for f in L.leaves() if rng.random() < 0.5]
        cls = classify_labels(P, L)  # raises if cycle and link tests disagree
        assert len(cls) == 7


def test_classify_rejects():
    L = random_balanced_proper(2, 1, 8, 0)
    with pytest.raises(ValueError):
        classify_labels([(1, 2, 3)], L)


def test_link_is_cycle():
    assert link_is_cycle([(1, 2), (2, 3), (1, 3)])
    assert not link_is_cycle([(1, 2), (2, 3)])
    assert not link_is_cycle([(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)])


def test_enumeration_counts():
    rep = enumerate_P(2, 1, 7)
    assert rep.num_L == rep.expected_L == 24
    assert rep.ok


def test_enumeration_guard():
    with pytest.raises(ValueError):
        enumerate_P(2, 2, 12)


def test_bounds_relation():
    # the fixed-B bound summed over B never beats the lemma's closed form by much
    for r in range(1, 6):
        for t in range(r + 1):
            assert bound_count_given_B(2, 9, r, t) > 0
            assert bound_lemma_count(2, 9, r, t) > 0
