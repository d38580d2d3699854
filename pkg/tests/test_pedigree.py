import pytest

from stackperc.bootstrap import Instance, close, run_instance
from stackperc.faces import FaceSet, betti_top
from stackperc.pedigree import (
    Pedigree,
    PedigreeViolation,
    check_excess_bound,
    excess_bound,
    extract_witness,
    fig6_pedigree,
    generate_Gk,
    is_proper,
    is_valid,
    one_move,
    random_balanced_proper,
    random_proper,
    reduce_labels,
    stats,
    validate,
)
from stackperc.pedigree.core import PedigreeStats
from stackperc.pedigree.families import random_shape, root_subtree_leaf_counts
from stackperc.bootstrap import make_rng


def test_single_node():
    P = Pedigree.single((1, 2, 3))
    assert stats(P).as_tuple() == (0, 1, 0, 0, 0)


def test_one_move():
    P = one_move(2)
    assert stats(P).as_tuple() == (1, 3, 1, 0, 0)
    assert sorted(P.leaves()) == [(1, 2, 4), (1, 3, 4), (2, 3, 4)]


def test_fig6():
    P = fig6_pedigree()
    validate(P)
    st = stats(P)
    assert st.as_tuple() == (6, 11, 3, 4, 2)
    assert check_excess_bound(st)
    assert betti_top(P.faces()) == 7


@pytest.mark.parametrize("k", range(4, 13))
def test_Gk_family(k):
    P = generate_Gk(2, k)
    validate(P)
    st = stats(P)
    assert st.s == k - 3
    assert check_excess_bound(st)


def test_Gk_guard():
    with pytest.raises(ValueError):
        generate_Gk(2, 3)


def test_Gk_ratio_decreases():
    ratios = []
    for k in range(5, 13):
        st = stats(generate_Gk(2, k))
        ratios.append(st.b / st.a ** 1.5)
    assert ratios == sorted(ratios, reverse=True)


def test_excess_bound_integer_form():
    # the integer decision agrees with the float formula away from equality
    for d in (2, 3):
        for a in range(30):
            for b in range(200):
                gap = excess_bound(d, a) - b
                if abs(gap) < 1e-6:
                    continue
                # l = ds + 1 + a and b = dm - l + 1 pick m, l, s
                s_ = 1
                l = d * s_ + 1 + a
                if (b + l - 1) % d:
                    continue
                st = PedigreeStats(d, (b + l - 1) // d, l, s_)
                assert (st.a, st.b) == (a, b)
                assert check_excess_bound(st) == (gap > 0)


def test_negative_a_fails():
    assert not check_excess_bound(PedigreeStats(2, m=1, l=1, s=5))


def test_validation_conditions():
    P = one_move(2)
    bad_out = Pedigree(2, P.nodes, 0, P.out_label, ((1, 2),) + P.children[1:])
    with pytest.raises(PedigreeViolation) as e:
        validate(bad_out)
    assert e.value.condition == "out-degree"
    bad_root = Pedigree(2, P.nodes + ((5, 6, 7),), 0, P.out_label + (None,), P.children + ((),))
    with pytest.raises(PedigreeViolation) as e:
        validate(bad_root)
    assert e.value.condition == "root"
    bad_stack = Pedigree(2, ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 5)), 0, (4, None, None, None), ((1, 2, 3), (), (), ()))
    with pytest.raises(PedigreeViolation) as e:
        validate(bad_stack)
    assert e.value.condition == "stacking"
    dup = Pedigree(2, ((1, 2, 3), (1, 2, 3)), 0, (None, None), ((), ()))
    assert not is_valid(dup)


def test_cycle_detected():
    # 123 -4-> {234,134,124}; 124 -3-> would need 123 again: build by hand
    nodes = ((1, 2, 3), (2, 3, 4), (1, 3, 4), (1, 2, 4))
    children = ((3, 2, 1), (), (), (0, 2, 1))
    P = Pedigree(2, nodes, 0, (4, None, None, 3), children)
    assert not is_valid(P)


def test_json_roundtrip():
    P = fig6_pedigree()
    Q = Pedigree.from_json(P.to_json())
    assert Q == P


def test_dot_boxes_leaves():
    dot = one_move(2).to_dot()
    assert dot.count("shape=box") == 3 and dot.count("shape=circle]") == 1


@pytest.mark.parametrize("d", [2, 3])
def test_random_proper(d):
    for seed in range(20):
        s = 1 + seed % 8
        P = random_proper(d, s, s + d + 4, seed)
        validate(P)
        assert is_proper(P)
        st = stats(P)
        assert st.as_tuple() == (s, d * s + 1, s, 0, 0)
        assert random_proper(d, s, s + d + 4, seed) == P


def test_random_proper_pool_guard():
    with pytest.raises(ValueError):
        random_proper(2, 5, 7, 0)


def test_balanced():
    P = random_balanced_proper(2, 2, 14, 0)
    assert stats(P).s == 7
    assert root_subtree_leaf_counts(P) == [5, 5, 5]


def test_uniform_shapes():
    rng = make_rng(0)
    counts = {}
    for _ in range(6000):
        counts[random_shape(2, 3, rng).code] = counts.get(random_shape(2, 3, rng).code, 0) + 1
    assert len(counts) == 12
    assert max(counts.values()) / min(counts.values()) < 1.5


def test_witness_toy():
    st = close(FaceSet.from_faces(4, 2, [(1, 2, 3), (1, 2, 4), (1, 3, 4)]))
    P = extract_witness(st, (2, 3, 4))
    assert stats(P).as_tuple() == (1, 3, 1, 0, 0)
    assert P.outgoing() == {(2, 3, 4): 1}
    assert extract_witness(st, (1, 2, 3)) == Pedigree.single((1, 2, 3))


def test_witness_healthy_is_none():
    st = close(FaceSet.from_faces(5, 2, [(1, 2, 3)]))
    assert extract_witness(st, (3, 4, 5)) is None


def test_witnesses_validate_and_leaves_in_y0():
    for seed in range(10):
        st = run_instance(Instance(12, 2, 0.35, seed))
        y0 = set(st.y0)
        for f in list(st.infected)[:40]:
            P = extract_witness(st, f)
            validate(P)
            assert set(P.leaves()) <= y0
            assert check_excess_bound(stats(P))


def test_reduce_labels_bracket():
    st = run_instance(Instance(40, 2, 0.1, 0))
    P = None
    for r in st.order[::-1]:
        from stackperc.faces import colex_unrank

        P = extract_witness(st, colex_unrank(int(r), 3))
        if stats(P).s >= 10:
            break
    s = stats(P).s
    assert s >= 10
    for k in range(0, s):
        _, sub = reduce_labels(P, k)
        validate(sub)
        sp = stats(sub).s
        assert k / 3 <= sp <= k


def test_reduce_labels_needs_k_below_s():
    with pytest.raises(ValueError):
        reduce_labels(one_move(2), 1)
