"""Concrete pedigree families: the extremal G_k, a fixed (6,11,3) example,
and random proper / balanced proper pedigrees."""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

import numpy as np

from ..analysis import TreeShape
from ..bootstrap import make_rng
from .core import Pedigree, stack_children


def generate_Gk(d: int, k: int) -> Pedigree:
    """Level ``j`` (d+1 <= j <= k) holds ``{j} + f`` for all d-subsets f of [j-1];
    every node below level k has outgoing label ``j+1``."""
    if k <= d + 1:
        raise ValueError(f"G_k needs k > d+1, got k={k}, d={d}")
    out = {}
    for j in range(d + 1, k):
        for f in combinations(range(1, j), d):
            out[f + (j,)] = j + 1
    return Pedigree.build(d, tuple(range(1, d + 2)), out)


def fig6_pedigree() -> Pedigree:
    """A (6,11,3)-pedigree for d=2 whose face set has beta_2 = 7 > m = 6."""
    out = {
        (1, 2, 3): 6,
        (2, 3, 6): 5,
        (2, 5, 6): 4,
        (1, 2, 6): 4,
        (1, 2, 4): 5,
        (1, 4, 5): 3,
    }
    return Pedigree.build(2, (1, 2, 3), out)


def one_move(d: int, z: int | None = None) -> Pedigree:
    root = tuple(range(1, d + 2))
    return Pedigree.build(d, root, {root: d + 2 if z is None else z})


def proper_from_shape(shape: TreeShape | str, root: Sequence[int], labels: Sequence[int]) -> Pedigree:
    """Realize a tree shape as a proper pedigree.

    Internal nodes take ``labels`` in preorder.
    """
    code = shape.code if isinstance(shape, TreeShape) else shape
    d = len(root) - 1
    if code.count("I") != len(labels):
        raise ValueError("need exactly one label per internal node")
    out = {}
    pos = 0
    lab = iter(labels)

    def walk(u):
        nonlocal pos
        c = code[pos]
        pos += 1
        if c == "L":
            return
        z = next(lab)
        out[u] = z
        for ch in stack_children(u, z):
            walk(ch)

    walk(tuple(root))
    return Pedigree.build(d, tuple(root), out)


def random_shape(d: int, s: int, rng: np.random.Generator) -> TreeShape:
    """Uniform (d+1)-ary tree with ``s`` internal nodes (cycle lemma).

    A uniformly shuffled word of ``s`` internal and ``ds+1`` leaf symbols has
    exactly one cyclic rotation that is a valid preorder code.
    """
    word = np.array([1] * s + [0] * (d * s + 1), dtype=np.int8)
    rng.shuffle(word)
    steps = np.where(word == 1, d, -1)
    prefix = np.cumsum(steps)
    # rotate to start just after the first position of the minimum prefix sum
    start = int(np.argmin(prefix)) + 1
    word = np.roll(word, -start)
    return TreeShape(d, "".join("I" if x else "L" for x in word))


def _check_pool(n: int, d: int, s: int) -> None:
    if n < s + d + 1:
        raise ValueError(f"label pool too small: need n >= s+d+1 = {s + d + 1}, got n={n}")


def random_proper(d: int, s: int, n: int, seed: int, root: Sequence[int] | None = None) -> Pedigree:
    """Uniform shape in T_s, distinct outgoing labels drawn without replacement
    from [n] minus the root."""
    _check_pool(n, d, s)
    rng = make_rng(seed)
    root = tuple(range(1, d + 2)) if root is None else tuple(root)
    shape = random_shape(d, s, rng)
    pool = [v for v in range(1, n + 1) if v not in root]
    labels = [int(x) for x in rng.choice(pool, size=s, replace=False)]
    return proper_from_shape(shape, root, labels)


def random_balanced_proper(d: int, s_prime: int, n: int, seed: int) -> Pedigree:
    """Balanced proper pedigree: the root's d+1 subtrees each have ``s_prime``
    internal nodes (uniform shapes), so ``s = (d+1) s_prime + 1``."""
    s = (d + 1) * s_prime + 1
    _check_pool(n, d, s)
    rng = make_rng(seed)
    root = tuple(range(1, d + 2))
    subs = [random_shape(d, s_prime, rng).code for _ in range(d + 1)]
    pool = [v for v in range(1, n + 1) if v not in root]
    labels = [int(x) for x in rng.choice(pool, size=s, replace=False)]
    return proper_from_shape("I" + "".join(subs), root, labels)


def is_proper(P: Pedigree) -> bool:
    zs = [z for z in P.out_label if z is not None]
    return len(set(zs)) == len(zs) and not set(zs) & set(P.root_face)


def root_subtree_leaf_counts(P: Pedigree) -> list[int]:
    return [len(P.subpedigree(c).leaves()) for c in P.children[P.root]]
