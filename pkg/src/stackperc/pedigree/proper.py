"""Proper pedigrees: the H(P, T) reduction, label classification, and the
exhaustive enumeration of leaf subsets of balanced proper pedigrees."""

from __future__ import annotations

import enum
import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, perm
from typing import Iterable, Sequence

from ..analysis import alpha, enumerate_trees, fuss_catalan
from ..faces import Face, colex_rank, link
from .core import Pedigree
from .families import is_proper, proper_from_shape


@dataclass
class _Node:
    face: Face
    z: int | None = None
    kids: list["_Node"] = field(default_factory=list)

    def leaves(self) -> list[Face]:
        if not self.kids:
            return [self.face]
        return [f for k in self.kids for f in k.leaves()]


def _to_tree(P: Pedigree, i: int | None = None) -> _Node:
    i = P.root if i is None else i
    return _Node(P.nodes[i], P.out_label[i], [_to_tree(P, c) for c in P.children[i]])


def _to_pedigree(d: int, t: _Node) -> Pedigree:
    out = {}
    stack = [t]
    while stack:
        u = stack.pop()
        if u.kids:
            out[u.face] = u.z
            stack.extend(u.kids)
    return Pedigree.build(d, t.face, out)


def _sub(face: Face, z: int, y: int) -> Face:
    return tuple(sorted(y if v == z else v for v in face))


def _deepest_with(t: _Node, z: int) -> _Node:
    """Internal node containing ``z`` at maximal depth; ties by colex order."""
    best = None
    best_key = None
    frontier = [(t, 0)]
    while frontier:
        u, depth = frontier.pop()
        if u.kids and z in u.face:
            key = (-depth, colex_rank(u.face))
            if best_key is None or key < best_key:
                best, best_key = u, key
        frontier.extend((k, depth + 1) for k in u.kids)
    return best


def _h(t: _Node, P: frozenset) -> _Node:
    o = t.face
    if not t.kids or not P:
        return _Node(o)
    z = t.z
    R = {v for f in P for v in f} - set(o)
    parts = [P & frozenset(k.leaves()) for k in t.kids]
    subs = [_h(k, pj) for k, pj in zip(t.kids, parts)]
    if z in R:
        return _Node(o, z, subs)
    # z must go: use the lowest-index subtree that still carries part of P
    j = next(i for i, pj in enumerate(parts) if pj)
    u = _deepest_with(subs[j], z)
    y = u.z
    u_prime = _sub(u.face, z, y)
    t_u_prime = next(k for k in u.kids if k.face == u_prime)

    def rebuild(node: _Node) -> _Node:
        if node is u:
            return t_u_prime
        return _Node(
            _sub(node.face, z, y),
            None if node.z is None else (y if node.z == z else node.z),
            [rebuild(k) for k in node.kids],
        )

    return rebuild(_Node(o, z, subs))


def subpedigree_H(T: Pedigree, P: Iterable[Sequence[int]]) -> Pedigree:
    """Proper pedigree for the root of ``T`` using only the labels of ``P``
    and containing ``P`` among its leaves."""
    if not is_proper(T):
        raise ValueError("T must be a proper pedigree")
    P = frozenset(tuple(f) for f in P)
    leaves = set(T.leaves())
    if not P <= leaves:
        raise ValueError("P must be a subset of the leaves of T")
    return _to_pedigree(T.d, _h(_to_tree(T), P))


def leaf_complements(T: Pedigree) -> list[frozenset]:
    """``leaves(T) - leaves(T_v)`` for every node ``v`` of ``T``."""
    t = _to_tree(T)
    all_leaves = frozenset(t.leaves())
    out = []
    stack = [t]
    while stack:
        u = stack.pop()
        out.append(all_leaves - frozenset(u.leaves()))
        stack.extend(u.kids)
    return out


class LabelClass(enum.Enum):
    ENCIRCLED_IN_P = "encircled-in-P"
    ENCIRCLED_IN_COMPLEMENT = "encircled-in-complement"
    BOUNDARY = "boundary"


def link_is_cycle(edges: Iterable[Sequence[int]]) -> bool:
    """True iff the edge set is a single cycle (connected, all degrees 2)."""
    edges = [tuple(e) for e in edges]
    if len(edges) < 3:
        return False
    adj: dict[int, list[int]] = defaultdict(list)
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    if any(len(v) != 2 for v in adj.values()):
        return False
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(adj)


def classify_labels(
    P: Iterable[Sequence[int]],
    L: Pedigree | Iterable[Sequence[int]],
    root: Sequence[int] | None = None,
    cross_check: bool = True,
) -> dict[int, LabelClass]:
    """Classify each internal label of ``L`` relative to the subset ``P``.

    ``L`` is a balanced proper pedigree or its leaf set (then ``root``
    defaults to ``(1, ..., d+1)``). For d=2 the link-equality answer is
    compared against the cycle test on the links of ``P`` and ``L - P``.
    """
    if isinstance(L, Pedigree):
        root = L.root_face
        leaves = set(L.leaves())
    else:
        leaves = {tuple(f) for f in L}
        d = len(next(iter(leaves))) - 1
        root = tuple(range(1, d + 2)) if root is None else tuple(root)
    P = {tuple(f) for f in P}
    if not P <= leaves:
        raise ValueError("P must be a subset of L")
    comp = leaves - P
    d = len(root) - 1
    internal = sorted({v for f in leaves for v in f} - set(root))
    out = {}
    for z in internal:
        lp = link(z, P)
        ll = link(z, leaves)
        if lp == ll:
            c = LabelClass.ENCIRCLED_IN_P
        elif not lp:
            c = LabelClass.ENCIRCLED_IN_COMPLEMENT
        else:
            c = LabelClass.BOUNDARY
        if cross_check and d == 2:
            cyc_p = link_is_cycle(lp)
            cyc_c = link_is_cycle(link(z, comp))
            if cyc_p != (c is LabelClass.ENCIRCLED_IN_P) or cyc_c != (
                c is LabelClass.ENCIRCLED_IN_COMPLEMENT
            ):
                raise AssertionError(f"label {z}: link test says {c}, cycle test ({cyc_p}, {cyc_c})")
        out[z] = c
    return out


# -- exhaustive enumeration -------------------------------------------------

ENUM_PAIR_LIMIT = 250_000


def balanced_leaf_sets(d: int, s_prime: int, n: int) -> list[frozenset]:
    """Leaf sets of all balanced proper pedigrees rooted at ``(1..d+1)``."""
    s = (d + 1) * s_prime + 1
    root = tuple(range(1, d + 2))
    shapes = [t.code for t in enumerate_trees(d, s_prime)]
    pool = range(d + 2, n + 1)
    out = set()
    for combo in itertools.product(shapes, repeat=d + 1):
        code = "I" + "".join(combo)
        for labels in itertools.permutations(pool, s):
            T = proper_from_shape(code, root, labels)
            out.add(frozenset(T.leaves()))
    return sorted(out, key=lambda L: sorted(colex_rank(f) for f in L))


def bound_lemma_count(d: int, n: int, r: int, t: int) -> Fraction:
    """The lemma's bound on the number of P with (r - t, t) labels."""
    a = alpha(d)
    return 2 * (a * n) ** r * Fraction(2**d * r) ** t


def bound_count_given_B(d: int, n: int, r: int, t: int) -> Fraction:
    """The bound for a fixed boundary set B, times the choices of B."""
    a = alpha(d)
    return 2 * (a * n) ** (r - t) * (a * 2**d * r) ** t * comb(n - d - 1, t)


def bound_extensions(d: int, n: int, s: int, r: int, t: int) -> Fraction:
    a = alpha(d)
    return 2 * (a * n) ** (s - r) * (a * 2**d * (s - r + t)) ** t


@dataclass
class EnumerationReport:
    d: int
    s_prime: int
    n: int
    s: int
    num_L: int
    expected_L: int
    num_P: int
    bins: dict[tuple[int, int], int]
    bin_violations: list[tuple[int, int, int, Fraction, Fraction]]
    extension_violations: list[tuple[frozenset, int, Fraction]]
    max_extension_ratio: float

    @property
    def ok(self) -> bool:
        return self.num_L == self.expected_L and not self.bin_violations and not self.extension_violations


def enumerate_P(d: int, s_prime: int, n: int) -> EnumerationReport:
    """Enumerate every nonempty proper leaf subset P of every balanced proper
    s-pedigree of ``(1..d+1)``, classify its labels, and test both counting
    bounds.

    A label ``z`` of P is encircled when every L containing P has all of its
    z-faces inside P (equivalently lk_z(P) = lk_z(L)).
    """
    s = (d + 1) * s_prime + 1
    leaves_per = d * s + 1
    num_pedigrees = fuss_catalan(d, s_prime) ** (d + 1) * perm(n - d - 1, s)
    if num_pedigrees * (2**leaves_per - 2) > ENUM_PAIR_LIMIT:
        raise ValueError(
            f"enumeration too large: {num_pedigrees} pedigrees x {2**leaves_per - 2} subsets "
            f"exceeds {ENUM_PAIR_LIMIT}"
        )
    root = set(range(1, d + 2))
    Ls = balanced_leaf_sets(d, s_prime, n)
    # faces as bits
    all_faces = sorted({f for L in Ls for f in L}, key=colex_rank)
    bit = {f: 1 << i for i, f in enumerate(all_faces)}
    star = defaultdict(int)
    for f in all_faces:
        for v in f:
            star[v] |= bit[f]
    labels_of = {bit[f]: set(f) for f in all_faces}

    containing: dict[int, list[int]] = defaultdict(list)
    for L in Ls:
        bits = [bit[f] for f in L]
        mask_L = sum(bits)
        for k in range(1, len(bits)):
            for sub in itertools.combinations(bits, k):
                containing[sum(sub)].append(mask_L)

    bins: dict[tuple[int, int], int] = defaultdict(int)
    ext_viol = []
    worst = 0.0
    for pm, Lmasks in containing.items():
        labs = set()
        m = pm
        while m:
            low = m & -m
            labs |= labels_of[low]
            m ^= low
        R = labs - root
        r = len(R)
        t = 0
        for z in R:
            if any((Lm & star[z]) & ~pm for Lm in Lmasks):
                t += 1
        bins[(r, t)] += 1
        ub = bound_extensions(d, n, s, r, t)
        worst = max(worst, len(Lmasks) / float(ub))
        if len(Lmasks) > ub:
            ext_viol.append((pm, len(Lmasks), ub))

    bin_viol = []
    for (r, t), cnt in sorted(bins.items()):
        b1 = bound_count_given_B(d, n, r, t)
        b2 = bound_lemma_count(d, n, r, t)
        if cnt > b1 or cnt > b2:
            bin_viol.append((r, t, cnt, b1, b2))
    return EnumerationReport(
        d, s_prime, n, s, len(Ls), num_pedigrees, len(containing), dict(bins),
        bin_viol, ext_viol, worst,
    )


# -- exhaustive check of the H(P, T) construction ---------------------------


@dataclass
class SubpedigreeReport:
    d: int
    s_max: int
    trees: int = 0
    pairs: int = 0
    failures: list[tuple[str, str, tuple]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_H_pair(T: Pedigree, P: frozenset, complements: set[frozenset] | None = None) -> list[str]:
    """Failed properties for one (T, P); empty when everything holds."""
    d = T.d
    root = set(T.root_face)
    L = frozenset(T.leaves())
    R = {v for f in P for v in f} - root
    r = len(R)
    H = subpedigree_H(T, P)
    bad = []
    if H.root_face != T.root_face or not is_proper(H):
        bad.append("not a proper pedigree of the root")
    if {z for z in H.out_label if z is not None} != R:
        bad.append("labels differ from R")
    HL = frozenset(H.leaves())
    if not P <= HL:
        bad.append("P not among the leaves")
    if len(HL) != d * r + 1:
        bad.append("leaf count != dr+1")
    if (P == HL) != (P == L):
        bad.append("P = leaves(H) iff P = leaves(T)")
    if P != L:
        if complements is None:
            complements = set(leaf_complements(T))
        if len(P) > d * r:
            bad.append("|P| > dr")
        if (len(P) == d * r) != (P in complements):
            bad.append("|P| = dr iff P is a subtree complement")
    return bad


def verify_subpedigree_H(d: int = 2, s_max: int = 4) -> SubpedigreeReport:
    """Every tree shape with s <= s_max internal nodes (preorder labels
    d+2, d+3, ...) against every subset P of its leaves."""
    rep = SubpedigreeReport(d, s_max)
    root = tuple(range(1, d + 2))
    for s in range(1, s_max + 1):
        labels = list(range(d + 2, d + 2 + s))
        for shape in enumerate_trees(d, s):
            T = proper_from_shape(shape, root, labels)
            rep.trees += 1
            leaves = T.leaves()
            comps = set(leaf_complements(T))
            for k in range(len(leaves) + 1):
                for sub in itertools.combinations(leaves, k):
                    P = frozenset(sub)
                    rep.pairs += 1
                    for msg in check_H_pair(T, P, comps):
                        rep.failures.append((shape.code, msg, tuple(sorted(P))))
    return rep
