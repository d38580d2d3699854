"""Witness pedigrees read off bootstrap certificates, and label reduction."""

from __future__ import annotations

from typing import Sequence

from ..bootstrap import BootstrapState
from ..faces import Face, check_face, colex_rank, colex_unrank
from .core import Pedigree, stats


def extract_witness(state: BootstrapState, f: Sequence[int]) -> Pedigree | None:
    """Expand certificates downward from ``f``; ``None`` if ``f`` is healthy.

    Faces of the initial complex are leaves. Every certificate parent was
    infected strictly earlier, so the result is acyclic with ``f`` as its
    only source.
    """
    f = check_face(f, state.n, state.d)
    r = colex_rank(f)
    if not state.infected.bits[r]:
        return None
    k = state.d + 1
    outgoing: dict[Face, int] = {}
    seen = {r}
    stack = [r]
    while stack:
        g = stack.pop()
        if state.y0.bits[g]:
            continue
        c = state.certificate(g)
        outgoing[colex_unrank(g, k)] = c.apex
        for q in c.parents:
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return Pedigree.build(state.d, f, outgoing)


def _label_sets(P: Pedigree) -> list[frozenset]:
    """Labels used by the sub-DAG below each node (iterative post-order)."""
    out: list[frozenset | None] = [None] * len(P.nodes)
    stack = [(P.root, False)]
    while stack:
        u, done = stack.pop()
        if out[u] is not None:
            continue
        if done:
            labs = set(P.nodes[u])
            for c in P.children[u]:
                labs |= out[c]
            out[u] = frozenset(labs)
        else:
            stack.append((u, True))
            stack.extend((c, False) for c in P.children[u] if out[c] is None)
    return out


def reduce_labels(source: Pedigree | BootstrapState, k: int, f: Sequence[int] | None = None) -> tuple[Face, Pedigree]:
    """Descend into sub-pedigrees until the label surplus is at most ``k``.

    At each step the child with the largest label surplus is taken (ties to
    the lowest child position); that child's surplus is at least
    ``(s - 1) / (d + 1)``. The returned sub-pedigree has surplus ``s'`` with
    ``k / (d + 1) <= s' <= k``.
    """
    if isinstance(source, BootstrapState):
        if f is None:
            raise ValueError("a face is required when reducing from a bootstrap state")
        P = extract_witness(source, f)
        if P is None:
            raise ValueError(f"{tuple(f)} is not infected")
    else:
        P = source
    d = P.d
    s = stats(P).s
    if not 0 <= k < s:
        raise ValueError(f"need 0 <= k < s = {s}, got k={k}")
    labs = _label_sets(P)
    node = P.root
    cur = s
    while cur > k:
        best = None
        best_s = -1
        for c in P.children[node]:
            sc = len(labs[c]) - (d + 1)
            if sc > best_s:
                best, best_s = c, sc
        node, cur = best, best_s
    sub = P.subpedigree(node)
    return sub.root_face, sub
