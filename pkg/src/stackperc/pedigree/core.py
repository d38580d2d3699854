"""Pedigrees: DAGs of d-faces built by repeated stacking moves.

A node ``u = {x_1 < ... < x_{d+1}}`` with outgoing label ``z`` has the d+1
children ``u - {x_i} + {z}``, listed in order of the omitted position ``i``.
Faces are deduplicated, so a face reached twice is a single node.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from ..faces import Face, check_face, colex_rank


class PedigreeViolation(ValueError):
    """A pedigree condition fails. ``condition`` names which one."""

    def __init__(self, condition: str, node: int | None, message: str):
        super().__init__(f"[{condition}] node {node}: {message}")
        self.condition = condition
        self.node = node


def stack_children(u: Face, z: int) -> list[Face]:
    return [tuple(sorted(u[:i] + u[i + 1:] + (z,))) for i in range(len(u))]


@dataclass(frozen=True)
class Pedigree:
    d: int
    nodes: tuple[Face, ...]
    root: int
    out_label: tuple[int | None, ...]
    children: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, d: int, root: Sequence[int], outgoing: Mapping[Face, int]) -> "Pedigree":
        """Grow the DAG from ``root`` by the stacking rule.

        ``outgoing`` maps each internal face to its outgoing label; every
        reachable face not in it is a leaf.
        """
        root = check_face(root, d=d)
        index = {root: 0}
        nodes = [root]
        kids: list[tuple[int, ...]] = []
        labels: list[int | None] = []
        i = 0
        while i < len(nodes):
            u = nodes[i]
            z = outgoing.get(u)
            labels.append(z)
            if z is None:
                kids.append(())
            else:
                ch = []
                for c in stack_children(u, z):
                    if c not in index:
                        index[c] = len(nodes)
                        nodes.append(c)
                    ch.append(index[c])
                kids.append(tuple(ch))
            i += 1
        return cls(d, tuple(nodes), 0, tuple(labels), tuple(kids))

    @classmethod
    def single(cls, face: Sequence[int]) -> "Pedigree":
        f = check_face(face)
        return cls(len(f) - 1, (f,), 0, (None,), ((),))

    @property
    def root_face(self) -> Face:
        return self.nodes[self.root]

    def internal(self) -> list[int]:
        return [i for i, c in enumerate(self.children) if c]

    def leaf_indices(self) -> list[int]:
        return [i for i, c in enumerate(self.children) if not c]

    def leaves(self) -> list[Face]:
        return [self.nodes[i] for i in self.leaf_indices()]

    def faces(self) -> list[Face]:
        return list(self.nodes)

    def labels(self) -> set[int]:
        out: set[int] = set()
        for f in self.nodes:
            out.update(f)
        return out

    def outgoing(self) -> dict[Face, int]:
        return {self.nodes[i]: z for i, z in enumerate(self.out_label) if z is not None}

    def edge_count(self) -> int:
        return sum(len(c) for c in self.children)

    def relabel(self, mapping: Mapping[int, int]) -> "Pedigree":
        """Apply an injective relabelling of vertex labels."""
        def mp(f):
            return tuple(sorted(mapping.get(v, v) for v in f))
        out = {mp(u): mapping.get(z, z) for u, z in self.outgoing().items()}
        return Pedigree.build(self.d, mp(self.root_face), out)

    def normalized(self) -> "Pedigree":
        """Relabel the vertex labels onto 1..s+d+1 preserving their order."""
        labs = sorted(self.labels())
        return self.relabel({v: i for i, v in enumerate(labs, start=1)})

    def subpedigree(self, node: int) -> "Pedigree":
        """The part of the DAG reachable from ``node``, rooted there."""
        reach = {node}
        stack = [node]
        while stack:
            u = stack.pop()
            for c in self.children[u]:
                if c not in reach:
                    reach.add(c)
                    stack.append(c)
        out = {self.nodes[u]: self.out_label[u] for u in reach if self.out_label[u] is not None}
        return Pedigree.build(self.d, self.nodes[node], out)

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "root": list(self.root_face),
            "nodes": [
                {"face": list(f), "z": self.out_label[i], "children": list(self.children[i])}
                for i, f in enumerate(self.nodes)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, obj: dict) -> "Pedigree":
        nodes = tuple(tuple(x["face"]) for x in obj["nodes"])
        root = nodes.index(tuple(obj["root"]))
        return cls(
            obj["d"], nodes, root,
            tuple(x["z"] for x in obj["nodes"]),
            tuple(tuple(x["children"]) for x in obj["nodes"]),
        )

    @classmethod
    def from_json(cls, s: str) -> "Pedigree":
        return cls.from_dict(json.loads(s))

    def to_dot(self, name: str = "pedigree") -> str:
        lines = [f"digraph {name} {{", "  node [shape=circle, fontsize=10];"]
        for i, f in enumerate(self.nodes):
            shape = "box" if not self.children[i] else "circle"
            lines.append(f'  n{i} [label="{face_label(f)}", shape={shape}];')
        for i, ch in enumerate(self.children):
            for c in ch:
                lines.append(f"  n{i} -> n{c};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def face_label(f: Sequence[int]) -> str:
    """``123`` for single-digit labels, ``1,2,13`` otherwise."""
    return "".join(map(str, f)) if max(f) < 10 else ",".join(map(str, f))


def validate(P: Pedigree) -> None:
    """Raise :class:`PedigreeViolation` on the first failed condition."""
    d = P.d
    N = len(P.nodes)
    if len(P.out_label) != N or len(P.children) != N:
        raise PedigreeViolation("structure", None, "node, label and child lists differ in length")
    # faces: distinct (d+1)-subsets
    seen: dict[Face, int] = {}
    for i, f in enumerate(P.nodes):
        try:
            check_face(f, d=d)
        except ValueError as e:
            raise PedigreeViolation("faces", i, str(e)) from None
        if f in seen:
            raise PedigreeViolation("faces", i, f"face {f} repeats node {seen[f]}")
        seen[f] = i
    # out-degrees
    for i, ch in enumerate(P.children):
        if len(ch) not in (0, d + 1):
            raise PedigreeViolation("out-degree", i, f"out-degree {len(ch)} is neither 0 nor {d + 1}")
        if len(set(ch)) != len(ch):
            raise PedigreeViolation("out-degree", i, "repeated child")
        if any(not 0 <= c < N for c in ch):
            raise PedigreeViolation("out-degree", i, "child index out of range")
        if bool(ch) != (P.out_label[i] is not None):
            raise PedigreeViolation("out-degree", i, "outgoing label present iff node is internal")
    # root: unique in-degree-0 node
    indeg = [0] * N
    for ch in P.children:
        for c in ch:
            indeg[c] += 1
    sources = [i for i in range(N) if indeg[i] == 0]
    if sources != [P.root]:
        bad = next((i for i in sources if i != P.root), P.root)
        raise PedigreeViolation("root", bad, f"in-degree-0 nodes are {sources}, expected only {P.root}")
    # acyclic (Kahn)
    q = deque(sources)
    deg = indeg[:]
    visited = 0
    while q:
        u = q.popleft()
        visited += 1
        for c in P.children[u]:
            deg[c] -= 1
            if deg[c] == 0:
                q.append(c)
    if visited != N:
        bad = next(i for i in range(N) if deg[i] > 0)
        raise PedigreeViolation("acyclic", bad, "directed cycle through this node")
    # stacking
    for i, ch in enumerate(P.children):
        if not ch:
            continue
        u = P.nodes[i]
        z = P.out_label[i]
        if z in u:
            raise PedigreeViolation("stacking", i, f"outgoing label {z} lies in {u}")
        want = stack_children(u, z)
        got = [P.nodes[c] for c in ch]
        if got != want:
            raise PedigreeViolation("stacking", i, f"children {got} != {want}")


def is_valid(P: Pedigree) -> bool:
    try:
        validate(P)
    except PedigreeViolation:
        return False
    return True


@dataclass(frozen=True)
class PedigreeStats:
    d: int
    m: int
    l: int
    s: int

    @property
    def a(self) -> int:
        return self.l - (self.d * self.s + 1)

    @property
    def b(self) -> int:
        return self.d * self.m - (self.l - 1)

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.m, self.l, self.s, self.a, self.b)


def stats(P: Pedigree) -> PedigreeStats:
    m = len(P.internal())
    l = len(P.nodes) - m
    s = len(P.labels()) - (P.d + 1)
    return PedigreeStats(P.d, m, l, s)


def excess_bound(d: int, a: int) -> float:
    return d * a ** ((d + 1) / d) + (d * d - 1) * a


def check_excess_bound(st: PedigreeStats) -> bool:
    """``a >= 0`` and ``b <= d a^((d+1)/d) + (d^2-1) a``, decided in integers.

    With ``L = b - (d^2-1) a`` the inequality is ``L <= d a^((d+1)/d)``,
    i.e. ``L <= 0`` or ``L^d <= d^d a^(d+1)``.
    """
    d, a, b = st.d, st.a, st.b
    if a < 0:
        return False
    L = b - (d * d - 1) * a
    if L <= 0:
        return True
    return L**d <= d**d * a ** (d + 1)


def excess_margin(st: PedigreeStats) -> float:
    return excess_bound(st.d, st.a) - st.b if st.a >= 0 else float("-inf")


def sort_faces(K: Iterable[Face]) -> list[Face]:
    return sorted(K, key=colex_rank)
