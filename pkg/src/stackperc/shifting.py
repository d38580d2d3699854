"""Exterior algebraic shifting of the top dimension over GF(p).

``X`` is an ``n x n`` matrix of uniform random field elements (standing in
for a generic real matrix). For a family ``K`` of (d+1)-sets, the row of
``M`` for ``g in K`` at column ``f`` is ``det X[g, f]`` (rows of X picked by
``g``, columns by ``f``, both ascending). Columns are scanned in lex order
and kept when independent of the kept ones; the kept column labels form
``Delta(K)``.

A non-generic draw can only lose independence, with probability at most
``|K| C(n, d+1) / p``; every public entry point recomputes with a second
independent matrix and raises :class:`GenericityFailure` on disagreement.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .faces import Face, check_face, vertex_support
from .linalg import det_mod

SHIFT_PRIME = 4611686018427387847  # largest prime below 2**62
MAX_N = 16


class GenericityFailure(RuntimeError):
    pass


@dataclass(frozen=True)
class ShiftContext:
    n: int
    seed: int = 0
    prime: int = SHIFT_PRIME
    X: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not 1 <= self.n <= MAX_N:
            raise ValueError(f"shifting supports 1 <= n <= {MAX_N}, got {self.n}")
        ss = np.random.SeedSequence([self.seed, self.n])
        rng = np.random.Generator(np.random.PCG64(ss))
        # 62-bit prime: draw two 31-bit halves per entry
        hi = rng.integers(0, 1 << 31, size=(self.n, self.n), dtype=np.int64)
        lo = rng.integers(0, 1 << 31, size=(self.n, self.n), dtype=np.int64)
        X = tuple(
            tuple((int(hi[i, j]) << 31 | int(lo[i, j])) % self.prime for j in range(self.n))
            for i in range(self.n)
        )
        object.__setattr__(self, "X", X)

    def companion(self) -> "ShiftContext":
        """An independent context used to confirm results."""
        return ShiftContext(self.n, self.seed + 0x9E3779B9, self.prime)

    def minor(self, rows: Sequence[int], cols: Sequence[int]) -> int:
        X = self.X
        sub = [[X[r - 1][c - 1] for c in cols] for r in rows]
        return det_mod(sub, self.prime)


@dataclass(frozen=True)
class ShiftedFamily:
    d: int
    faces: tuple[Face, ...]  # lex order

    def __contains__(self, f) -> bool:
        return tuple(f) in set(self.faces)

    def __len__(self) -> int:
        return len(self.faces)

    def __iter__(self):
        return iter(self.faces)

    def as_set(self) -> set[Face]:
        return set(self.faces)

    def to_dict(self) -> dict:
        return {"d": self.d, "faces": [list(f) for f in self.faces]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, obj: dict) -> "ShiftedFamily":
        return cls(obj["d"], tuple(sorted(tuple(f) for f in obj["faces"])))


def _shift_once(K: list[Face], ctx: ShiftContext) -> list[Face]:
    p = ctx.prime
    k = len(K[0])
    basis: list[tuple[int, list[int]]] = []  # (pivot, normalized vector)
    kept: list[Face] = []
    target = len(K)
    for f in combinations(range(1, ctx.n + 1), k):
        v = [ctx.minor(g, f) for g in K]
        for piv, b in basis:
            c = v[piv]
            if c:
                v = [(x - c * y) % p for x, y in zip(v, b)]
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            continue
        inv = pow(v[piv], -1, p)
        v = [(x * inv) % p for x in v]
        # keep the basis fully reduced so each new column costs one pass
        basis = [(q, [(x - b[piv] * y) % p for x, y in zip(b, v)] if b[piv] else b) for q, b in basis]
        basis.append((piv, v))
        kept.append(f)
        if len(kept) == target:
            break
    return kept


def shift(K: Iterable[Sequence[int]], ctx: ShiftContext, confirm: bool = True) -> ShiftedFamily:
    """Top-dimensional exterior shift ``Delta(K)``."""
    faces = sorted({check_face(f, n=ctx.n) for f in K})
    if not faces:
        raise ValueError("shift needs a nonempty family")
    k = len(faces[0])
    if any(len(f) != k for f in faces):
        raise ValueError("all faces must have the same size")
    out = _shift_once(faces, ctx)
    if confirm:
        other = _shift_once(faces, ctx.companion())
        if other != out:
            raise GenericityFailure(
                f"seeds {ctx.seed} and {ctx.companion().seed} disagree; retry with fresh seeds"
            )
    return ShiftedFamily(k - 1, tuple(out))


def is_shifted(F: ShiftedFamily | Iterable[Sequence[int]]) -> bool:
    fam = {tuple(f) for f in F}
    for f in fam:
        fs = set(f)
        for i, v in enumerate(f):
            for u in range(1, v):
                if u not in fs:
                    g = tuple(sorted(f[:i] + f[i + 1:] + (u,)))
                    if g not in fam:
                        return False
    return True


def dominance(f: Sequence[int], g: Sequence[int]) -> bool:
    """Componentwise order on sorted faces: f <=_P g."""
    if len(f) != len(g):
        raise ValueError("dominance compares faces of equal size")
    return all(a <= b for a, b in zip(sorted(f), sorted(g)))


def b_top(F: ShiftedFamily) -> int:
    """Faces of a shifted top-dimensional family that avoid vertex 1."""
    if not is_shifted(F):
        raise ValueError("b_top needs a shifted family")
    return sum(1 for f in F if 1 not in f)


def claim33_face(d: int, s: int) -> Face:
    """``[d+1] + {s+d+1} - {2}``."""
    return tuple(sorted(set(range(1, d + 2)) - {2} | {s + d + 1}))


def relabel_onto_prefix(K: Iterable[Sequence[int]]) -> list[Face]:
    K = [tuple(f) for f in K]
    labs = sorted(vertex_support(K))
    mp = {v: i for i, v in enumerate(labs, start=1)}
    return [tuple(sorted(mp[v] for v in f)) for f in K]


def verify_claim33(K: Iterable[Sequence[int]], seed: int = 0) -> bool:
    """For the face set of a pedigree with s >= 1: is ``[d+1]+{s+d+1}-{2}``
    in its shift? Labels are first mapped order-preservingly onto [s+d+1]."""
    K = relabel_onto_prefix(K)
    d = len(K[0]) - 1
    N = len(vertex_support(K))
    s = N - (d + 1)
    if s < 1:
        raise ValueError("the claim needs s >= 1")
    F = shift(K, ShiftContext(N, seed))
    return claim33_face(d, s) in F


def nevo_D(K: Iterable[Sequence[int]], f: Sequence[int], ctx: ShiftContext) -> int:
    """#{w : (y_1, ..., y_d, w) in Delta(K)} for f = (y_1 < ... < y_{d+1})."""
    f = check_face(f)
    head = f[:-1]
    F = shift(K, ctx)
    return sum(1 for g in F if g[:-1] == head)


@dataclass(frozen=True)
class NevoCheck:
    face: Face
    in_shift: bool
    gap: int
    d1: int
    d2: int
    d12: int

    @property
    def predicted(self) -> bool:
        return self.gap <= self.d1 + self.d2 - self.d12

    @property
    def ok(self) -> bool:
        return self.in_shift == self.predicted


def verify_nevo(G1: Iterable[Sequence[int]], G2: Iterable[Sequence[int]], f: Sequence[int], ctx: ShiftContext) -> NevoCheck:
    """Check ``f in Delta(G1 u G2) <=> y_{d+1}-y_d <= D_1 + D_2 - D_12`` for two
    pure complexes sharing exactly one top face."""
    G1 = {tuple(g) for g in G1}
    G2 = {tuple(g) for g in G2}
    common = G1 & G2
    if len(common) != 1:
        raise ValueError(f"the complexes must share exactly one top face, they share {len(common)}")
    f = check_face(f)
    union = shift(G1 | G2, ctx)
    return NevoCheck(
        f, f in union, f[-1] - f[-2],
        nevo_D(G1, f, ctx), nevo_D(G2, f, ctx), nevo_D(common, f, ctx),
    )


def _D(F: ShiftedFamily, head: tuple[int, ...]) -> int:
    return sum(1 for g in F if g[:-1] == head)


def check_nevo_all(G1: Iterable[Sequence[int]], G2: Iterable[Sequence[int]], ctx: ShiftContext) -> list[NevoCheck]:
    """:func:`verify_nevo` for every (d+1)-subset of the union's vertices,
    with each of the four shifts computed once."""
    G1 = {check_face(g) for g in G1}
    G2 = {check_face(g) for g in G2}
    common = G1 & G2
    if len(common) != 1:
        raise ValueError(f"the complexes must share exactly one top face, they share {len(common)}")
    k = len(next(iter(common)))
    S, S1, S2, S12 = (shift(K, ctx) for K in (G1 | G2, G1, G2, common))
    inS = S.as_set()
    out = []
    for f in combinations(sorted(vertex_support(G1 | G2)), k):
        head = f[:-1]
        out.append(NevoCheck(f, f in inS, f[-1] - f[-2], _D(S1, head), _D(S2, head), _D(S12, head)))
    return out
