"""Faces, colex ranking, face sets and exact top-dimensional Betti numbers.

A face is a strictly increasing tuple of 1-based vertex labels. The colex
rank of ``(a_1 < ... < a_k)`` is ``sum_i C(a_i - 1, i)``; it does not
depend on ``n``, so ranks stay valid when ``n`` grows.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Iterator
from math import comb
from typing import Sequence

import numpy as np

from . import linalg

Face = tuple[int, ...]


class InvalidFace(ValueError):
    pass


def check_face(f: Iterable[int], n: int | None = None, d: int | None = None) -> Face:
    """Return ``f`` as a face tuple, rejecting anything malformed."""
    t = tuple(int(v) for v in f)
    if d is not None and len(t) != d + 1:
        raise InvalidFace(f"{t}: expected {d + 1} vertices, got {len(t)}")
    if not t:
        raise InvalidFace("empty face")
    for a, b in zip(t, t[1:]):
        if a >= b:
            raise InvalidFace(f"{t}: vertices must be strictly increasing")
    if t[0] < 1:
        raise InvalidFace(f"{t}: vertex labels start at 1")
    if n is not None and t[-1] > n:
        raise InvalidFace(f"{t}: vertex {t[-1]} exceeds n={n}")
    return t


def colex_rank(f: Sequence[int]) -> int:
    f = check_face(f)
    return sum(comb(a - 1, i) for i, a in enumerate(f, start=1))


def colex_unrank(r: int, k: int) -> Face:
    """Inverse of :func:`colex_rank` for ``k``-subsets."""
    if r < 0:
        raise ValueError("rank must be non-negative")
    out = []
    for i in range(k, 0, -1):
        # largest a with C(a-1, i) <= r
        a = i
        while comb(a, i) <= r:
            a += 1
        r -= comb(a - 1, i)
        out.append(a)
    return tuple(reversed(out))


def faces_of(n: int, d: int) -> Iterator[Face]:
    """All (d+1)-subsets of [n] in colex order."""
    for r in range(comb(n, d + 1)):
        yield colex_unrank(r, d + 1)


def lex_key(f: Sequence[int]) -> tuple[int, ...]:
    return tuple(f)


def facets(w: Sequence[int], d: int | None = None) -> list[Face]:
    """The codimension-one subsets of ``w``, ordered by omitted vertex."""
    w = check_face(sorted(w))
    if d is not None and len(w) != d + 2:
        raise InvalidFace(f"{w}: expected {d + 2} vertices, got {len(w)}")
    if len(w) < 2:
        raise InvalidFace(f"{w}: need at least two vertices")
    return [w[:i] + w[i + 1:] for i in range(len(w))]


def link(z: int, K: Iterable[Sequence[int]]) -> set[Face]:
    return {tuple(v for v in f if v != z) for f in K if z in f}


def vertex_support(K: Iterable[Sequence[int]]) -> set[int]:
    out: set[int] = set()
    for f in K:
        out.update(f)
    return out


class FaceSet:
    """Bitset over the colex-ranked (d+1)-subsets of [n]."""

    def __init__(self, n: int, d: int, bits: np.ndarray | None = None):
        if d < 0 or n < d + 1:
            raise ValueError(f"need n >= d+1, got n={n}, d={d}")
        self.n = n
        self.d = d
        size = comb(n, d + 1)
        if bits is None:
            bits = np.zeros(size, dtype=np.bool_)
        elif bits.shape != (size,):
            raise ValueError(f"bit array must have length C({n},{d + 1})={size}")
        self.bits = bits.astype(np.bool_, copy=False)

    @classmethod
    def from_faces(cls, n: int, d: int, faces: Iterable[Sequence[int]]) -> "FaceSet":
        fs = cls(n, d)
        for f in faces:
            fs.add(f)
        return fs

    @classmethod
    def from_ranks(cls, n: int, d: int, ranks: Iterable[int]) -> "FaceSet":
        fs = cls(n, d)
        idx = np.fromiter(ranks, dtype=np.int64)
        fs.bits[idx] = True
        return fs

    @property
    def size(self) -> int:
        return self.bits.shape[0]

    def rank(self, f: Sequence[int]) -> int:
        return colex_rank(check_face(f, self.n, self.d))

    def add(self, f: Sequence[int]) -> None:
        self.bits[self.rank(f)] = True

    def discard(self, f: Sequence[int]) -> None:
        self.bits[self.rank(f)] = False

    def __contains__(self, f) -> bool:
        try:
            return bool(self.bits[self.rank(f)])
        except InvalidFace:
            return False

    def __len__(self) -> int:
        return int(np.count_nonzero(self.bits))

    def ranks(self) -> np.ndarray:
        return np.flatnonzero(self.bits)

    def __iter__(self) -> Iterator[Face]:
        k = self.d + 1
        for r in self.ranks():
            yield colex_unrank(int(r), k)

    def copy(self) -> "FaceSet":
        return FaceSet(self.n, self.d, self.bits.copy())

    def _same_space(self, other: "FaceSet") -> None:
        if (self.n, self.d) != (other.n, other.d):
            raise ValueError("face sets live on different (n, d)")

    def __or__(self, other: "FaceSet") -> "FaceSet":
        self._same_space(other)
        return FaceSet(self.n, self.d, self.bits | other.bits)

    def __and__(self, other: "FaceSet") -> "FaceSet":
        self._same_space(other)
        return FaceSet(self.n, self.d, self.bits & other.bits)

    def __le__(self, other: "FaceSet") -> bool:
        self._same_space(other)
        return not bool(np.any(self.bits & ~other.bits))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FaceSet):
            return NotImplemented
        return (self.n, self.d) == (other.n, other.d) and bool(
            np.array_equal(self.bits, other.bits)
        )

    def __repr__(self) -> str:
        return f"FaceSet(n={self.n}, d={self.d}, |F|={len(self)})"

    def to_dict(self) -> dict:
        return {"n": self.n, "d": self.d, "faces": [list(f) for f in self]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, obj: dict) -> "FaceSet":
        return cls.from_faces(obj["n"], obj["d"], obj["faces"])

    @classmethod
    def from_json(cls, s: str) -> "FaceSet":
        return cls.from_dict(json.loads(s))


def boundary_matrix(K: Iterable[Sequence[int]]) -> tuple[list[Face], list[Face], list[list[int]]]:
    """Signed boundary matrix of a set of equal-size faces.

    Returns ``(rows, cols, M)``: ``rows`` are the codimension-one faces that
    occur, in colex order; ``cols`` the input faces in colex order. The entry
    for omitting the vertex at (0-based) position ``j`` is ``(-1)**j``.
    """
    cols = sorted({check_face(f) for f in K}, key=colex_rank)
    if not cols:
        return [], [], []
    k = len(cols[0])
    if any(len(f) != k for f in cols):
        raise InvalidFace("boundary_matrix needs faces of a single dimension")
    if k == 1:
        # boundary of vertices: the augmentation row
        return [()], cols, [[1] * len(cols)]
    row_set = {g for f in cols for g in facets(f)}
    rows = sorted(row_set, key=colex_rank)
    row_idx = {g: i for i, g in enumerate(rows)}
    M = [[0] * len(cols) for _ in rows]
    for c, f in enumerate(cols):
        for j, g in enumerate(facets(f)):
            M[row_idx[g]][c] = -1 if j % 2 else 1
    return rows, cols, M


def _rank_by(M: list[list[int]], method: str) -> int:
    if method == "auto":
        return linalg.rank_exact(M)
    if method == "bareiss":
        return linalg.rank_bareiss(M)
    if method == "modular":
        return linalg.rank_two_primes(M)
    if method.startswith("prime:"):
        return linalg.rank_mod(M, int(method.split(":", 1)[1]))
    raise ValueError(f"unknown rank method {method!r}")


EMPTY = "empty"
OK = "ok"


def betti_top(K: Iterable[Sequence[int]], method: str = "auto", with_status: bool = False):
    """dim ker of the top boundary map of the pure complex generated by ``K``.

    An empty ``K`` gives 0 with status ``EMPTY`` (only visible when
    ``with_status`` is set).
    """
    faces = list(K)
    if not faces:
        return (0, EMPTY) if with_status else 0
    _, cols, M = boundary_matrix(faces)
    beta = len(cols) - _rank_by(M, method)
    return (beta, OK) if with_status else beta
