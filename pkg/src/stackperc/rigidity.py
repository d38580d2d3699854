"""Cofactor (rigidity) matrices of d-faces of a point configuration.

For labels ``1..N`` with points ``v_1..v_N`` in Z^d, the face matrix of
``f = (x_1 < ... < x_{d+1})`` has columns ``(v_{x_j}, 1)``: rows 1..d are
coordinates, row d+1 is all ones. The vector ``w_f`` (an ``N x d`` array)
has ``w_f[x_j][i] = C_{i,j}(A_f) = (-1)^(i+j) minor_{i,j}(A_f)``, which is
the partial derivative of ``det A_f`` in coordinate ``i`` of ``v_{x_j}``.

Coordinates are integers, so every quantity is an exact Python int.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .faces import Face, check_face, colex_rank
from .linalg import det_int, rank_exact

COORD_RANGE = 1000
MAX_ATTEMPTS = 100


class GeneralPositionError(ValueError):
    pass


@dataclass(frozen=True)
class PointConfig:
    d: int
    points: tuple[tuple[int, ...], ...]  # points[label - 1]

    @property
    def num_labels(self) -> int:
        return len(self.points)

    @classmethod
    def random(cls, d: int, num_labels: int, seed: int) -> "PointConfig":
        """Seeded integer points in [-1000, 1000]^d, redrawn until in general position."""
        rng = np.random.Generator(np.random.PCG64(seed))
        for _ in range(MAX_ATTEMPTS):
            pts = rng.integers(-COORD_RANGE, COORD_RANGE + 1, size=(num_labels, d))
            cfg = cls(d, tuple(tuple(int(x) for x in row) for row in pts))
            if cfg.in_general_position():
                return cfg
        raise GeneralPositionError("could not draw a configuration in general position")

    def in_general_position(self) -> bool:
        return all(
            det_int(face_matrix(f, self)) != 0
            for f in combinations(range(1, self.num_labels + 1), self.d + 1)
        )

    def require_general_position(self) -> None:
        if not self.in_general_position():
            raise GeneralPositionError("some (d+1)-subset of points is affinely dependent")


def face_matrix(f: Sequence[int], cfg: PointConfig) -> list[list[int]]:
    f = check_face(f, n=cfg.num_labels, d=cfg.d)
    cols = [list(cfg.points[x - 1]) + [1] for x in f]
    return [list(r) for r in zip(*cols)]


def _minor(A: list[list[int]], i: int, j: int) -> int:
    return det_int([row[:j] + row[j + 1:] for r, row in enumerate(A) if r != i])


def cofactor_vector(f: Sequence[int], cfg: PointConfig) -> list[list[int]]:
    """``w_f`` as a ``num_labels x d`` integer array."""
    A = face_matrix(f, cfg)
    d = cfg.d
    w = [[0] * d for _ in range(cfg.num_labels)]
    for j, x in enumerate(f):
        for i in range(d):
            w[x - 1][i] = (-1) ** (i + j) * _minor(A, i, j)
    return w


def flat(w: list[list[int]]) -> list[int]:
    return [x for row in w for x in row]


def rigidity_matrix(K: Iterable[Sequence[int]], cfg: PointConfig) -> tuple[list[Face], list[list[int]]]:
    """``A_K``: one column ``w_f`` per face, faces in colex order.

    Returned as ``(faces, rows)`` with ``d * num_labels`` rows indexed by
    ``(label - 1) * d + coordinate``.
    """
    faces = sorted({check_face(f) for f in K}, key=colex_rank)
    cols = [flat(cofactor_vector(f, cfg)) for f in faces]
    rows = [list(r) for r in zip(*cols)] if cols else []
    return faces, rows


def inner(z: Sequence[int], w: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(z, w))


def motion_derivative(f: Sequence[int], cfg: PointConfig, z: list[list[int]]) -> Fraction:
    """d/dt det A_f(t) at t=0 for ``v_j(t) = v_j + t z_j``, exactly.

    ``det A_f(t)`` is a polynomial of degree <= d in t; it is sampled at
    t = 0..d and differentiated through Lagrange interpolation.
    """
    d = cfg.d
    ts = list(range(d + 1))
    vals = []
    for t in ts:
        moved = PointConfig(d, tuple(
            tuple(p + t * dz for p, dz in zip(pt, zr)) for pt, zr in zip(cfg.points, z)
        ))
        vals.append(det_int(face_matrix(f, moved)))
    # derivative at 0 of the interpolant: sum_k y_k * l_k'(0)
    total = Fraction(0)
    for k, tk in enumerate(ts):
        others = [tm for m, tm in enumerate(ts) if m != k]
        denom = 1
        for tm in others:
            denom *= tk - tm
        # l_k'(0) = sum_m prod_{q != m} (0 - t_q) / denom over m in others
        deriv = 0
        for m in others:
            prod = 1
            for q in others:
                if q != m:
                    prod *= -q
            deriv += prod
        total += Fraction(vals[k] * deriv, denom)
    return total


def left_kernel_basis(cfg: PointConfig) -> list[list[int]]:
    """d translations and d^2-1 traceless linear motions, flattened."""
    d, N = cfg.d, cfg.num_labels
    out = []
    for a in range(d):
        out.append(flat([[1 if i == a else 0 for i in range(d)] for _ in range(N)]))
    mats = []
    for a in range(d):
        for b in range(d):
            if a != b:
                M = [[0] * d for _ in range(d)]
                M[a][b] = 1
                mats.append(M)
    for a in range(d - 1):
        M = [[0] * d for _ in range(d)]
        M[a][a] = 1
        M[d - 1][d - 1] = -1
        mats.append(M)
    for M in mats:
        z = [[sum(M[r][c] * pt[c] for c in range(d)) for r in range(d)] for pt in cfg.points]
        out.append(flat(z))
    return out


def _relabel(K: Iterable[Sequence[int]]) -> list[Face]:
    K = [tuple(f) for f in K]
    labs = sorted({v for f in K for v in f})
    mp = {v: i for i, v in enumerate(labs, start=1)}
    return [tuple(sorted(mp[v] for v in f)) for f in K]


@dataclass(frozen=True)
class PropA1Report:
    l: int
    s: int
    d: int
    rank: int
    ker_dim: int

    @property
    def expected_rank(self) -> int:
        return self.d * self.s + 1

    @property
    def passed(self) -> bool:
        return self.rank == self.expected_rank and self.ker_dim == self.l - self.expected_rank


def verify_prop_a1(P, cfg: PointConfig | None = None, seed: int = 0) -> PropA1Report:
    """Rank of ``A_K`` for the leaves ``K`` of pedigree ``P`` (labels mapped
    order-preservingly onto 1..s+d+1), compared with ``ds + 1``."""
    faces = list(P.faces())
    mapped = dict(zip(faces, _relabel(faces)))
    leaves = [mapped[f] for f in P.leaves()]
    d = P.d
    N = len({v for f in faces for v in f})
    s = N - (d + 1)
    if cfg is None:
        cfg = PointConfig.random(d, N, seed)
    elif cfg.num_labels < N or cfg.d != d:
        raise ValueError("configuration does not cover the pedigree's labels")
    cfg.require_general_position()
    _, A = rigidity_matrix(leaves, cfg)
    rank = rank_exact(A)
    l = len(leaves)
    return PropA1Report(l, s, d, rank, l - rank)


def insertion_position(f: Sequence[int], z: int) -> int:
    """1-based k with x_{k-1} < z < x_k."""
    return 1 + sum(1 for x in f if x < z)


def replaced_faces(f: Sequence[int], z: int) -> list[Face]:
    """``f_r``: f with its r-th vertex replaced by z (r = 1..d+1)."""
    return [tuple(sorted(f[:r] + f[r + 1:] + (z,))) for r in range(len(f))]


def claim_a2_rhs(f: Sequence[int], z: int, cfg: PointConfig) -> list[int]:
    f = check_face(f)
    k = insertion_position(f, z)
    total = [0] * (cfg.d * cfg.num_labels)
    for r, fr in enumerate(replaced_faces(f, z), start=1):
        sign = (-1) ** (k + r + 1) if r < k else (-1) ** (k + r)
        w = flat(cofactor_vector(fr, cfg))
        total = [a + sign * b for a, b in zip(total, w)]
    return total


def verify_claim_a2(f: Sequence[int], z: int, cfg: PointConfig) -> bool:
    """``w_f = sum_{r<k} (-1)^(k+r+1) w_{f_r} + sum_{r>=k} (-1)^(k+r) w_{f_r}``."""
    f = check_face(f)
    if z in f:
        raise ValueError(f"z={z} lies in f={f}")
    return flat(cofactor_vector(f, cfg)) == claim_a2_rhs(f, z, cfg)


def verify_claim_a3(f: Sequence[int], z: int, extra: Iterable[Sequence[int]], cfg: PointConfig, seed: int = 0) -> bool:
    """A random nonzero combination of the ``extra`` faces' vectors together
    with ``w_{f_1}, ..., w_{f_d}`` has rank d+1."""
    f = check_face(f)
    if z in f:
        raise ValueError(f"z={z} lies in f={f}")
    extra = [check_face(g) for g in extra]
    if not extra or any(z in g for g in extra):
        raise ValueError("extra faces must be nonempty and avoid z")
    rng = np.random.Generator(np.random.PCG64(seed))
    wt = _random_combination([flat(cofactor_vector(g, cfg)) for g in extra], rng)
    fr = replaced_faces(f, z)[: cfg.d]
    rows = [wt] + [flat(cofactor_vector(g, cfg)) for g in fr]
    return rank_exact(rows) == cfg.d + 1


def _random_combination(vecs: list[list[int]], rng: np.random.Generator) -> list[int]:
    for _ in range(MAX_ATTEMPTS):
        coef = [int(c) for c in rng.integers(-50, 51, size=len(vecs))]
        wt = [sum(c * v[i] for c, v in zip(coef, vecs)) for i in range(len(vecs[0]))]
        if any(wt):
            return wt
    raise RuntimeError("could not draw a nonzero combination")


def claim_a3_negative_control(f: Sequence[int], z: int, extra: Iterable[Sequence[int]], cfg: PointConfig, seed: int = 0) -> int:
    """Rank of ``{w~, w_{f_1}, ..., w_{f_{d+1}}, w_f}``: the signed identity
    writes w_f through the f_r, so this is below d+3."""
    f = check_face(f)
    rng = np.random.Generator(np.random.PCG64(seed))
    wt = _random_combination([flat(cofactor_vector(check_face(g), cfg)) for g in extra], rng)
    rows = [flat(cofactor_vector(g, cfg)) for g in replaced_faces(f, z)]
    return rank_exact([wt] + rows + [flat(cofactor_vector(f, cfg))])


def subdivision_ranks(K: Iterable[Sequence[int]], f: Sequence[int], z: int, cfg: PointConfig) -> tuple[int, int]:
    """``(rank before, rank after)`` replacing face f of K by its d+1 stacked
    faces through z; the first never exceeds the second."""
    K = {check_face(g) for g in K}
    f = check_face(f)
    if f not in K:
        raise ValueError("f must be a face of K")
    Kt = (K - {f}) | set(replaced_faces(f, z))
    return rank_exact(rigidity_matrix(K, cfg)[1]), rank_exact(rigidity_matrix(Kt, cfg)[1])
