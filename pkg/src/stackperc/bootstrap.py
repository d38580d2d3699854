"""K_{d+2}^{d+1} bootstrap percolation on random d-complexes.

The closure is computed by a work queue: when a face ``f`` becomes infected,
every ``w = f + {z}`` is inspected, and if exactly one facet of ``w`` is
still healthy it gets infected. No per-``w`` counters are kept, so memory
is one byte per face plus the certificate arrays.

Randomness comes from numpy's PCG64 bit generator seeded with the
instance's 64-bit seed.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import asdict, dataclass, field
from math import comb
from typing import Iterable, Sequence

import numpy as np
from numba import njit

from .faces import Face, FaceSet, colex_rank, colex_unrank, check_face, facets

NAIVE_MAX_N = 16


@dataclass(frozen=True)
class Instance:
    n: int
    d: int
    p: float
    seed: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be >= 1")
        if self.n < self.d + 2:
            raise ValueError(f"need n >= d+2, got n={self.n}, d={self.d}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")


@dataclass(frozen=True)
class Certificate:
    apex: int
    parents: tuple[int, ...]


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def sample_complex(inst: Instance) -> FaceSet:
    """Each (d+1)-subset kept independently with probability p (geometric skips)."""
    size = comb(inst.n, inst.d + 1)
    fs = FaceSet(inst.n, inst.d)
    if inst.p <= 0.0:
        return fs
    rng = make_rng(inst.seed)
    chunk = max(1024, int(inst.p * size * 1.05) + 64)
    pos = -1
    picked = []
    while True:
        gaps = rng.geometric(inst.p, size=chunk)
        idx = pos + np.cumsum(gaps)
        keep = idx[idx < size]
        picked.append(keep)
        if keep.shape[0] < chunk:
            break
        pos = int(idx[-1])
    if picked:
        fs.bits[np.concatenate(picked)] = True
    return fs


def _binom_table(n: int, kmax: int) -> np.ndarray:
    B = np.zeros((n + 1, kmax + 1), dtype=np.int64)
    for a in range(n + 1):
        for i in range(kmax + 1):
            B[a, i] = comb(a, i)
    return B


@njit(cache=True)
def _unrank(r, k, n, B, out):
    a = n
    for i in range(k, 0, -1):
        while B[a - 1, i] > r:
            a -= 1
        out[i - 1] = a
        r -= B[a - 1, i]
        a -= 1


@njit(cache=True)
def _cascade(infected, apex, order, order_len, queue, qlen, n, k, B, lifo):
    """Run the infection queue to exhaustion.

    ``queue[:qlen]`` holds infected faces still to be processed. Returns the
    new length of ``order``.
    """
    f = np.empty(k, dtype=np.int64)
    w = np.empty(k + 1, dtype=np.int64)
    pre = np.empty(k + 2, dtype=np.int64)
    suf = np.empty(k + 2, dtype=np.int64)
    head = 0
    tail = qlen
    while tail > head:
        if lifo:
            tail -= 1
            r = queue[tail]
        else:
            r = queue[head]
            head += 1
        _unrank(r, k, n, B, f)
        j = 0
        for z in range(1, n + 1):
            if j < k and f[j] == z:
                j += 1
                continue
            # w = f with z inserted at position j
            for i in range(j):
                w[i] = f[i]
            w[j] = z
            for i in range(j, k):
                w[i + 1] = f[i]
            pre[0] = 0
            for i in range(k + 1):
                pre[i + 1] = pre[i] + B[w[i] - 1, i + 1]
            suf[k + 1] = 0
            for i in range(k, -1, -1):
                suf[i] = suf[i + 1] + B[w[i] - 1, i]
            healthy = 0
            g = -1
            gi = -1
            for i in range(k + 1):
                if i == j:
                    continue
                rr = pre[i] + suf[i + 1]
                if infected[rr] == 0:
                    healthy += 1
                    if healthy > 1:
                        break
                    g = rr
                    gi = i
            if healthy == 1:
                infected[g] = 1
                apex[g] = w[gi]
                order[order_len] = g
                order_len += 1
                queue[tail] = g
                tail += 1
    return order_len


@njit(cache=True)
def _insertion_run(perm, infected, apex, order, queue, counts, n, k, B):
    """Insert faces in ``perm`` order, closing after each insertion."""
    order_len = 0
    total = 0
    for t in range(perm.shape[0]):
        r = perm[t]
        if infected[r] == 0:
            infected[r] = 1
            order[order_len] = r
            order_len += 1
            queue[0] = r
            before = order_len
            order_len = _cascade(infected, apex, order, order_len, queue, 1, n, k, B, False)
            total += 1 + (order_len - before)
        counts[t] = total
    return order_len


@dataclass
class BootstrapState:
    n: int
    d: int
    y0: FaceSet
    infected: FaceSet
    order: np.ndarray  # ranks, initial faces first, then infections in time order
    apex: np.ndarray  # apex per rank; -1 where no certificate
    instance: Instance | None = None

    @property
    def size(self) -> int:
        return self.infected.size

    def certificate(self, r: int) -> Certificate | None:
        z = int(self.apex[r])
        if z < 0:
            return None
        g = colex_unrank(int(r), self.d + 1)
        w = tuple(sorted(g + (z,)))
        parents = tuple(colex_rank(h) for h in facets(w) if h != g)
        return Certificate(z, parents)

    @property
    def certs(self) -> dict[int, Certificate]:
        return {int(r): self.certificate(int(r)) for r in np.flatnonzero(self.apex >= 0)}

    def copy(self) -> "BootstrapState":
        return BootstrapState(
            self.n, self.d, self.y0.copy(), self.infected.copy(),
            self.order.copy(), self.apex.copy(), self.instance,
        )

    def to_dict(self) -> dict:
        certs = {}
        for r, c in self.certs.items():
            certs[str(r)] = {"apex": c.apex, "parents": list(c.parents)}
        return {
            "instance": asdict(self.instance) if self.instance else {"n": self.n, "d": self.d},
            "y0": [int(r) for r in self.y0.ranks()],
            "order": [int(r) for r in self.order],
            "certs": certs,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def close(y0: FaceSet, lifo: bool = False, instance: Instance | None = None) -> BootstrapState:
    """Bootstrap closure of ``y0`` with infection certificates (FIFO by default)."""
    n, d = y0.n, y0.d
    k = d + 1
    size = y0.size
    infected = y0.bits.astype(np.uint8)
    apex = np.full(size, -1, dtype=np.int32)
    order = np.empty(size, dtype=np.int64)
    init = y0.ranks().astype(np.int64)
    order[: init.shape[0]] = init
    queue = np.empty(size, dtype=np.int64)
    queue[: init.shape[0]] = init
    B = _binom_table(n, k + 1)
    m = _cascade(infected, apex, order, init.shape[0], queue, init.shape[0], n, k, B, lifo)
    return BootstrapState(
        n, d, y0.copy(), FaceSet(n, d, infected.astype(np.bool_)), order[:m].copy(), apex, instance
    )


def run_instance(inst: Instance) -> BootstrapState:
    return close(sample_complex(inst), instance=inst)


def close_naive(y0: FaceSet) -> FaceSet:
    """Reference closure by repeated full scans over all (d+2)-sets."""
    n, d = y0.n, y0.d
    if n > NAIVE_MAX_N:
        raise ValueError(f"close_naive is limited to n <= {NAIVE_MAX_N}, got n={n}")
    cur = y0.bits.copy()
    sets = [[colex_rank(g) for g in facets(w)] for w in itertools.combinations(range(1, n + 1), d + 2)]
    changed = True
    while changed:
        changed = False
        for ranks in sets:
            healthy = [r for r in ranks if not cur[r]]
            if len(healthy) == 1:
                cur[healthy[0]] = True
                changed = True
    return FaceSet(n, d, cur)


def density(state: BootstrapState) -> float:
    return len(state.infected) / state.size


def incremental_add(state: BootstrapState, f: Sequence[int], copy: bool = True) -> tuple[BootstrapState, int]:
    """Add ``f`` to the initial set of a closed state and re-close from ``f``.

    Returns ``(state, newly_infected)``; ``newly_infected == 0`` flags that
    ``f`` was already infected and nothing changed.
    """
    f = check_face(f, state.n, state.d)
    r = colex_rank(f)
    if state.infected.bits[r]:
        return state, 0
    st = state.copy() if copy else state
    k = st.d + 1
    infected = st.infected.bits.astype(np.uint8)
    m0 = st.order.shape[0]
    order = np.empty(st.size, dtype=np.int64)
    order[:m0] = st.order
    infected[r] = 1
    order[m0] = r
    queue = np.empty(st.size, dtype=np.int64)
    queue[0] = r
    B = _binom_table(st.n, k + 1)
    m = _cascade(infected, st.apex, order, m0 + 1, queue, 1, st.n, k, B, False)
    st.y0.bits[r] = True
    st.infected.bits[:] = infected.astype(np.bool_)
    st.order = order[:m].copy()
    return st, m - m0


@dataclass
class CriticalStepResult:
    n: int
    d: int
    seed: int
    size: int
    tau: int  # number of inserted faces at which the closure first becomes complete
    x_before: float  # density after tau - 1 insertions
    x_at: float
    trajectory: list[tuple[int, float]] = field(default_factory=list)


def critical_step(n: int, d: int, seed: int, sample_points: int | Iterable[int] = 200) -> CriticalStepResult:
    """Insert all faces in a seeded uniform order, closing after each one.

    ``sample_points`` is either a count of evenly spaced times or explicit
    times; the trajectory always includes ``tau - 1``, ``tau`` and the end.
    """
    size = comb(n, d + 1)
    k = d + 1
    rng = make_rng(seed)
    perm = rng.permutation(size).astype(np.int64)
    infected = np.zeros(size, dtype=np.uint8)
    apex = np.full(size, -1, dtype=np.int32)
    order = np.empty(size, dtype=np.int64)
    queue = np.empty(size, dtype=np.int64)
    counts = np.empty(size, dtype=np.int64)
    B = _binom_table(n, k + 1)
    _insertion_run(perm, infected, apex, order, queue, counts, n, k, B)
    # counts[t-1] = infected after t insertions
    tau = int(np.argmax(counts == size)) + 1

    def x(t: int) -> float:
        return 0.0 if t == 0 else counts[t - 1] / size

    if isinstance(sample_points, int):
        times = set(np.linspace(0, size, num=max(sample_points, 2)).round().astype(int).tolist())
    else:
        times = set(int(t) for t in sample_points)
    times |= {tau - 1, tau, size}
    traj = [(t, float(x(t))) for t in sorted(times) if 0 <= t <= size]
    return CriticalStepResult(n, d, seed, size, tau, float(x(tau - 1)), float(x(tau)), traj)


@njit(cache=True)
def _blocked_count(y0, infected, n, k, B):
    ridge = np.zeros(B[n, k - 1], dtype=np.uint8)
    f = np.empty(k, dtype=np.int64)
    for r in range(y0.shape[0]):
        if y0[r]:
            _unrank(r, k, n, B, f)
            for i in range(k):
                rr = 0
                j = 0
                for t in range(k):
                    if t != i:
                        rr += B[f[t] - 1, j + 1]
                        j += 1
                ridge[rr] = 1
    blocked = 0
    for r in range(infected.shape[0]):
        if infected[r] == 0:
            _unrank(r, k, n, B, f)
            for i in range(k):
                rr = 0
                j = 0
                for t in range(k):
                    if t != i:
                        rr += B[f[t] - 1, j + 1]
                        j += 1
                if ridge[rr] == 0:
                    blocked += 1
                    break
    return blocked


def blocked_faces(state: BootstrapState) -> int:
    """Healthy faces with a ridge lying in no face of ``y0``.

    Such a face can never be infected: infecting a face through a ridge
    needs another face on that ridge to be infected first.
    """
    k = state.d + 1
    B = _binom_table(state.n, k + 1)
    return int(_blocked_count(state.y0.bits, state.infected.bits, state.n, k, B))


def replay(state: BootstrapState) -> FaceSet:
    """Regenerate the infected set from ``y0`` and the certificates, checking each step."""
    cur = FaceSet(state.n, state.d)
    for r in state.order:
        r = int(r)
        if state.y0.bits[r]:
            cur.bits[r] = True
            continue
        c = state.certificate(r)
        if c is None:
            raise AssertionError(f"face rank {r} infected without certificate")
        if not all(cur.bits[p] for p in c.parents):
            raise AssertionError(f"face rank {r} certified before its parents")
        cur.bits[r] = True
    return cur
