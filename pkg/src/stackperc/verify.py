"""Invariant suites for every module, shared by the CLI and the tests.

Each check returns a :class:`Check`; a suite is a list of checks. The
``full`` scale matches the acceptance runs, ``quick`` is for smoke tests.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Iterable

import numpy as np

from . import linalg
from .analysis import (
    density_series,
    fuss_catalan,
    fuss_catalan_recursive,
    gamma_critical,
    hat_gamma,
    q_poly,
    tree_codes,
)
from .bootstrap import Instance, close, close_naive, incremental_add, make_rng, replay, run_instance, sample_complex
from .faces import FaceSet, betti_top, boundary_matrix, colex_rank, colex_unrank, faces_of, vertex_support
from .pedigree.core import Pedigree, check_excess_bound, is_valid, stats
from .pedigree.families import fig6_pedigree, generate_Gk, random_balanced_proper, random_proper
from .pedigree.proper import LabelClass, classify_labels, enumerate_P, verify_subpedigree_H
from .pedigree.witness import extract_witness
from .rigidity import (
    PointConfig,
    claim_a3_negative_control,
    cofactor_vector,
    flat,
    inner,
    insertion_position,
    left_kernel_basis,
    motion_derivative,
    rigidity_matrix,
    subdivision_ranks,
    verify_claim_a2,
    verify_claim_a3,
    verify_prop_a1,
)
from .shifting import (
    ShiftContext,
    b_top,
    check_nevo_all,
    is_shifted,
    relabel_onto_prefix,
    shift,
    verify_claim33,
)


@dataclass
class Check:
    suite: str
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    data: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.suite}.{self.name}: {self.detail}"


def timed(suite: str, name: str, fn: Callable[[], tuple[bool, str] | tuple[bool, str, dict]]) -> Check:
    t0 = time.perf_counter()
    out = fn()
    dt = time.perf_counter() - t0
    data = out[2] if len(out) > 2 else {}
    return Check(suite, name, bool(out[0]), out[1], dt, data)


# -- shared generators ---------------------------------------------------------------


def random_complex(n: int, d: int, p: float, rng: np.random.Generator) -> list[tuple[int, ...]]:
    return [f for f in faces_of(n, d) if rng.random() < p]


def small_witnesses(d: int, n: int, count: int, seed: int, max_s: int | None = None) -> list[Pedigree]:
    """Witness pedigrees (s >= 1) of random closures at small n."""
    out = []
    rng = make_rng(seed)
    trial = 0
    while len(out) < count and trial < 50 * count:
        p = float(rng.uniform(0.15, 0.6))
        st = run_instance(Instance(n, d, p, seed * 100_003 + trial))
        trial += 1
        new = np.flatnonzero(st.infected.bits & ~st.y0.bits)
        if new.shape[0] == 0:
            continue
        r = int(new[rng.integers(new.shape[0])])
        P = extract_witness(st, colex_unrank(r, d + 1))
        s = stats(P).s
        if s >= 1 and (max_s is None or s <= max_s):
            out.append(P)
    return out


def pedigree_zoo(full: bool = True) -> list[tuple[str, Pedigree]]:
    """Every generated family, at the scale of the excess-bound sweep."""
    zoo = [("fig6", fig6_pedigree())]
    for k in range(4, 13 if full else 8):
        zoo.append((f"G_{k} d=2", generate_Gk(2, k)))
    for k in range(5, 10 if full else 7):
        zoo.append((f"G_{k} d=3", generate_Gk(3, k)))
    seeds = range(50 if full else 5)
    for d in (2, 3):
        for seed in seeds:
            s = 1 + seed % 12
            zoo.append((f"proper d={d} s={s} seed={seed}", random_proper(d, s, s + d + 1 + seed % 7, seed)))
        for seed in seeds:
            sp = 1 + seed % 3
            s = (d + 1) * sp + 1
            zoo.append((f"balanced d={d} s'={sp} seed={seed}", random_balanced_proper(d, sp, s + d + 1 + seed % 5, seed)))
    return zoo


# -- core ------------------------------------------------------------------------


def check_colex(nmax: int = 10) -> tuple[bool, str]:
    tried = 0
    for n in range(2, nmax + 1):
        for k in range(1, min(n, 4) + 1):
            faces = list(faces_of(n, k - 1))
            if [colex_rank(f) for f in faces] != list(range(comb(n, k))):
                return False, f"faces_of({n},{k - 1}) not in rank order"
            if any(colex_unrank(r, k) != f for r, f in enumerate(faces)):
                return False, f"unrank mismatch at n={n}, k={k}"
            tried += len(faces)
    return True, f"{tried} faces ranked and unranked"


def check_boundary_squared(trials: int = 30, seed: int = 0) -> tuple[bool, str]:
    rng = make_rng(seed)
    for t in range(trials):
        d = int(rng.integers(1, 4))
        K = random_complex(int(rng.integers(d + 2, 9)), d, 0.4, rng)
        if not K:
            continue
        rows, cols, M = boundary_matrix(K)
        if d == 0:
            continue
        rows2, cols2, M2 = boundary_matrix(rows)
        assert cols2 == rows
        prod = [[sum(M2[i][k] * M[k][j] for k in range(len(rows))) for j in range(len(cols))] for i in range(len(rows2))]
        if any(any(row) for row in prod):
            return False, f"trial {t}: boundary of boundary is nonzero"
    return True, f"{trials} random complexes"


def check_rank_methods(trials: int = 40, seed: int = 0) -> tuple[bool, str]:
    rng = make_rng(seed)
    for t in range(trials):
        r, c = int(rng.integers(1, 25)), int(rng.integers(1, 25))
        rk = int(rng.integers(0, min(r, c) + 1))
        A = rng.integers(-9, 10, size=(r, rk)) @ rng.integers(-9, 10, size=(rk, c))
        rows = [[int(x) for x in row] for row in A]
        a, b = linalg.rank_bareiss(rows), linalg.rank_two_primes(rows)
        if a != b:
            return False, f"trial {t}: bareiss {a} != modular {b}"
        K = random_complex(8, 2, 0.3, rng)
        if K:
            _, _, M = boundary_matrix(K)
            if linalg.rank_bareiss(M) != linalg.rank_two_primes(M):
                return False, f"trial {t}: boundary ranks disagree"
    return True, f"{trials} random matrices and boundary matrices"


def check_betti_basics() -> tuple[bool, str]:
    for d in (1, 2, 3):
        sphere = list(itertools.combinations(range(1, d + 3), d + 1))
        if betti_top(sphere) != 1:
            return False, f"sphere d={d}"
        if betti_top([tuple(range(1, d + 2))]) != 0:
            return False, f"single face d={d}"
    if betti_top([], with_status=True) != (0, "empty"):
        return False, "empty complex"
    return True, "spheres 1, single faces 0, empty 0"


def suite_core(full: bool = True) -> list[Check]:
    s = "core"
    return [
        timed(s, "colex_roundtrip", lambda: check_colex(10 if full else 7)),
        timed(s, "boundary_squared_zero", lambda: check_boundary_squared(30 if full else 8)),
        timed(s, "rank_methods_agree", lambda: check_rank_methods(40 if full else 10)),
        timed(s, "betti_basics", check_betti_basics),
    ]


# -- analysis ---------------------------------------------------------------------


def check_fuss_catalan(ds=(2, 3), s_max: int = 8) -> tuple[bool, str]:
    for d in ds:
        for s in range(s_max + 1):
            a, b = fuss_catalan(d, s), fuss_catalan_recursive(d, s)
            codes = tree_codes(d, s)
            c = len(set(codes))  # distinct shapes only
            if not a == b == c:
                return False, f"d={d} s={s}: closed {a}, recursive {b}, enumerated {c}"
    return True, f"d in {tuple(ds)}, s <= {s_max}: three counts agree"


def check_roots(ds=range(2, 6), grid: int = 100) -> tuple[bool, str, dict]:
    worst_q = 0.0
    for d in ds:
        gc = gamma_critical(d)
        for g in np.linspace(0.0, gc, grid):
            worst_q = max(worst_q, abs(q_poly(d, float(g), hat_gamma(d, float(g)))))
    worst_crit = max(abs(hat_gamma(d, gamma_critical(d)) - (d + 1) ** (-1.0 / d)) for d in ds)
    series_err = abs(density_series(2, 0.2, 200) - hat_gamma(2, 0.2))
    ok = worst_q <= 1e-12 and worst_crit <= 1e-6 and series_err <= 1e-8
    return ok, f"max|Q|={worst_q:.2e}, critical root err={worst_crit:.2e}, series err={series_err:.2e}", {
        "max_q": worst_q, "critical_err": worst_crit, "series_err": series_err,
    }


def suite_analysis(full: bool = True) -> list[Check]:
    s = "analysis"
    return [
        timed(s, "fuss_catalan_triple", lambda: check_fuss_catalan(s_max=8 if full else 5)),
        timed(s, "root_consistency", check_roots),
    ]


# -- bootstrap ---------------------------------------------------------------------

ORACLE_P = (0.1, 0.2, 0.3, 0.45, 0.6)


def check_oracle(ds=(2, 3), n_max: int = 12, seeds: int = 100) -> tuple[bool, str]:
    runs = 0
    for d in ds:
        for n in range(d + 2, n_max + 1):
            for seed in range(seeds):
                inst = Instance(n, d, ORACLE_P[seed % len(ORACLE_P)], 1000 * n + seed)
                y0 = sample_complex(inst)
                fifo = close(y0, instance=inst)
                lifo = close(y0, lifo=True)
                naive = close_naive(y0)
                runs += 1
                if fifo.infected != naive:
                    return False, f"fifo != naive at d={d} n={n} seed={inst.seed}"
                if lifo.infected != fifo.infected:
                    return False, f"lifo != fifo at d={d} n={n} seed={inst.seed}"
                if replay(fifo) != fifo.infected:
                    return False, f"certificate replay failed at d={d} n={n} seed={inst.seed}"
    return True, f"{runs} instances: FIFO = LIFO = naive, certificates replay"


def check_incremental(trials: int = 30, seed: int = 0) -> tuple[bool, str]:
    rng = make_rng(seed)
    for t in range(trials):
        d = 2 + t % 2
        n = int(rng.integers(d + 3, 13))
        inst = Instance(n, d, 0.08, seed * 1000 + t)
        st = close(sample_complex(inst))
        added = []
        for _ in range(5):
            r = int(rng.integers(st.size))
            f = colex_unrank(r, d + 1)
            st, new = incremental_add(st, f)
            added.append(f)
            ref = close(FaceSet(n, d, sample_complex(inst).bits | FaceSet.from_faces(n, d, added).bits))
            if ref.infected != st.infected:
                return False, f"trial {t}: incremental closure differs from re-closure"
            if replay(st) != st.infected:
                return False, f"trial {t}: certificates broken after insertion"
    return True, f"{trials} runs of 5 insertions"


def check_monotone(trials: int = 50, seed: int = 0) -> tuple[bool, str]:
    rng = make_rng(seed)
    for t in range(trials):
        d = 2 + t % 2
        n = int(rng.integers(d + 3, 14))
        y = sample_complex(Instance(n, d, 0.15, seed * 7919 + t))
        extra = rng.random(y.size) < 0.05
        big = FaceSet(n, d, y.bits | extra)
        if not close(y).infected <= close(big).infected:
            return False, f"trial {t}: closure not monotone"
    return True, f"{trials} nested pairs"


def suite_bootstrap(full: bool = True) -> list[Check]:
    s = "bootstrap"
    return [
        timed(s, "oracle_equivalence", lambda: check_oracle(seeds=100 if full else 5, n_max=12 if full else 9)),
        timed(s, "incremental_vs_reclosure", lambda: check_incremental(30 if full else 5)),
        timed(s, "monotonicity", lambda: check_monotone(50 if full else 8)),
    ]


# -- pedigree ---------------------------------------------------------------------


def check_fig6() -> tuple[bool, str, dict]:
    P = fig6_pedigree()
    st = stats(P)
    faces = P.faces()
    beta = betti_top(faces)
    F = shift(faces, ShiftContext(len(vertex_support(faces)), 0))
    bt = b_top(F)
    ok = (
        is_valid(P) and (st.m, st.l, st.s, st.a, st.b) == (6, 11, 3, 4, 2)
        and beta == 7 and bt == 7 and check_excess_bound(st)
    )
    return ok, f"(m,l,s,a,b)={st.as_tuple()}, beta_2={beta}, b_top(shift)={bt}", {
        "stats": st.as_tuple(), "beta": beta, "b_top": bt,
    }


def check_excess_sweep(pedigrees: Iterable[tuple[str, Pedigree]], betti_limit: int = 2000) -> tuple[bool, str, dict]:
    count = 0
    betti_checked = 0
    for name, P in pedigrees:
        count += 1
        if not is_valid(P):
            return False, f"{name}: invalid pedigree", {}
        st = stats(P)
        if not check_excess_bound(st):
            return False, f"{name}: bound fails for {st.as_tuple()}", {}
        faces = P.faces()
        if len(faces) <= betti_limit and len(P.labels()) <= 14:
            betti_checked += 1
            if betti_top(faces) < st.m:
                return False, f"{name}: beta_d < m", {}
    return True, f"{count} pedigrees, zero violations ({betti_checked} with beta_d >= m)", {"count": count}


def check_witness_bound(n: int = 60, seeds: int = 5) -> tuple[bool, str]:
    from .analysis import critical_p

    sizes = []
    for seed in range(seeds):
        st = run_instance(Instance(n, 2, critical_p(2, n), seed))
        if st.order.shape[0] == len(st.y0):
            continue
        # the last infection tends to have the deepest witness
        P = extract_witness(st, colex_unrank(int(st.order[-1]), 3))
        sizes.append(len(P.nodes))
        if not check_excess_bound(stats(P)):
            return False, f"seed {seed}: witness violates the bound"
    return True, f"{len(sizes)} witnesses at n={n}, node counts {sizes}"


def check_subpedigree_H(d: int = 2, s_max: int = 4) -> tuple[bool, str]:
    rep = verify_subpedigree_H(d, s_max)
    msg = f"{rep.trees} trees, {rep.pairs} (T, P) pairs"
    if not rep.ok:
        return False, msg + f", first failure {rep.failures[0]}"
    return True, msg


def check_classification(trials: int = 50, seed: int = 0) -> tuple[bool, str]:
    rng = make_rng(seed)
    for t in range(trials):
        L = random_balanced_proper(2, 2, 16, seed * 1000 + t)
        leaves = L.leaves()
        if any(c is not LabelClass.ENCIRCLED_IN_P for c in classify_labels(leaves, L).values()):
            return False, f"trial {t}: P = L not all encircled"
        if any(c is not LabelClass.ENCIRCLED_IN_COMPLEMENT for c in classify_labels([], L).values()):
            return False, f"trial {t}: P = empty not all in the complement"
        mask = rng.random(len(leaves)) < 0.5
        P = [f for f, keep in zip(leaves, mask) if keep]
        try:
            classify_labels(P, L)  # raises if the two tests disagree
        except AssertionError as e:
            return False, f"trial {t}: {e}"
    return True, f"{trials} balanced pedigrees with s=7, link and cycle tests agree"


def check_leaf_sets(ns=(7, 8, 9)) -> tuple[bool, str, dict]:
    parts = []
    data = {}
    ok = True
    for n in ns:
        rep = enumerate_P(2, 1, n)
        ok &= rep.ok
        parts.append(f"n={n}: |L|={rep.num_L}/{rep.expected_L}, {rep.num_P} P, max ext ratio {rep.max_extension_ratio:.3g}")
        data[n] = {"L": rep.num_L, "expected": rep.expected_L, "P": rep.num_P, "ok": rep.ok}
    return ok, "; ".join(parts), data


def suite_pedigree(full: bool = True) -> list[Check]:
    s = "pedigree"
    return [
        timed(s, "fig6", check_fig6),
        timed(s, "excess_bound_sweep", lambda: check_excess_sweep(pedigree_zoo(full))),
        timed(s, "witness_bound", lambda: check_witness_bound(60, 5 if full else 2)),
        timed(s, "subpedigree_H_exhaustive", lambda: check_subpedigree_H(2, 4 if full else 3)),
        timed(s, "label_classification", lambda: check_classification(50 if full else 5)),
        timed(s, "leaf_set_enumeration", lambda: check_leaf_sets((7, 8, 9) if full else (7,))),
    ]


# -- shifting ---------------------------------------------------------------------


def check_shift_basics() -> tuple[bool, str]:
    for d in (1, 2, 3):
        sphere = set(itertools.combinations(range(1, d + 3), d + 1))
        if shift(sphere, ShiftContext(d + 2)).as_set() != sphere:
            return False, f"simplex boundary d={d} not fixed"
        for f in [tuple(range(2, d + 3)), tuple(range(3, 2 * d + 4, 2))]:
            if shift([f], ShiftContext(max(f))).as_set() != {tuple(range(1, d + 2))}:
                return False, f"single face {f} not shifted to [d+1]"
    return True, "simplex boundaries fixed, single faces go to [d+1]"


def check_bjorner_kalai(trials: int = 100, seed: int = 0) -> tuple[bool, str]:
    rng = make_rng(seed)
    for t in range(trials):
        d = 2 if t % 3 else 3
        n = int(rng.integers(d + 2, 10))
        K = random_complex(n, d, float(rng.uniform(0.2, 0.7)), rng)
        if not K:
            K = [tuple(range(1, d + 2))]
        F = shift(K, ShiftContext(n, seed * 1000 + t))
        if len(F) != len(K) or not is_shifted(F):
            return False, f"trial {t}: shift is not a shifted family of the same size"
        if betti_top(K) != b_top(F):
            return False, f"trial {t}: beta_d={betti_top(K)} != b_top={b_top(F)}"
    return True, f"{trials} random complexes, n <= 9"


def check_shift_monotone(trials: int = 100, seed: int = 0) -> tuple[bool, str]:
    rng = make_rng(seed + 1)
    for t in range(trials):
        d = 2 if t % 3 else 3
        n = int(rng.integers(d + 2, 10))
        K = random_complex(n, d, float(rng.uniform(0.3, 0.8)), rng) or [tuple(range(1, d + 2))]
        sub = [f for f in K if rng.random() < 0.6] or [K[0]]
        ctx = ShiftContext(n, seed * 1000 + t)
        if not shift(sub, ctx).as_set() <= shift(K, ctx).as_set():
            return False, f"trial {t}: shift not monotone"
    return True, f"{trials} nested pairs"


def claim33_pedigrees(count: int = 200, seed: int = 0) -> list[Pedigree]:
    out = []
    half = count // 2
    for i in range(half):
        d = 2 + i % 2
        s = 1 + i % 6
        out.append(random_proper(d, s, s + d + 1 + i % 3, seed + i))
    out += small_witnesses(2, 9, (count - half + 1) // 2, seed + 1, max_s=6)
    out += small_witnesses(3, 10, count - len(out), seed + 2, max_s=6)
    return out


def check_claim33(count: int = 200, seed: int = 0) -> tuple[bool, str]:
    Ps = claim33_pedigrees(count, seed)
    for i, P in enumerate(Ps):
        if not verify_claim33(P.faces(), seed=seed + i):
            return False, f"pedigree {i} (stats {stats(P).as_tuple()}): face missing from the shift"
    return True, f"{len(Ps)} pedigrees (proper and witness-derived, s <= 6)"


def glued_union(d: int, seed: int) -> tuple[list, list, int]:
    """Two pedigree complexes rooted at a common face whose vertex sets meet
    exactly in that face, under a random relabelling."""
    rng = make_rng(seed)
    s1, s2 = int(rng.integers(1, 4)), int(rng.integers(1, 4))
    A = random_proper(d, s1, s1 + d + 1, seed).faces()
    B = random_proper(d, s2, s2 + d + 1, seed + 1).faces()
    B = [tuple(sorted(v if v <= d + 1 else v + s1 for v in f)) for f in B]
    N = s1 + s2 + d + 1
    perm = rng.permutation(N) + 1
    mp = lambda f: tuple(sorted(int(perm[v - 1]) for v in f))
    return [mp(f) for f in A], [mp(f) for f in B], N


def check_nevo(count: int = 50, seed: int = 0) -> tuple[bool, str]:
    faces = 0
    for i in range(count):
        d = 2 if i % 4 else 3
        G1, G2, N = glued_union(d, seed * 1000 + i)
        for c in check_nevo_all(G1, G2, ShiftContext(N, seed + i)):
            faces += 1
            if not c.ok:
                return False, f"union {i}: {c}"
    return True, f"{count} glued unions, {faces} faces tested"


def check_claim33_induction() -> tuple[bool, str]:
    """Glue a one-move on a fresh label z to G_k (d=2) at the root and check
    the three D values of the inductive step: (s-1, 1, 0) for the glued
    complex with s labels."""
    from .shifting import claim33_face, nevo_D

    for k in range(5, 9):
        Kp = relabel_onto_prefix(generate_Gk(2, k).faces())
        s = len(vertex_support(Kp)) - 3
        z = s + 4
        u = (1, 2, 3)
        L = [u, (1, 2, z), (1, 3, z), (2, 3, z)]
        K = sorted(set(Kp) | set(L))
        ctx = ShiftContext(z, k)
        v0 = claim33_face(2, s + 1)
        D = (nevo_D(Kp, v0, ctx), nevo_D(L, v0, ctx), nevo_D([u], v0, ctx))
        if D != (s, 1, 0) or v0 not in shift(K, ctx):
            return False, f"k={k}: D={D}, expected ({s}, 1, 0)"
    return True, "D values (s-1, 1, 0) for G_5..G_8 plus a fresh one-move"


def suite_shifting(full: bool = True) -> list[Check]:
    s = "shifting"
    return [
        timed(s, "basics", check_shift_basics),
        timed(s, "bjorner_kalai", lambda: check_bjorner_kalai(100 if full else 10)),
        timed(s, "monotonicity", lambda: check_shift_monotone(100 if full else 10)),
        timed(s, "claim33", lambda: check_claim33(200 if full else 12)),
        timed(s, "claim33_induction", check_claim33_induction),
        timed(s, "nevo", lambda: check_nevo(50 if full else 5)),
    ]


# -- rigidity ---------------------------------------------------------------------


def rigidity_pedigrees(count: int = 100, seed: int = 0) -> list[Pedigree]:
    out = [fig6_pedigree()] + [generate_Gk(2, k) for k in range(4, 8)] + [generate_Gk(3, k) for k in (5, 6)]
    i = 0
    while len(out) < count * 2 // 3:
        d = 2 + i % 2
        s = 1 + i % (12 - d - 1)
        out.append(random_proper(d, s, s + d + 1, seed + i))
        i += 1
    out += small_witnesses(2, 10, (count - len(out) + 1) // 2, seed + 3, max_s=9)
    out += small_witnesses(3, 10, count - len(out), seed + 4, max_s=8)
    return out


def check_prop_a1(count: int = 100, seed: int = 0) -> tuple[bool, str]:
    Ps = rigidity_pedigrees(count, seed)
    for i, P in enumerate(Ps):
        rep = verify_prop_a1(P, seed=seed + i)
        if not rep.passed:
            return False, f"pedigree {i}: {rep}"
    return True, f"{len(Ps)} pedigrees: rank = ds+1, ker dim = l-(ds+1)"


def check_kernel(trials: int = 30, seed: int = 0) -> tuple[bool, str]:
    rng = make_rng(seed)
    for t in range(trials):
        d = 2 + t % 2
        N = int(rng.integers(d + 2, 10))
        cfg = PointConfig.random(d, N, seed * 1000 + t)
        K = random_complex(N, d, 0.5, rng) or [tuple(range(1, d + 2))]
        _, A = rigidity_matrix(K, cfg)
        ker = left_kernel_basis(cfg)
        if len(ker) != d * d + d - 1 or linalg.rank_exact(ker) != d * d + d - 1:
            return False, f"trial {t}: kernel basis is not independent"
        cols = list(zip(*A))
        if any(inner(z, c) for z in ker for c in cols):
            return False, f"trial {t}: kernel vector does not annihilate A_K"
        s = N - d - 1
        if linalg.rank_exact(A) > d * s + 1:
            return False, f"trial {t}: rank above ds+1"
    return True, f"{trials} complexes, {{d+d^2-1}}-dimensional kernel annihilates A_K"


def check_claim_a2(trials: int = 1000, seed: int = 0) -> tuple[bool, str]:
    rng = make_rng(seed)
    cfgs = {(d, j): PointConfig.random(d, 9, seed * 100 + 10 * d + j) for d in (2, 3) for j in range(10)}
    seen_k = {2: set(), 3: set()}
    for t in range(trials):
        d = 2 + t % 2
        cfg = cfgs[(d, int(rng.integers(10)))]
        vs = [int(x) + 1 for x in rng.choice(9, size=d + 2, replace=False)]
        f, z = tuple(sorted(vs[:-1])), vs[-1]
        seen_k[d].add(insertion_position(f, z))
        if not verify_claim_a2(f, z, cfg):
            return False, f"trial {t}: identity fails for f={f}, z={z}"
    for d, ks in seen_k.items():
        if ks != set(range(1, d + 3)):
            return False, f"d={d}: insertion positions {sorted(ks)} not all exercised"
    return True, f"{trials} triples, every insertion position exercised"


def check_claim_a3(trials: int = 100, seed: int = 0) -> tuple[bool, str]:
    rng = make_rng(seed)
    for t in range(trials):
        d = 2 + t % 2
        N = 8
        cfg = PointConfig.random(d, N, seed * 1000 + t)
        vs = [int(x) + 1 for x in rng.choice(N, size=d + 2, replace=False)]
        f, z = tuple(sorted(vs[:-1])), vs[-1]
        pool = [g for g in faces_of(N, d) if z not in g]
        if t % 5 == 0:
            extra = [f]
        else:
            idx = rng.choice(len(pool), size=int(rng.integers(1, 6)), replace=False)
            extra = [pool[i] for i in idx]
        if not verify_claim_a3(f, z, extra, cfg, seed=t):
            return False, f"trial {t}: dependence for f={f}, z={z}"
        if claim_a3_negative_control(f, z, extra, cfg, seed=t) >= d + 3:
            return False, f"trial {t}: negative control has full rank"
    return True, f"{trials} configurations independent; negative controls dependent"


def check_motions(trials: int = 20, seed: int = 0) -> tuple[bool, str]:
    rng = make_rng(seed)
    for t in range(trials):
        d = 2 + t % 2
        N = d + 3
        cfg = PointConfig.random(d, N, seed * 1000 + t)
        f = tuple(sorted(int(x) + 1 for x in rng.choice(N, size=d + 1, replace=False)))
        w = flat(cofactor_vector(f, cfg))
        z = [[int(x) for x in row] for row in rng.integers(-5, 6, size=(N, d))]
        if motion_derivative(f, cfg, z) != inner(flat(z), w):
            return False, f"trial {t}: derivative != <z, w_f>"
        for kv in left_kernel_basis(cfg):
            if inner(kv, w):
                return False, f"trial {t}: trivial motion changes the volume"
        K = random_complex(N, d, 0.5, rng)
        if f not in K:
            K.append(f)
        zz = next(v for v in range(1, N + 1) if v not in f)
        before, after = subdivision_ranks(K, f, zz, cfg)
        if before > after:
            return False, f"trial {t}: subdivision lowered the rank"
    return True, f"{trials} motions: derivative identity, trivial motions, subdivision ranks"


def suite_rigidity(full: bool = True) -> list[Check]:
    s = "rigidity"
    return [
        timed(s, "prop_a1", lambda: check_prop_a1(100 if full else 10)),
        timed(s, "left_kernel", lambda: check_kernel(30 if full else 5)),
        timed(s, "claim_a2", lambda: check_claim_a2(1000 if full else 50)),
        timed(s, "claim_a3", lambda: check_claim_a3(100 if full else 10)),
        timed(s, "motions", lambda: check_motions(20 if full else 4)),
    ]


SUITES = {
    "core": suite_core,
    "analysis": suite_analysis,
    "bootstrap": suite_bootstrap,
    "pedigree": suite_pedigree,
    "shifting": suite_shifting,
    "rigidity": suite_rigidity,
}


def run_suites(names: Iterable[str], full: bool = True) -> list[Check]:
    out = []
    for name in names:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
        out.extend(SUITES[name](full))
    return out
