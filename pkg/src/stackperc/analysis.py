"""Fuss-Catalan numbers, the growth constant alpha_d and the density root.

For ``p = gamma * n**(-1/d)`` the subcritical infected density scales like
``hat_gamma(gamma) * n**(-1/d)``, where ``hat_gamma`` is the smallest
positive root of ``x**(d+1) - x + gamma``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterator

ROOT_TOL = 1e-12
TREE_ENUM_LIMIT = 10**6


def _check_d(d: int) -> None:
    if d < 2:
        raise ValueError(f"dimension d must be >= 2, got {d}")


def fuss_catalan(d: int, s: int) -> int:
    """Number of (d+1)-ary trees with ``s`` internal nodes (closed form)."""
    _check_d(d)
    if s < 0:
        raise ValueError("s must be >= 0")
    return comb((d + 1) * s, s) // (d * s + 1)


@lru_cache(maxsize=None)
def _compositions_sum(d: int, parts: int, total: int) -> int:
    # sum over s_1 + ... + s_parts = total of prod C_d(s_j)
    if parts == 0:
        return 1 if total == 0 else 0
    return sum(
        fuss_catalan_recursive(d, a) * _compositions_sum(d, parts - 1, total - a)
        for a in range(total + 1)
    )


@lru_cache(maxsize=None)
def fuss_catalan_recursive(d: int, s: int) -> int:
    """C_d(s) from the convolution recursion over the d+1 subtrees."""
    _check_d(d)
    if s == 0:
        return 1
    return _compositions_sum(d, d + 1, s - 1)


def alpha(d: int) -> Fraction:
    _check_d(d)
    return Fraction((d + 1) ** (d + 1), d**d)


def gamma_critical(d: int) -> float:
    """alpha_d ** (-1/d): the critical value of gamma."""
    return float(alpha(d)) ** (-1.0 / d)


def critical_p(d: int, n: int) -> float:
    _check_d(d)
    if n <= d + 1:
        raise ValueError(f"need n > d+1, got n={n}")
    p = (float(alpha(d)) * n) ** (-1.0 / d)
    if p >= 1.0:
        raise ValueError(f"(alpha_d n)^(-1/d) = {p:.4g} >= 1; n={n} is too small")
    return p


def q_poly(d: int, gamma: float, x: float) -> float:
    return x ** (d + 1) - x + gamma


@dataclass(frozen=True)
class DensityQuery:
    d: int
    gamma: float

    def __post_init__(self):
        _check_d(self.d)
        if self.gamma < 0:
            raise ValueError("gamma must be >= 0")
        # the boundary point itself is allowed: the double root is still the answer
        if self.gamma > gamma_critical(self.d) * (1 + 1e-15):
            raise ValueError(
                f"gamma={self.gamma} is above alpha_d^(-1/d)={gamma_critical(self.d)}; "
                "no subcritical root"
            )


def hat_gamma(q: DensityQuery | int, gamma: float | None = None) -> float:
    """Smallest non-negative root of ``x^(d+1) - x + gamma`` by bisection.

    Accepts either a :class:`DensityQuery` or ``(d, gamma)``.
    """
    if not isinstance(q, DensityQuery):
        q = DensityQuery(q, gamma)
    d, g = q.d, q.gamma
    if g == 0:
        return 0.0
    lo, hi = 0.0, (d + 1) ** (-1.0 / d)
    # Q is decreasing on [lo, hi]; Q(lo) = g > 0. At the critical gamma Q(hi)
    # is ~0 up to rounding, so the upper end is kept as a valid bracket.
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if q_poly(d, g, mid) > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= ROOT_TOL * 1e-3:
            break
    return 0.5 * (lo + hi)


def density_series(d: int, gamma: float, s_max: int) -> float:
    """Partial sum of ``sum_s C_d(s) gamma^(ds+1)`` up to ``s_max``."""
    _check_d(d)
    total = 0.0
    for s in range(s_max + 1):
        total += fuss_catalan(d, s) * gamma ** (d * s + 1)
    return total


@dataclass(frozen=True)
class TreeShape:
    """A rooted (d+1)-ary tree, stored as its preorder arity string.

    Each character is ``'I'`` (internal node, d+1 ordered children) or
    ``'L'`` (leaf).
    """

    d: int
    code: str

    @property
    def internal(self) -> int:
        return self.code.count("I")

    @property
    def leaves(self) -> int:
        return self.code.count("L")

    def children(self) -> list["TreeShape"]:
        """Split the code of an internal root into its d+1 subtrees."""
        if self.code[0] != "I":
            return []
        out = []
        pos = 1
        for _ in range(self.d + 1):
            need = 1
            start = pos
            while need:
                need += self.d if self.code[pos] == "I" else -1
                pos += 1
            out.append(TreeShape(self.d, self.code[start:pos]))
        return out

    def __str__(self) -> str:
        return self.code


@lru_cache(maxsize=None)
def tree_codes(d: int, s: int) -> tuple[str, ...]:
    """Preorder codes of all (d+1)-ary trees with ``s`` internal nodes, built
    from the codes of the subtrees over every composition of ``s - 1``."""
    if s == 0:
        return ("L",)
    out = []
    for sizes in _compositions(s - 1, d + 1):
        for parts in itertools.product(*(tree_codes(d, k) for k in sizes)):
            out.append("I" + "".join(parts))
    return tuple(out)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for a in range(total + 1):
        for rest in _compositions(total - a, parts - 1):
            yield (a,) + rest


def enumerate_trees(d: int, s: int) -> list[TreeShape]:
    """All (d+1)-ary trees with ``s`` internal nodes."""
    count = fuss_catalan(d, s)
    if count > TREE_ENUM_LIMIT:
        raise ValueError(
            f"C_{d}({s}) = {count} trees exceeds the enumeration limit {TREE_ENUM_LIMIT}"
        )
    return [TreeShape(d, c) for c in tree_codes(d, s)]
