"""Weighted family construction via geometric weight-class rounding.

Elements are bucketed into classes U_i = {u : gamma^i <= w(u) < gamma^(i+1)}
with gamma = 1 + delta/2.  Per class, an unweighted family is built on the
re-indexed class universe; for each occupied index k the classes in the
window [k-d, k] are combined as a Cartesian product, each entry unioned with
the cheap prefix W_k of all classes below the window.  The window width
d = ceil((2/delta) * log2(2n/delta)) guarantees gamma^d >= 2n/delta, which is
what makes the prefix negligible against any set touching class k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from . import bounds, families
from .families import CoveringFamily, ExtensionFamily, ResourceCapError, DEFAULT_CAP

__all__ = [
    "WeightClassPartition",
    "WeightedFamilyReport",
    "partition_by_weight",
    "build_weighted_covering",
    "build_weighted_extension",
    "combine_blocks",
]


@dataclass(frozen=True)
class WeightClassPartition:
    gamma: float
    delta: float
    classes: dict[int, tuple[int, ...]]  # class index -> sorted element ids
    index_set: tuple[int, ...]
    d: int
    n: int


@dataclass
class WeightedFamilyReport:
    family: CoveringFamily | ExtensionFamily
    schedule: dict
    cost_log: float | None = None


def _class_index(w: int, gamma: float) -> int:
    """Largest i with gamma^i <= w, computed robustly against float log error."""
    i = max(0, math.floor(math.log(w, gamma)))
    while gamma ** (i + 1) <= w:
        i += 1
    while i > 0 and gamma**i > w:
        i -= 1
    return i


def partition_by_weight(weights, delta: float) -> WeightClassPartition:
    """Bucket elements into geometric weight classes with gamma = 1 + delta/2."""
    if not 0 < delta < 1:
        raise ValueError(f"delta must be in (0, 1), got {delta}")
    for w in weights:
        if w < 1:
            raise ValueError(f"weights must be >= 1, got {w}")
    gamma = 1.0 + delta / 2.0
    n = len(weights)
    classes: dict[int, list[int]] = {}
    for u, w in enumerate(weights):
        classes.setdefault(_class_index(w, gamma), []).append(u)
    d = math.ceil((2.0 / delta) * math.log2(2 * n / delta)) if n > 0 else 0
    part = WeightClassPartition(
        gamma=gamma,
        delta=delta,
        classes={i: tuple(sorted(us)) for i, us in classes.items()},
        index_set=tuple(sorted(classes)),
        d=d,
        n=n,
    )
    if n > 0:
        assert gamma**d >= 2 * n / delta - 1e-9, "window width too small for the prefix bound"
    return part


def _remap(local_mask: int, elems: tuple[int, ...]) -> int:
    """Translate a mask over {0..len(elems)-1} into global element ids."""
    out = 0
    for j, e in enumerate(elems):
        if local_mask >> j & 1:
            out |= 1 << e
    return out


def combine_blocks(
    partition: WeightClassPartition,
    per_class: dict[int, list[tuple[int, int]]],
    k: int,
) -> list[tuple[int, int]]:
    """Product block for window index k: prefix union of per-class entries, budgets summed.

    Entries in `per_class` are already in global coordinates.  For covering
    families pass budget 0 everywhere and ignore budgets in the result.
    """
    if k not in partition.index_set:
        raise ValueError(f"k = {k} is not an occupied class index")
    w_k = 0
    for i in partition.index_set:
        if i < k - partition.d:
            w_k |= _mask_of(partition.classes[i])
    block = [(w_k, 0)]
    for i in partition.index_set:
        if k - partition.d <= i <= k:
            block = [
                (t | e, ell + l2) for t, ell in block for e, l2 in per_class[i]
            ]
    return block


def _mask_of(elems: tuple[int, ...]) -> int:
    m = 0
    for e in elems:
        m |= 1 << e
    return m


@lru_cache(maxsize=4096)
def _unweighted_covering_cached(n: int, alpha: float, cap: int) -> CoveringFamily:
    return families.build_unweighted_covering(n, alpha, cap=cap)


@lru_cache(maxsize=4096)
def _unweighted_extension_cached(
    n: int, alpha: float, c: float, beta: float, cap: int
) -> ExtensionFamily:
    return families.build_unweighted_extension(n, alpha, c, beta, cap=cap)


def _covering_schedule(alpha: float, n: int, mode: str) -> tuple[float, float]:
    """Split alpha = (1 + delta) * beta into an inner target and rounding slack.

    Schedule mode follows beta(n) = alpha - 1/log2(n) when that leaves
    beta > 1 and delta in (0, 1); otherwise (and in fixed mode) the
    n-independent split delta = (alpha-1)/(alpha+1), beta = (alpha+1)/2.
    """
    if mode not in ("schedule", "fixed"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "schedule" and n >= 3:
        beta = alpha - 1.0 / math.log2(n)
        if beta > 1.0:
            delta = alpha / beta - 1.0
            if 0 < delta < 1:
                return delta, beta
    delta = (alpha - 1.0) / (alpha + 1.0)
    return delta, (alpha + 1.0) / 2.0


def build_weighted_covering(
    weights,
    alpha: float,
    mode: str = "fixed",
    eps: float = 1e-3,
    cap: int = DEFAULT_CAP,
) -> WeightedFamilyReport:
    """alpha-covering family of an arbitrarily weighted universe.

    Inner unweighted families target beta with (1 + delta) * beta = alpha, so
    the rounding slack of the weight classes is exactly absorbed.
    """
    if alpha <= 1:
        raise ValueError(f"alpha must be > 1, got {alpha}")
    n = len(weights)
    if n == 0:
        fam = CoveringFamily(universe_size=0, alpha=alpha, sets=[0])
        return WeightedFamilyReport(family=fam, schedule={"delta": 0.0, "inner": alpha})
    delta, beta = _covering_schedule(alpha, n, mode)
    part = partition_by_weight(weights, delta)

    per_class: dict[int, list[tuple[int, int]]] = {}
    class_sizes: dict[int, int] = {}
    for i in part.index_set:
        elems = part.classes[i]
        sub = _unweighted_covering_cached(len(elems), beta, cap)
        per_class[i] = [(_remap(t, elems), 0) for t in sub.sets]
        class_sizes[i] = len(sub.sets)

    seen: set[int] = set()
    sets: list[int] = []
    for k in part.index_set:
        for t, _ in combine_blocks(part, per_class, k):
            if t not in seen:
                seen.add(t)
                sets.append(t)
    fam = CoveringFamily(universe_size=n, alpha=alpha, sets=sets)
    schedule = {
        "delta": delta,
        "inner": beta,
        "d": part.d,
        "gamma": part.gamma,
        "mode": mode,
        "class_family_sizes": class_sizes,
    }
    return WeightedFamilyReport(family=fam, schedule=schedule)


def _select_inner_beta(alpha: float, c: float, beta: float, eps: float) -> float:
    """Inner target zeta' in (1, beta) with amls within eps/2 of the target bound.

    Probes zeta'_j = 1 + (beta - 1) * 2^-j walk geometrically from beta toward
    1; the deepest probe still within eps/2 (and leaving delta = beta/zeta' - 1
    below 1) wins, since a deeper probe means a wider rounding slack and a
    narrower combination window.  Falls back to the midpoint (1 + beta)/2.
    """
    target = _amls_cached(alpha, c, beta) + eps / 2.0
    chosen = None
    for j in range(1, 21):
        zeta = 1.0 + (beta - 1.0) * 2.0**-j
        if zeta <= beta / 2.0 or zeta <= 1.0:
            break
        if _amls_cached(alpha, c, zeta) <= target:
            chosen = zeta
        else:
            break
    if chosen is None:
        chosen = (1.0 + beta) / 2.0
    return chosen


@lru_cache(maxsize=65536)
def _amls_cached(alpha: float, c: float, beta: float) -> float:
    return bounds.amls_bound(bounds.BoundParams(alpha=alpha, c=c, beta=beta)).value


def build_weighted_extension(
    weights,
    alpha: float,
    c: float,
    beta: float,
    eps: float = 0.05,
    cap: int = DEFAULT_CAP,
) -> WeightedFamilyReport:
    """(alpha, beta)-extension family of an arbitrarily weighted universe."""
    if alpha < 1 or c < 1:
        raise ValueError("alpha and c must be >= 1")
    if beta <= 1:
        raise ValueError(f"beta must be > 1, got {beta}")
    if eps <= 0:
        raise ValueError(f"eps must be > 0, got {eps}")
    n = len(weights)
    if n == 0:
        fam = ExtensionFamily(universe_size=0, alpha=alpha, beta=beta, entries=[(0, 0)])
        return WeightedFamilyReport(
            family=fam, schedule={"delta": 0.0, "inner": beta}, cost_log=0.0
        )
    zeta = _select_inner_beta(alpha, c, beta, eps)
    delta = beta / zeta - 1.0
    part = partition_by_weight(weights, delta)

    per_class: dict[int, list[tuple[int, int]]] = {}
    class_sizes: dict[int, int] = {}
    for i in part.index_set:
        elems = part.classes[i]
        sub = _unweighted_extension_cached(len(elems), alpha, c, zeta, cap)
        per_class[i] = [(_remap(t, elems), ell) for t, ell in sub.entries]
        class_sizes[i] = len(sub.entries)

    seen: set[tuple[int, int]] = set()
    entries: list[tuple[int, int]] = []
    for k in part.index_set:
        for entry in combine_blocks(part, per_class, k):
            if entry not in seen:
                seen.add(entry)
                entries.append(entry)
    fam = ExtensionFamily(universe_size=n, alpha=alpha, beta=beta, entries=entries)
    schedule = {
        "delta": delta,
        "inner": zeta,
        "d": part.d,
        "gamma": part.gamma,
        "eps": eps,
        "class_family_sizes": class_sizes,
    }
    return WeightedFamilyReport(
        family=fam, schedule=schedule, cost_log=families.family_cost(fam, c)
    )
