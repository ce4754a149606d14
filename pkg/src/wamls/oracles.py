"""Extension oracles: exact enumeration, bounded branching, and local ratio.

An oracle is a callable (S, ell) -> X with X | S a solution, where w(X) is
within the oracle's declared factor alpha of the best extension of size at
most ell (if none exists the weight bound is vacuous and the oracle returns
the full complement).  Ties are broken by weight, then cardinality, then the
bitmask itself, so every oracle is deterministic.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import problems
from .families import ResourceCapError, DEFAULT_CAP
from .problems import (
    Instance,
    WeightedFVSInstance,
    WeightedHSInstance,
    WeightedVCInstance,
    membership_table,
    weight_of,
    _fvs_acyclic,
)

__all__ = [
    "QueryLedger",
    "ExtensionOracleHandle",
    "exact_extension_oracle",
    "branching_vc_oracle",
    "local_ratio_vc_oracle",
    "branching_hs_oracle",
    "local_ratio_hs_oracle",
    "local_ratio_fvs_oracle",
    "wrap_with_ledger",
    "oracle_for",
]

OracleFn = Callable[[int, int], int]


@dataclass
class QueryLedger:
    queries: list[tuple[int, int]] = field(default_factory=list)
    wall_time: float = 0.0

    def cost_log(self, c: float) -> float:
        """ln sum(c^ell) over recorded queries (log-sum-exp; -inf when empty)."""
        if not self.queries:
            return -math.inf
        logc = math.log(c)
        terms = [ell * logc for _, ell in self.queries]
        m = max(terms)
        return m + math.log(sum(math.exp(t - m) for t in terms))


@dataclass
class ExtensionOracleHandle:
    extend: OracleFn
    declared_alpha: float
    declared_c: float
    ledger: QueryLedger


def wrap_with_ledger(
    oracle: OracleFn, c: float, alpha: float = 1.0
) -> ExtensionOracleHandle:
    """Attach a fresh query ledger to a bare oracle function."""
    return make_handle(oracle, alpha=alpha, c=c)


def make_handle(oracle: OracleFn, alpha: float, c: float) -> ExtensionOracleHandle:
    ledger = QueryLedger()

    def extend(subset: int, ell: int) -> int:
        t0 = time.perf_counter()
        out = oracle(subset, ell)
        ledger.wall_time += time.perf_counter() - t0
        ledger.queries.append((subset.bit_count(), ell))
        return out

    return ExtensionOracleHandle(
        extend=extend, declared_alpha=alpha, declared_c=c, ledger=ledger
    )


def _best_key(instance: Instance, mask: int) -> tuple[int, int, int]:
    return weight_of(instance, mask), mask.bit_count(), mask


def exact_extension_oracle(instance: Instance, cap: int = DEFAULT_CAP) -> OracleFn:
    """Minimum-weight extension by exhaustive scan (alpha = 1)."""
    n = instance.n
    if n > cap:
        raise ResourceCapError(f"n = {n} exceeds enumeration cap {cap}")
    table = membership_table(instance)
    size = 1 << n
    masks = np.arange(size)
    w = np.zeros(size, dtype=np.int64)
    pc = np.zeros(size, dtype=np.int64)
    for i in range(n):
        hit = masks & (1 << i) != 0
        w[hit] += instance.weights[i]
        pc[hit] += 1
    full = size - 1

    def extend(subset: int, ell: int) -> int:
        if ell == 0:
            return 0 if table[subset] else full & ~subset
        feasible = np.flatnonzero((masks & subset == 0) & (pc <= ell) & table[masks | subset])
        if feasible.size == 0:
            return full & ~subset
        order = np.lexsort((feasible, pc[feasible], w[feasible]))
        return int(feasible[order[0]])

    return extend


def _branching_oracle(instance: Instance, first_violation, branch_elems) -> OracleFn:
    """Generic bounded search tree; exact among extensions of size <= ell."""
    n = instance.n
    full = (1 << n) - 1
    weights = instance.weights

    def extend(subset: int, ell: int) -> int:
        best: list[tuple[int, int, int] | None] = [None]

        def rec(chosen: int, chosen_w: int, depth: int) -> None:
            viol = first_violation(subset | chosen)
            if viol is None:
                key = (chosen_w, chosen.bit_count(), chosen)
                if best[0] is None or key < best[0]:
                    best[0] = key
                return
            if depth >= ell:
                return
            if best[0] is not None and chosen_w >= best[0][0]:
                return  # any completion only adds weight
            for v in branch_elems(viol):
                if not (subset | chosen) >> v & 1:
                    rec(chosen | 1 << v, chosen_w + weights[v], depth + 1)

        rec(0, 0, 0)
        if best[0] is None:
            return full & ~subset
        return best[0][2]

    return extend


def branching_vc_oracle(instance: WeightedVCInstance) -> OracleFn:
    """Two-way branching on the lowest-indexed uncovered edge (alpha=1, c=2)."""
    edges = instance.edges

    def first_violation(s: int):
        for e in edges:
            u, v = e
            if not (s >> u & 1 or s >> v & 1):
                return e
        return None

    return _branching_oracle(instance, first_violation, lambda e: e)


def branching_hs_oracle(instance: WeightedHSInstance) -> OracleFn:
    """d-way branching on the lowest-indexed unhit set (alpha=1, c=d)."""
    sets = instance.sets

    def first_violation(s: int):
        for f in sets:
            if not any(s >> e & 1 for e in f):
                return f
        return None

    return _branching_oracle(instance, first_violation, lambda f: f)


def local_ratio_vc_oracle(instance: WeightedVCInstance) -> OracleFn:
    """Bar-Yehuda/Even local ratio on the residual graph (alpha=2, c=1).

    The budget is ignored; the weight guarantee is inherited from
    2 * OPT(G - S) <= 2 * (any size-restricted optimum).
    """
    edges = instance.edges
    weights = instance.weights

    def extend(subset: int, ell: int) -> int:
        res = list(weights)
        residual = [e for e in edges if not (subset >> e[0] & 1 or subset >> e[1] & 1)]
        for u, v in residual:
            m = min(res[u], res[v])
            if m > 0:
                res[u] -= m
                res[v] -= m
        cover = [v for v in range(instance.n) if not subset >> v & 1 and res[v] == 0]
        return _reverse_delete(cover, lambda mask: all(
            mask >> u & 1 or mask >> v & 1 for u, v in residual
        ))

    return extend


def local_ratio_hs_oracle(instance: WeightedHSInstance) -> OracleFn:
    """Local ratio over unhit sets of the residual instance (alpha=d, c=1)."""
    weights = instance.weights

    def extend(subset: int, ell: int) -> int:
        res = list(weights)
        residual = [
            tuple(e for e in f if not subset >> e & 1)
            for f in instance.sets
            if not any(subset >> e & 1 for e in f)
        ]
        for f in residual:
            m = min(res[e] for e in f)
            if m > 0:
                for e in f:
                    res[e] -= m
        hitters = [v for v in range(instance.n) if not subset >> v & 1 and res[v] == 0]
        return _reverse_delete(hitters, lambda mask: all(
            any(mask >> e & 1 for e in f) for f in residual
        ))

    return extend


def _reverse_delete(candidates: list[int], is_feasible) -> int:
    """Drop candidates in reverse order while feasibility is preserved."""
    mask = 0
    for v in candidates:
        mask |= 1 << v
    for v in reversed(candidates):
        trial = mask & ~(1 << v)
        if is_feasible(trial):
            mask = trial
    return mask


def local_ratio_fvs_oracle(instance: WeightedFVSInstance) -> OracleFn:
    """Degree-weighted local ratio for feedback vertex set (alpha=2, c=1).

    Becker-Geiger scheme: after pruning degree <= 1 vertices and forcing
    self-loop vertices, subtract gamma * deg(v) with the largest gamma keeping
    all residuals nonnegative; zeroed vertices are stacked and a reverse
    delete pass restores minimality.  Exact rational arithmetic keeps the
    zero test and the pick order deterministic.
    """
    n = instance.n
    all_edges = instance.edges
    weights = instance.weights

    def extend(subset: int, ell: int) -> int:
        active = set(v for v in range(n) if not subset >> v & 1)
        edges = [e for e in all_edges if e[0] in active and e[1] in active]
        res = {v: Fraction(weights[v]) for v in active}
        stack: list[int] = []

        def degrees():
            deg = {v: 0 for v in active}
            for u, v in edges:
                deg[u] += 1
                deg[v] += 1  # a self-loop contributes 2
            return deg

        while True:
            # Prune: degree <= 1 vertices are on no cycle.
            while True:
                deg = degrees()
                low = [v for v in active if deg[v] <= 1]
                if not low:
                    break
                active.difference_update(low)
                edges = [e for e in edges if e[0] in active and e[1] in active]
            if not active:
                break
            looped = sorted({a for a, b in edges if a == b})
            if looped:
                v = looped[0]
                stack.append(v)
                active.remove(v)
                edges = [e for e in edges if v not in e]
                continue
            deg = degrees()
            gamma = min(res[v] / deg[v] for v in active)
            for v in active:
                res[v] -= gamma * deg[v]
            zeroed = sorted(v for v in active if res[v] == 0)
            stack.extend(zeroed)
            active.difference_update(zeroed)
            edges = [e for e in edges if e[0] in active and e[1] in active]

        surviving_base = ((1 << n) - 1) & ~subset
        residual_edges = [
            e for e in all_edges if not (subset >> e[0] & 1 or subset >> e[1] & 1)
        ]
        return _reverse_delete(
            stack,
            lambda mask: _fvs_acyclic(n, residual_edges, surviving_base & ~mask),
        )

    return extend


def oracle_for(
    instance: Instance, name: str, cap: int = DEFAULT_CAP
) -> ExtensionOracleHandle:
    """Named oracle with its honest declared (alpha, c)."""
    if name == "exact":
        return make_handle(exact_extension_oracle(instance, cap), alpha=1.0, c=2.0)
    if name == "branching":
        if isinstance(instance, WeightedVCInstance):
            return make_handle(branching_vc_oracle(instance), alpha=1.0, c=2.0)
        if isinstance(instance, WeightedHSInstance):
            return make_handle(
                branching_hs_oracle(instance), alpha=1.0, c=float(instance.d)
            )
        raise ValueError(f"no branching oracle for {instance.kind}")
    if name == "local-ratio":
        if isinstance(instance, WeightedVCInstance):
            return make_handle(local_ratio_vc_oracle(instance), alpha=2.0, c=1.0)
        if isinstance(instance, WeightedHSInstance):
            return make_handle(
                local_ratio_hs_oracle(instance), alpha=float(instance.d), c=1.0
            )
        if isinstance(instance, WeightedFVSInstance):
            return make_handle(local_ratio_fvs_oracle(instance), alpha=2.0, c=1.0)
    raise ValueError(f"unknown oracle {name!r} for {instance.kind}")
