"""Weighted problem instances: Vertex Cover, d-Hitting Set, Feedback Vertex Set.

Each instance exposes a monotone membership predicate over vertex subsets
(bitmask encoded) and an exhaustive exact optimizer used as the test oracle.
Partial Vertex Cover ships as a membership predicate only.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .families import ResourceCapError

__all__ = [
    "WeightedVCInstance",
    "WeightedHSInstance",
    "WeightedFVSInstance",
    "WeightedPVCInstance",
    "ParseError",
    "membership_check",
    "membership_table",
    "exact_opt",
    "weight_of",
    "parse_instance",
    "emit_instance",
    "random_instance",
    "EXACT_CAP",
]

EXACT_CAP = 22


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


def _validate_weights(weights) -> None:
    for w in weights:
        if not isinstance(w, int) or w < 1:
            raise ValueError(f"weights must be integers >= 1, got {w!r}")


@dataclass(frozen=True)
class WeightedVCInstance:
    n: int
    weights: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        _validate_weights(self.weights)
        if len(self.weights) != self.n:
            raise ValueError("need exactly n weights")
        norm = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            if u == v:
                raise ValueError(f"self-loop at {u} not allowed in vertex cover")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    kind = "wvc"


@dataclass(frozen=True)
class WeightedHSInstance:
    n: int
    weights: tuple[int, ...]
    d: int
    sets: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        _validate_weights(self.weights)
        if len(self.weights) != self.n:
            raise ValueError("need exactly n weights")
        if self.d < 2:
            raise ValueError(f"d must be >= 2, got {self.d}")
        norm = set()
        for s in self.sets:
            ss = tuple(sorted(set(s)))
            if not ss:
                raise ValueError("empty hyperedge")
            if len(ss) > self.d:
                raise ValueError(f"hyperedge {ss} larger than d = {self.d}")
            if any(not 0 <= e < self.n for e in ss):
                raise ValueError(f"hyperedge {ss} out of range")
            norm.add(ss)
        object.__setattr__(self, "sets", tuple(sorted(norm)))

    kind = "whs"


@dataclass(frozen=True)
class WeightedFVSInstance:
    """Multigraph semantics: parallel edges and self-loops each form a cycle."""

    n: int
    weights: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        _validate_weights(self.weights)
        if len(self.weights) != self.n:
            raise ValueError("need exactly n weights")
        norm = []
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            norm.append((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    kind = "wfvs"


@dataclass(frozen=True)
class WeightedPVCInstance:
    """Partial vertex cover: S is a solution iff it covers at least t edges."""

    n: int
    weights: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    t: int

    def __post_init__(self):
        _validate_weights(self.weights)
        if len(self.weights) != self.n:
            raise ValueError("need exactly n weights")
        if self.t < 0:
            raise ValueError("threshold t must be >= 0")
        norm = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            if u == v:
                raise ValueError(f"self-loop at {u} not allowed")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        if self.t > len(self.edges):
            raise ValueError("threshold t exceeds the number of edges")

    kind = "wpvc"


Instance = WeightedVCInstance | WeightedHSInstance | WeightedFVSInstance | WeightedPVCInstance


def _fvs_acyclic(n: int, edges, surviving_mask: int) -> bool:
    """Union-find acyclicity of the surviving multigraph."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        if not (surviving_mask >> u & 1 and surviving_mask >> v & 1):
            continue
        if u == v:
            return False
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def membership_check(instance: Instance, subset: int) -> bool:
    """True iff `subset` (bitmask) is a solution of the instance's set system."""
    if subset & ~((1 << instance.n) - 1):
        raise ValueError("subset contains out-of-range elements")
    if isinstance(instance, WeightedVCInstance):
        return all(subset >> u & 1 or subset >> v & 1 for u, v in instance.edges)
    if isinstance(instance, WeightedHSInstance):
        return all(any(subset >> e & 1 for e in s) for s in instance.sets)
    if isinstance(instance, WeightedFVSInstance):
        remaining = ~subset & ((1 << instance.n) - 1)
        return _fvs_acyclic(instance.n, instance.edges, remaining)
    if isinstance(instance, WeightedPVCInstance):
        covered = sum(1 for u, v in instance.edges if subset >> u & 1 or subset >> v & 1)
        return covered >= instance.t
    raise TypeError(f"unsupported instance type {type(instance)!r}")


@lru_cache(maxsize=256)
def membership_table(instance: Instance, cap: int = EXACT_CAP) -> np.ndarray:
    """Boolean membership of every subset mask; cached per instance."""
    n = instance.n
    if n > cap:
        raise ResourceCapError(f"n = {n} exceeds the exact enumeration cap {cap}")
    size = 1 << n
    masks = np.arange(size)
    if isinstance(instance, WeightedVCInstance):
        ok = np.ones(size, dtype=bool)
        for u, v in instance.edges:
            ok &= (masks >> u & 1 | masks >> v & 1).astype(bool)
        return ok
    if isinstance(instance, WeightedHSInstance):
        ok = np.ones(size, dtype=bool)
        for s in instance.sets:
            hit = np.zeros(size, dtype=bool)
            for e in s:
                hit |= (masks >> e & 1).astype(bool)
            ok &= hit
        return ok
    if isinstance(instance, WeightedPVCInstance):
        covered = np.zeros(size, dtype=np.int64)
        for u, v in instance.edges:
            covered += np.asarray(masks >> u & 1 | masks >> v & 1)
        return covered >= instance.t
    # FVS: union-find per subset, no useful vectorization.
    return np.fromiter(
        (membership_check(instance, s) for s in range(size)), dtype=bool, count=size
    )


def weight_of(instance: Instance, subset: int) -> int:
    return sum(w for i, w in enumerate(instance.weights) if subset >> i & 1)


def exact_opt(instance: Instance, cap: int = EXACT_CAP) -> tuple[int, int]:
    """Exhaustive minimum-weight solution; ties broken by size then mask.

    Returns (subset mask, weight).
    """
    n = instance.n
    if n > cap:
        raise ResourceCapError(f"n = {n} exceeds the exact enumeration cap {cap}")
    table = membership_table(instance, cap)
    size = 1 << n
    masks = np.arange(size)
    w = np.zeros(size, dtype=np.int64)
    pc = np.zeros(size, dtype=np.int64)
    for i in range(n):
        hit = masks & (1 << i) != 0
        w[hit] += instance.weights[i]
        pc[hit] += 1
    sols = np.flatnonzero(table)
    order = np.lexsort((sols, pc[sols], w[sols]))
    best = int(sols[order[0]])
    return best, int(w[best])


# --- instance grammar -------------------------------------------------------
#
#   p wvc <n> <m>  |  p whs <n> <m> <d>  |  p wfvs <n> <m>  |  p wpvc <n> <m> <t>
#   w <vertex 1-based> <weight >= 1>     (exactly n lines)
#   e <u> <v>  or  s <k> <e1> ... <ek>   (exactly m lines)


def parse_instance(text: str) -> Instance:
    header = None
    weights: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    sets: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        tag = parts[0]
        try:
            if tag == "p":
                if header is not None:
                    raise ParseError("duplicate problem line", lineno)
                header = (parts[1], [int(x) for x in parts[2:]])
            elif tag == "w":
                v, w = int(parts[1]), int(parts[2])
                if w < 1:
                    raise ParseError("weights must be >= 1", lineno)
                if v in weights:
                    raise ParseError(f"duplicate weight for vertex {v}", lineno)
                weights[v] = w
            elif tag == "e":
                edges.append((int(parts[1]) - 1, int(parts[2]) - 1))
            elif tag == "s":
                k = int(parts[1])
                elems = [int(x) - 1 for x in parts[2:]]
                if len(elems) != k:
                    raise ParseError(f"set line declares {k} elements, has {len(elems)}", lineno)
                sets.append(tuple(elems))
            else:
                raise ParseError(f"unknown line tag {tag!r}", lineno)
        except (IndexError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed line: {raw!r}", lineno) from exc
    if header is None:
        raise ParseError("missing problem line")
    kind, nums = header
    if kind not in ("wvc", "whs", "wfvs", "wpvc"):
        raise ParseError(f"unknown problem kind {kind!r}")
    n, m = nums[0], nums[1]
    if sorted(weights) != list(range(1, n + 1)):
        raise ParseError(f"need weight lines for exactly vertices 1..{n}")
    wt = tuple(weights[v] for v in range(1, n + 1))
    try:
        if kind == "wvc":
            if len(edges) != m:
                raise ParseError(f"expected {m} edges, got {len(edges)}")
            return WeightedVCInstance(n=n, weights=wt, edges=tuple(edges))
        if kind == "wfvs":
            if len(edges) != m:
                raise ParseError(f"expected {m} edges, got {len(edges)}")
            return WeightedFVSInstance(n=n, weights=wt, edges=tuple(edges))
        if kind == "whs":
            d = nums[2]
            if len(sets) != m:
                raise ParseError(f"expected {m} sets, got {len(sets)}")
            return WeightedHSInstance(n=n, weights=wt, d=d, sets=tuple(sets))
        t = nums[2]
        if len(edges) != m:
            raise ParseError(f"expected {m} edges, got {len(edges)}")
        return WeightedPVCInstance(n=n, weights=wt, edges=tuple(edges), t=t)
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from exc


def emit_instance(instance: Instance) -> str:
    lines = []
    if isinstance(instance, WeightedHSInstance):
        lines.append(f"p whs {instance.n} {len(instance.sets)} {instance.d}")
    elif isinstance(instance, WeightedPVCInstance):
        lines.append(f"p wpvc {instance.n} {len(instance.edges)} {instance.t}")
    else:
        lines.append(f"p {instance.kind} {instance.n} {len(instance.edges)}")
    for v, w in enumerate(instance.weights, start=1):
        lines.append(f"w {v} {w}")
    if isinstance(instance, WeightedHSInstance):
        for s in instance.sets:
            lines.append(f"s {len(s)} " + " ".join(str(e + 1) for e in s))
    else:
        for u, v in instance.edges:
            lines.append(f"e {u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


def random_instance(
    kind: str,
    n: int,
    density: float,
    weight_range: tuple[int, int] = (1, 100),
    seed: int = 0,
    d: int = 3,
) -> Instance:
    """Seeded Erdos-Renyi graphs / random <=d-sets with uniform integer weights."""
    if n < 0 or not 0 <= density <= 1:
        raise ValueError("need n >= 0 and density in [0, 1]")
    lo, hi = weight_range
    rng = random.Random(seed)
    weights = tuple(rng.randint(lo, hi) for _ in range(n))
    if kind in ("wvc", "wfvs"):
        edges = tuple(
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if rng.random() < density
        )
        cls = WeightedVCInstance if kind == "wvc" else WeightedFVSInstance
        return cls(n=n, weights=weights, edges=edges)
    if kind == "whs":
        n_sets = max(1, round(density * n * 2)) if n else 0
        sets = []
        for _ in range(n_sets):
            size = rng.randint(1, min(d, n)) if n else 0
            if size:
                sets.append(tuple(sorted(rng.sample(range(n), size))))
        return WeightedHSInstance(n=n, weights=weights, d=d, sets=tuple(sets))
    raise ValueError(f"unknown instance kind {kind!r}")
