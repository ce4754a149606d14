"""Covering and extension families over an unweighted universe.

Subsets of the universe {0..n-1} are encoded as int bitmasks.  A covering
family answers: for every S there is a member T with S subseteq T and
w(T) <= alpha * w(S).  An extension family is a list of (T, ell) query pairs
such that every S has a pair with |S \\ T| <= ell and
w(T) + alpha * w(S \\ T) <= beta * w(S).

Constructions here are layered greedy covers, one layer per cardinality s of
the covered set S; validity is certified by the exhaustive verifiers, which
are deliberately independent of the construction code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import bounds

__all__ = [
    "CoveringFamily",
    "ExtensionFamily",
    "Verdict",
    "ResourceCapError",
    "DEFAULT_CAP",
    "build_unweighted_covering",
    "build_unweighted_extension",
    "verify_covering",
    "verify_extension",
    "family_cost",
    "dump_family",
    "parse_family",
]

DEFAULT_CAP = 20


class ResourceCapError(RuntimeError):
    """Universe too large for exhaustive enumeration."""


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise ResourceCapError(f"universe size {n} exceeds enumeration cap {cap}")


def _mask(elems) -> int:
    m = 0
    for e in elems:
        m |= 1 << e
    return m


@dataclass
class CoveringFamily:
    universe_size: int
    alpha: float
    sets: list[int]

    def __post_init__(self) -> None:
        full = (1 << self.universe_size) - 1
        seen = set()
        for t in self.sets:
            if t & ~full:
                raise ValueError(f"set {t:#x} not contained in the universe")
            if t in seen:
                raise ValueError(f"duplicate set {t:#x}")
            seen.add(t)


@dataclass
class ExtensionFamily:
    universe_size: int
    alpha: float
    beta: float
    entries: list[tuple[int, int]]

    def __post_init__(self) -> None:
        full = (1 << self.universe_size) - 1
        seen = set()
        for t, ell in self.entries:
            if t & ~full:
                raise ValueError(f"set {t:#x} not contained in the universe")
            if not 0 <= ell <= max(self.universe_size, 0):
                raise ValueError(f"budget {ell} out of range for entry {t:#x}")
            if (t, ell) in seen:
                raise ValueError(f"duplicate entry ({t:#x}, {ell})")
            seen.add((t, ell))


@dataclass
class Verdict:
    ok: bool
    violating_set: int | None = None
    checked: int = 0

    def __bool__(self) -> bool:
        return self.ok


def build_unweighted_covering(
    n: int, alpha: float, cap: int = DEFAULT_CAP
) -> CoveringFamily:
    """Greedy layered alpha-covering family of {0..n-1} under uniform weights.

    Layer s covers all s-subsets by sets of size min(n, floor(alpha * s)),
    picked greedily by the number of still-uncovered s-subsets they contain.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if alpha <= 1:
        raise ValueError(f"alpha must be > 1, got {alpha}")
    _check_cap(n, cap)

    sets: list[int] = []
    seen: set[int] = set()
    for s in range(n + 1):
        t_size = min(n, math.floor(alpha * s))
        uncovered = {_mask(c) for c in combinations(range(n), s)}
        if t_size == s:
            # T = S is forced; the layer is exactly the s-subsets.
            picks = sorted(uncovered)
            uncovered.clear()
        else:
            picks = []
            candidates = [_mask(c) for c in combinations(range(n), t_size)]
            while uncovered:
                best, best_gain = None, -1
                for cand in candidates:
                    gain = sum(1 for u in uncovered if u & ~cand == 0)
                    if gain > best_gain:
                        best, best_gain = cand, gain
                picks.append(best)
                uncovered = {u for u in uncovered if u & ~best != 0}
        for t in picks:
            if t not in seen:
                seen.add(t)
                sets.append(t)
    return CoveringFamily(universe_size=n, alpha=alpha, sets=sets)


def _extension_layer_shape(
    n: int, s: int, alpha: float, beta: float, c: float
) -> tuple[int, int]:
    """Target set size t and budget ell for the cardinality-s layer.

    The sampled-set fraction tau* at kappa = s/n comes from the saddle-point
    machinery; the budget floor((beta*s - t)/alpha) makes the weight
    inequality hold by construction for any S the layer covers.
    """
    if s == 0:
        return 0, 0
    kappa = s / n
    if kappa <= 1.0 / beta:
        _, tau = bounds.g_star(alpha, beta, c, kappa)
        t = round(tau * n)
    else:
        t = s
    t = max(0, min(t, math.floor(beta * s), n))
    ell = math.floor((beta * s - t) / alpha)
    return t, ell


def build_unweighted_extension(
    n: int, alpha: float, c: float, beta: float, cap: int = DEFAULT_CAP
) -> ExtensionFamily:
    """Greedy layered (alpha, beta)-extension family under uniform weights.

    Layer s picks t-sets until every s-subset S has a pick T with
    |S \\ T| <= ell; a layer that cannot make progress falls back to the
    always-valid {(S, 0) : |S| = s}.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if alpha < 1 or c < 1:
        raise ValueError("alpha and c must be >= 1")
    if beta <= 1:
        raise ValueError(f"beta must be > 1, got {beta}")
    _check_cap(n, cap)

    entries: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for s in range(n + 1):
        t_size, ell = _extension_layer_shape(n, s, alpha, beta, c)
        uncovered = {_mask(co) for co in combinations(range(n), s)}
        need = s - ell  # a pick T covers S iff |S & T| >= need
        picks: list[tuple[int, int]]
        if t_size < need or (ell == 0 and t_size == s):
            # Layer cannot do better than listing the s-subsets themselves.
            picks = [(u, 0) for u in sorted(uncovered)]
        else:
            picks = []
            candidates = [_mask(co) for co in combinations(range(n), t_size)]
            while uncovered:
                best, best_gain = None, -1
                for cand in candidates:
                    gain = sum(
                        1 for u in uncovered if (u & cand).bit_count() >= need
                    )
                    if gain > best_gain:
                        best, best_gain = cand, gain
                if best_gain <= 0:
                    picks = [(u, 0) for u in sorted({_mask(co) for co in combinations(range(n), s)})]
                    break
                picks.append((best, ell))
                uncovered = {
                    u for u in uncovered if (u & best).bit_count() < need
                }
        for entry in picks:
            if entry not in seen:
                seen.add(entry)
                entries.append(entry)
    return ExtensionFamily(universe_size=n, alpha=alpha, beta=beta, entries=entries)


def _weight_tables(n: int, weights) -> tuple[np.ndarray, np.ndarray]:
    """Per-mask total weight and popcount arrays over all 2^n masks."""
    size = 1 << n
    w = np.zeros(size)
    pc = np.zeros(size, dtype=np.int64)
    for i in range(n):
        bit = 1 << i
        idx = np.arange(size) & bit != 0
        w[idx] += weights[i]
        pc[idx] += 1
    return w, pc


def verify_covering(
    family: CoveringFamily, weights, cap: int = DEFAULT_CAP
) -> Verdict:
    """Exhaustively check the covering property for every S under `weights`."""
    n = family.universe_size
    if len(weights) != n:
        raise ValueError(f"expected {n} weights, got {len(weights)}")
    _check_cap(n, cap)
    size = 1 << n
    w, _ = _weight_tables(n, weights)
    masks = np.arange(size)
    covered = np.zeros(size, dtype=bool)
    alpha = family.alpha
    for t in family.sets:
        covered |= (masks & ~t == 0) & (w[t] <= alpha * w + 1e-9)
    if covered.all():
        return Verdict(ok=True, checked=size)
    return Verdict(ok=False, violating_set=int(np.argmin(covered)), checked=size)


def verify_extension(
    family: ExtensionFamily, weights, cap: int = DEFAULT_CAP
) -> Verdict:
    """Exhaustively check both extension-family inequalities for every S."""
    n = family.universe_size
    if len(weights) != n:
        raise ValueError(f"expected {n} weights, got {len(weights)}")
    _check_cap(n, cap)
    size = 1 << n
    w, pc = _weight_tables(n, weights)
    masks = np.arange(size)
    covered = np.zeros(size, dtype=bool)
    alpha, beta = family.alpha, family.beta
    for t, ell in family.entries:
        w_diff = w - w[masks & t]  # w(S \ T)
        covered |= (pc[masks & ~t] <= ell) & (
            w[t] + alpha * w_diff <= beta * w + 1e-9
        )
    if covered.all():
        return Verdict(ok=True, checked=size)
    return Verdict(ok=False, violating_set=int(np.argmin(covered)), checked=size)


def family_cost(family: ExtensionFamily, c: float) -> float:
    """ln of the c-cost sum(c^ell) over entries, via log-sum-exp."""
    if c < 1:
        raise ValueError(f"c must be >= 1, got {c}")
    if not family.entries:
        return -math.inf
    logc = math.log(c)
    terms = [ell * logc for _, ell in family.entries]
    m = max(terms)
    return m + math.log(sum(math.exp(t - m) for t in terms))


def dump_family(
    family: CoveringFamily | ExtensionFamily, schedule: str | None = None
) -> str:
    """Line-oriented dump: header, optional schedule comment, one entry per line."""
    lines = []
    if isinstance(family, CoveringFamily):
        lines.append(f"family covering n={family.universe_size} alpha={family.alpha:g}")
        if schedule:
            lines.append(f"# schedule {schedule}")
        lines.extend(f"{t:#x}" for t in family.sets)
    else:
        lines.append(
            f"family extension n={family.universe_size} "
            f"alpha={family.alpha:g} beta={family.beta:g}"
        )
        if schedule:
            lines.append(f"# schedule {schedule}")
        lines.extend(f"{t:#x} {ell}" for t, ell in family.entries)
    return "\n".join(lines) + "\n"


def parse_family(text: str) -> CoveringFamily | ExtensionFamily:
    """Inverse of dump_family; schedule comments are ignored."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty family dump")
    head = lines[0].split()
    if len(head) < 3 or head[0] != "family":
        raise ValueError(f"bad family header: {lines[0]!r}")
    kind = head[1]
    kv = dict(part.split("=", 1) for part in head[2:])
    n = int(kv["n"])
    alpha = float(kv["alpha"])
    if kind == "covering":
        sets = [int(ln, 16) for ln in lines[1:]]
        return CoveringFamily(universe_size=n, alpha=alpha, sets=sets)
    if kind == "extension":
        beta = float(kv["beta"])
        entries = []
        for ln in lines[1:]:
            t_str, ell_str = ln.split()
            entries.append((int(t_str, 16), int(ell_str)))
        return ExtensionFamily(universe_size=n, alpha=alpha, beta=beta, entries=entries)
    raise ValueError(f"unknown family kind {kind!r}")
