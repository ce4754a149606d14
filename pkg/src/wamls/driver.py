"""Approximation drivers over the weighted family constructions.

The membership driver scans an alpha-covering family and keeps the cheapest
member that is a solution.  The extension driver queries the oracle once per
(T, ell) entry of an (alpha, beta)-extension family and keeps the cheapest
T | X.  Both stream entries and never take an early exit, so the recorded
query cost equals the family cost exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from . import families, problems, weighted
from .families import DEFAULT_CAP
from .oracles import ExtensionOracleHandle
from .problems import Instance, membership_check, weight_of

__all__ = [
    "RunReport",
    "OracleMismatchError",
    "approximate_membership",
    "approximate_extension",
    "verify_run",
]


class OracleMismatchError(ValueError):
    """Declared oracle factor exceeds the requested target and force is off."""


@dataclass
class RunReport:
    problem: str
    n: int
    alpha: float
    c: float | None
    beta: float | None
    eps: float | None
    output_set: int
    output_weight: int
    family_size: int
    cost_log: float | None
    opt_weight: int | None = None
    achieved_ratio: float | None = None
    seed: int | None = None

    def to_json(self) -> str:
        payload = {
            "problem": self.problem,
            "n": self.n,
            "alpha": self.alpha,
            "c": self.c,
            "beta": self.beta,
            "eps": self.eps,
            "output_set": sorted(
                i for i in range(self.n) if self.output_set >> i & 1
            ),
            "output_weight": self.output_weight,
            "opt_weight": self.opt_weight,
            "ratio": self.achieved_ratio,
            "family_size": self.family_size,
            "cost_log": None if self.cost_log is None or math.isinf(self.cost_log)
            else self.cost_log,
            "seed": self.seed,
        }
        return json.dumps(payload, sort_keys=True)


def approximate_membership(
    instance: Instance,
    alpha: float,
    mode: str = "fixed",
    eps: float = 1e-3,
    cap: int = DEFAULT_CAP,
    seed: int | None = None,
) -> RunReport:
    """Membership-model alpha-approximation via a weighted covering family.

    mode "exhaustive" scans all 2^n subsets (the exact degenerate case);
    "fixed"/"schedule" select the weight-rounding split accordingly.
    """
    n = instance.n
    if mode == "exhaustive":
        if n > cap:
            raise families.ResourceCapError(f"n = {n} exceeds enumeration cap {cap}")
        sets = range(1 << n)
        family_size = 1 << n
    else:
        report = weighted.build_weighted_covering(
            list(instance.weights), alpha, mode=mode, eps=eps, cap=cap
        )
        sets = report.family.sets
        family_size = len(sets)

    best = None
    for t in sets:
        if membership_check(instance, t):
            key = (weight_of(instance, t), t.bit_count(), t)
            if best is None or key < best:
                best = key
    assert best is not None  # U is in every covering family and every system
    return RunReport(
        problem=instance.kind,
        n=n,
        alpha=alpha,
        c=None,
        beta=None,
        eps=eps,
        output_set=best[2],
        output_weight=best[0],
        family_size=family_size,
        cost_log=math.log(family_size) if family_size else None,
        seed=seed,
    )


def approximate_extension(
    instance: Instance,
    oracle: ExtensionOracleHandle,
    beta: float,
    eps: float = 0.05,
    cap: int = DEFAULT_CAP,
    force: bool = False,
    seed: int | None = None,
) -> RunReport:
    """Extension-model beta-approximation (query every family entry, keep the best).

    Refuses oracles whose declared alpha exceeds beta unless `force` is set;
    the guarantee still holds then, but the configuration usually signals a
    mistake.
    """
    alpha, c = oracle.declared_alpha, oracle.declared_c
    if alpha > beta and not force:
        raise OracleMismatchError(
            f"oracle alpha = {alpha} exceeds target beta = {beta}; pass force=True"
        )
    report = weighted.build_weighted_extension(
        list(instance.weights), alpha, c, beta, eps=eps, cap=cap
    )
    fam = report.family

    best = None
    for t, ell in fam.entries:
        x = oracle.extend(t, ell)
        out = t | x
        if not membership_check(instance, out):
            raise RuntimeError(
                f"oracle contract violation: {out:#x} is not a solution"
            )
        key = (weight_of(instance, out), out.bit_count(), out)
        if best is None or key < best:
            best = key
    assert best is not None  # the family is never empty
    return RunReport(
        problem=instance.kind,
        n=instance.n,
        alpha=alpha,
        c=c,
        beta=beta,
        eps=eps,
        output_set=best[2],
        output_weight=best[0],
        family_size=len(fam.entries),
        cost_log=report.cost_log,
        seed=seed,
    )


@dataclass
class RunVerdict:
    ok: bool
    reason: str | None = None
    opt_weight: int | None = None
    achieved_ratio: float | None = None


def verify_run(
    instance: Instance, report: RunReport, target_factor: float, cap: int | None = None
) -> RunVerdict:
    """Recompute OPT and check membership plus the ratio bound of a run."""
    if not membership_check(instance, report.output_set):
        return RunVerdict(ok=False, reason="not a solution")
    if cap is None:
        cap = problems.EXACT_CAP
    if instance.n > cap:
        return RunVerdict(ok=True, reason="opt omitted (cap exceeded)")
    _, opt = problems.exact_opt(instance, cap)
    if opt == 0:
        ratio = math.inf if report.output_weight > 0 else 1.0
    else:
        ratio = report.output_weight / opt
    report.opt_weight = opt
    report.achieved_ratio = ratio
    if report.output_weight > target_factor * opt + 1e-9:
        return RunVerdict(
            ok=False, reason="ratio exceeded", opt_weight=opt, achieved_ratio=ratio
        )
    return RunVerdict(ok=True, opt_weight=opt, achieved_ratio=ratio)
