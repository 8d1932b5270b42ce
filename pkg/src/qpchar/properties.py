"""Seeded randomized checks of the counting identities and of extremal monomials."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from . import quasiparticle as qp
from .affine import WeightSpec, delta_shift
from .quasiparticle import ChargeType, Monomial

CHECKS = ("involution", "uvjet1", "uvjet2", "uvjet3", "extremal")


def sample_charge_type(rng: random.Random, weight: WeightSpec, stop: float = 0.35, max_parts: int = 8) -> ChargeType:
    """Per color, a geometric number of parts (capped) with charges uniform in 1..k_alpha_i."""
    out = []
    for cap in weight.k_alpha:
        count = 0
        while count < max_parts and rng.random() > stop:
            count += 1
        out.append(tuple(sorted(rng.randint(1, cap) for _ in range(count))))
    return tuple(out)


def _with_mode(mono: Monomial, color: int, pos: int, delta: int) -> Monomial:
    colors = [list(c) for c in mono.colors]
    n, m = colors[color][pos]
    colors[color][pos] = (n, m + delta)
    return Monomial(tuple(tuple(c) for c in colors))


def extremal_failure(weight: WeightSpec, dual) -> str | None:
    """Describe how the saturated monomial of ``dual`` fails to be extremal, if it does."""
    mono = qp.saturated_monomial(weight, dual)
    if mono.charge_type != qp.conjugate_inverse(dual):
        return "saturated monomial has the wrong charge-type"
    if not qp.satisfies_difference_conditions(weight, mono):
        return "saturated monomial is not admissible"
    if mono.total_energy != qp.minimal_energy(weight, dual):
        return f"saturated energy {mono.total_energy} != minimal energy {qp.minimal_energy(weight, dual)}"
    for ci, color in enumerate(mono.colors):
        for pos, (n, _) in enumerate(color):
            if qp.satisfies_difference_conditions(weight, _with_mode(mono, ci, pos, +1)):
                return f"raising color {ci + 1} position {pos} stays admissible"
            # position 0 is the largest p, the end of its equal-charge chain
            chain_end = pos == 0 or color[pos - 1][0] != n
            if chain_end and not qp.satisfies_difference_conditions(weight, _with_mode(mono, ci, pos, -1)):
                return f"lowering chain end color {ci + 1} position {pos} breaks admissibility"
    return None


@dataclass
class IdentityReport:
    samples: int = 0
    passed: dict[str, int] = field(default_factory=lambda: {c: 0 for c in CHECKS})
    counterexample: dict | None = None

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def to_dict(self) -> dict:
        return {
            "status": "pass" if self.ok else "fail",
            "samples": self.samples,
            "passed": dict(self.passed),
            "counterexample": self.counterexample,
        }


def run_identity_suite(
    weight: WeightSpec,
    samples: int,
    seed: int,
    conjugate_fn: Callable[[WeightSpec, ChargeType], tuple] | None = None,
    include_zero: bool = True,
) -> IdentityReport:
    """Check every identity on ``samples`` charge-types; stop at the first counterexample.

    ``conjugate_fn`` replaces the conjugation under test, so the harness can
    be exercised against a deliberately broken version.
    """
    conj = conjugate_fn or qp.conjugate
    rng = random.Random(seed)
    report = IdentityReport()
    l = weight.algebra.rank
    for idx in range(samples):
        if include_zero and idx == 0:
            ct = ((),) * l
        else:
            ct = sample_charge_type(rng, weight)
        report.samples += 1
        failure = _check_one(weight, ct, conj)
        if failure:
            check, detail = failure
            report.counterexample = {"check": check, "charge_type": [list(c) for c in ct], "detail": detail}
            return report
        for name in CHECKS:
            report.passed[name] += 1
    return report


def _check_one(weight: WeightSpec, ct: ChargeType, conj) -> tuple[str, str] | None:
    dual = conj(weight, ct)
    back = qp.conjugate_inverse(dual)
    if back != ct or qp.conjugate(weight, back) != tuple(dual):
        return "involution", f"conjugate gives {dual}, inverse gives {back}"
    if tuple(sum(d) for d in dual) != qp.color_type(ct):
        return "involution", "color-type not preserved"
    for i in range(1, weight.algebra.rank + 1):
        own = qp.by_p(ct[i - 1])
        lhs = sum((2 * (p - 1) + 1) * n for p, n in enumerate(own, start=1))
        rhs = sum(r * r for r in dual[i - 1])
        if lhs != rhs:
            return "uvjet1", f"color {i}: {lhs} != {rhs}"
    for i in range(2, weight.algebra.rank + 1):
        a = qp.cross_term_min(weight, ct, i)
        b = qp.cross_term_dual(weight, dual, i)
        if a != b:
            return "uvjet2", f"color {i}: min-form {a} != dual-form {b}"
    if weight.kj:
        lhs = sum(delta_shift(weight, weight.j, n) for n in ct[weight.j - 1])
    else:
        lhs = 0
    rhs = qp.linear_term(weight, dual)
    if lhs != rhs:
        return "uvjet3", f"{lhs} != {rhs}"
    problem = extremal_failure(weight, dual)
    if problem:
        return "extremal", problem
    return None
