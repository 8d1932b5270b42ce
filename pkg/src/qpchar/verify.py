"""Coefficientwise comparison of the basis census with the fermionic sum."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .affine import AlgebraData, WeightSpec, make_algebra, make_weight
from .basis import enumerate_basis
from .errors import UnsoundTruncation
from .fermionic import fermionic_character
from .qseries import TruncatedSeries


@dataclass
class CaseReport:
    weight: str
    max_degree: int
    status: str
    coefficients: int
    first_mismatch: dict | None = None
    convention: str = "min"
    truncation: str = "certified"

    def to_dict(self) -> dict:
        return {
            "weight": self.weight,
            "max_degree": self.max_degree,
            "status": self.status,
            "coefficients": self.coefficients,
            "cross_term": self.convention,
            "truncation": self.truncation,
            "first_mismatch": self.first_mismatch,
        }


@dataclass
class VerifyReport:
    cases: list[CaseReport] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "equal" if all(c.status == "equal" for c in self.cases) else "mismatch"

    @property
    def first_mismatch(self) -> dict | None:
        for c in self.cases:
            if c.first_mismatch:
                return dict(c.first_mismatch, weight=c.weight)
        return None

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "first_mismatch": self.first_mismatch,
            "max_degree": max((c.max_degree for c in self.cases), default=0),
            "cases": [c.to_dict() for c in self.cases],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = []
        for c in self.cases:
            line = f"{c.weight} N={c.max_degree} {c.status} ({c.coefficients} coefficients)"
            if c.first_mismatch:
                fm = c.first_mismatch
                line += f" first mismatch q^{fm['q']} colors={fm['colors']} enumerated={fm['enumerated']} fermionic={fm['fermionic']}"
            lines.append(line)
        lines.append(f"overall: {self.status}")
        return "\n".join(lines)


def compare_series(enumerated: TruncatedSeries, fermionic: TruncatedSeries) -> dict | None:
    """First differing coefficient in (degree, color-type) order, or None."""
    for key in sorted(set(enumerated.terms) | set(fermionic.terms)):
        a, b = enumerated.terms.get(key, 0), fermionic.terms.get(key, 0)
        if a != b:
            return {"q": key[0], "colors": list(key[1]), "enumerated": a, "fermionic": b}
    return None


def verify_case(weight: WeightSpec, N: int, convention: str = "min", threads: int | None = None) -> CaseReport:
    census = enumerate_basis(weight, N, threads=threads).counts
    truncation = "certified"
    try:
        closed = fermionic_character(weight, N, convention)
    except UnsoundTruncation:
        if convention == "min":
            raise
        closed = fermionic_character(weight, N, convention, region="min")
        truncation = "min-form region (literal form not positive definite)"
    mismatch = compare_series(census, closed)
    return CaseReport(
        weight=weight.label,
        max_degree=N,
        status="equal" if mismatch is None else "mismatch",
        coefficients=len(set(census.terms) | set(closed.terms)),
        first_mismatch=mismatch,
        convention=convention,
        truncation=truncation,
    )


def verify_character(weight: WeightSpec, N: int, convention: str = "min", threads: int | None = None) -> VerifyReport:
    return VerifyReport([verify_case(weight, N, convention, threads)])


def rectangular_weights(algebra: AlgebraData) -> list[WeightSpec]:
    """Lambda_0, 2 Lambda_0, and Lambda_j, Lambda_0 + Lambda_j for each allowed j."""
    out = [make_weight(algebra, 1), make_weight(algebra, 2)]
    for j in algebra.allowed_j():
        out.append(make_weight(algebra, 0, 1, j))
        out.append(make_weight(algebra, 1, 1, j))
    return out


def acceptance_matrix() -> list[tuple[WeightSpec, int]]:
    cases = []
    for family, rank in (("B", 2), ("B", 3), ("C", 2), ("C", 3), ("G2", 2)):
        cases.extend((w, 10) for w in rectangular_weights(make_algebra(family, rank)))
    cases.extend((w, 8) for w in rectangular_weights(make_algebra("F4")))
    return cases
