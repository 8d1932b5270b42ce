"""Quasi-particle monomials, charge/dual-charge conjugation and difference conditions.

Conventions
-----------
A charge-type is a tuple with one entry per color (color 1 first).  Each entry
lists the charges of that color as the monomial is written, left to right,
so it is weakly increasing and its *last* element is the particle with p = 1,
e.g. ``(1, 2, 4, 4)``.  A dual-charge-type has one weakly decreasing tuple of
length ``k_alpha_i`` per color.  A :class:`Monomial` stores, per color, the
pairs ``(charge, m)`` in the same left-to-right order; ``m`` is the mode index,
so a particle carries energy ``-m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .affine import WeightSpec, delta_shift
from .errors import ConfigError, InternalInconsistency

ChargeType = tuple[tuple[int, ...], ...]
DualChargeType = tuple[tuple[int, ...], ...]


def by_p(charges: Sequence[int]) -> tuple[int, ...]:
    """Charges ordered p = 1, 2, ... (weakly decreasing)."""
    return tuple(reversed(charges))


# conjugation


def conjugate_color(charges: Sequence[int], cap: int) -> tuple[int, ...]:
    if any(n < 1 for n in charges):
        raise ConfigError(f"charges must be positive: {tuple(charges)}")
    if any(n > cap for n in charges):
        raise ConfigError(f"charge exceeds cap {cap}: {tuple(charges)}")
    return tuple(sum(1 for n in charges if n >= t) for t in range(1, cap + 1))


def conjugate_inverse_color(dual: Sequence[int]) -> tuple[int, ...]:
    if any(a < b for a, b in zip(dual, dual[1:])) or (dual and dual[-1] < 0):
        raise ConfigError(f"dual-charge-type must be weakly decreasing and nonnegative: {tuple(dual)}")
    padded = list(dual) + [0]
    out: list[int] = []
    # charge t appears r^(t) - r^(t+1) times
    for t in range(len(dual), 0, -1):
        out.extend([t] * (padded[t - 1] - padded[t]))
    return tuple(sorted(out))


def conjugate(weight: WeightSpec, charge_type: ChargeType) -> DualChargeType:
    _check_colors(weight, charge_type)
    return tuple(conjugate_color(c, cap) for c, cap in zip(charge_type, weight.k_alpha))


def conjugate_inverse(dual: DualChargeType) -> ChargeType:
    return tuple(conjugate_inverse_color(d) for d in dual)


def _check_colors(weight: WeightSpec, data) -> None:
    if len(data) != weight.algebra.rank:
        raise ConfigError(f"expected {weight.algebra.rank} colors, got {len(data)}")


def color_type(charge_type: ChargeType) -> tuple[int, ...]:
    return tuple(sum(c) for c in charge_type)


def is_charge_type(weight: WeightSpec, charge_type) -> bool:
    if len(charge_type) != weight.algebra.rank:
        return False
    for c, cap in zip(charge_type, weight.k_alpha):
        if any(n < 1 or n > cap for n in c):
            return False
        if any(a > b for a, b in zip(c, c[1:])):
            return False
    return True


# monomials


@dataclass(frozen=True)
class Monomial:
    colors: tuple[tuple[tuple[int, int], ...], ...]

    @classmethod
    def empty(cls, rank: int) -> "Monomial":
        return cls(((),) * rank)

    @property
    def charge_type(self) -> ChargeType:
        return tuple(tuple(n for n, _ in c) for c in self.colors)

    @property
    def energy_type(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(m for _, m in c) for c in self.colors)

    @property
    def color_type(self) -> tuple[int, ...]:
        return color_type(self.charge_type)

    @property
    def total_energy(self) -> int:
        return -sum(m for c in self.colors for _, m in c)

    def __str__(self) -> str:
        return render_monomial(self)


def render_monomial(mono: Monomial) -> str:
    """Write the monomial as ``x_{2a2}(-3) x_{1a2}(-1) x_{1a1}(-1)``; colors l..1."""
    parts = [
        f"x_{{{n}a{i}}}({m})"
        for i in range(len(mono.colors), 0, -1)
        for n, m in mono.colors[i - 1]
    ]
    return " ".join(parts) if parts else "1"


def _flat_p_order(seq: tuple[tuple[int, ...], ...]) -> tuple[int, ...]:
    # read from the rightmost entry (color 1, p = 1) leftwards
    return tuple(x for c in seq for x in reversed(c))


def compare(a: Monomial, b: Monomial) -> str | None:
    """Linear order on monomials of equal color-type.

    Returns ``"less"``, ``"equal"`` or ``"greater"``, or ``None`` when the
    color-types differ.  Sequences are compared starting from the p = 1 end;
    a proper prefix is the smaller sequence.
    """
    if a.color_type != b.color_type:
        return None
    for ka, kb in ((_flat_p_order(a.charge_type), _flat_p_order(b.charge_type)),
                   (_flat_p_order(a.energy_type), _flat_p_order(b.energy_type))):
        if ka < kb:
            return "less"
        if ka > kb:
            return "greater"
    return "equal"


def order_key(mono: Monomial):
    """Sort key realizing :func:`compare` within one color-type."""
    return (_flat_p_order(mono.charge_type), _flat_p_order(mono.energy_type))


# difference conditions


def energy_bound(weight: WeightSpec, charge_type: ChargeType, i: int, p: int) -> int:
    """Largest admissible mode index m_{p,i} allowed by the charge-type alone."""
    own = by_p(charge_type[i - 1])
    if not 1 <= p <= len(own):
        raise ConfigError(f"p={p} out of range for color {i}")
    n = own[p - 1]
    bound = -n - 2 * (p - 1) * n - delta_shift(weight, i, n)
    if i > 1:
        rho = weight.algebra.rho[i - 1]
        bound += sum(min(rho * nq, n) for nq in charge_type[i - 2])
    return bound


def satisfies_difference_conditions(weight: WeightSpec, mono: Monomial) -> bool:
    ct = mono.charge_type
    if not is_charge_type(weight, ct):
        return False
    for i, color in enumerate(mono.colors, start=1):
        parts = list(reversed(color))
        for p, (n, m) in enumerate(parts, start=1):
            if m > energy_bound(weight, ct, i, p):
                return False
            if p < len(parts):
                n_next, m_next = parts[p]
                if n_next == n and m_next > m - 2 * n:
                    return False
    return True


def saturated_monomial(weight: WeightSpec, dual: DualChargeType) -> Monomial:
    """Admissible monomial of the given dual-charge-type with the least total energy.

    Every particle sits exactly at its bound, which for an equal-charge chain
    also makes consecutive spacings exactly ``2n``.
    """
    ct = conjugate_inverse(dual)
    colors = []
    for i, c in enumerate(ct, start=1):
        pairs = [(n, energy_bound(weight, ct, i, p)) for p, n in enumerate(by_p(c), start=1)]
        colors.append(tuple(reversed(pairs)))
    return Monomial(tuple(colors))


# counting identities


def identity_uvjet1(weight: WeightSpec, charge_type: ChargeType, i: int) -> tuple[int, int]:
    """Self-interaction of color i, as a per-particle sum and as a sum of squares."""
    own = by_p(charge_type[i - 1])
    lhs = sum((2 * (p - 1) + 1) * n for p, n in enumerate(own, start=1))
    rhs = sum(r * r for r in conjugate_color(charge_type[i - 1], weight.k_alpha[i - 1]))
    return lhs, rhs


def cross_term_min(weight: WeightSpec, charge_type: ChargeType, i: int) -> int:
    if i < 2:
        raise ConfigError("cross term needs i >= 2")
    rho = weight.algebra.rho[i - 1]
    return sum(min(rho * nq, np_) for np_ in charge_type[i - 1] for nq in charge_type[i - 2])


def cross_term_dual(weight: WeightSpec, dual: DualChargeType, i: int, convention: str = "min") -> int:
    """Cross term between colors i-1 and i written on dual-charge-types.

    ``convention="min"`` runs t over 1..k_alpha_{i-1} with step ratio
    nu_i/nu_{i-1}; this agrees with :func:`cross_term_min`.  ``"literal"``
    runs t over 1..k with step nu_i, kept as a diagnostic.
    """
    if i < 2:
        raise ConfigError("cross term needs i >= 2")
    prev, cur = dual[i - 2], dual[i - 1]
    if convention == "min":
        step, t_max = weight.algebra.rho[i - 1], weight.k_alpha[i - 2]
    elif convention == "literal":
        step, t_max = weight.algebra.nu[i - 1], weight.level
    else:
        raise ConfigError(f"unknown cross-term convention {convention!r}")
    total = 0
    for t in range(1, t_max + 1):
        a = prev[t - 1]
        if a:
            total += a * sum(cur[step * t - p - 1] for p in range(step))
    return total


def linear_term(weight: WeightSpec, dual: DualChargeType) -> int:
    if not weight.kj:
        return 0
    return sum(dual[weight.j - 1][weight.threshold:])


def minimal_energy(weight: WeightSpec, dual: DualChargeType, convention: str = "min") -> int:
    quad = sum(r * r for d in dual for r in d)
    cross = sum(cross_term_dual(weight, dual, i, convention) for i in range(2, weight.algebra.rank + 1))
    energy = quad - cross + linear_term(weight, dual)
    if energy < 0:
        raise InternalInconsistency(f"negative minimal energy {energy} for {dual}")
    return energy


# diagrams


def diagram(charges: Sequence[int]) -> str:
    """Columns of heights equal to the charges, drawn left to right as written.

    Each row is annotated with its box count, so reading bottom-up gives the
    dual-charge-type.
    """
    charges = tuple(charges)
    if not charges:
        return ""
    rows = []
    for t in range(max(charges), 0, -1):
        cells = "".join("[]" if n >= t else "  " for n in charges)
        count = sum(1 for n in charges if n >= t)
        rows.append(f"{cells}  {count}")
    return "\n".join(rows)
