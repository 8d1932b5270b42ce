"""Structural data for the affine algebras B_l, C_l, F4 and G2.

Only the root norms are kept: ``nu[i] = 2 / <alpha_i, alpha_i>`` with long
roots of squared length 2.  Colors are numbered 1..l along the Dynkin chain
used throughout the package; tuples are 0-indexed so color ``i`` lives at
position ``i - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError

FAMILIES = ("B", "C", "F4", "G2")


@dataclass(frozen=True)
class AlgebraData:
    family: str
    rank: int
    nu: tuple[int, ...]

    @property
    def rho(self) -> tuple[int, ...]:
        """Ratios nu_i / nu_{i-1}; entry 0 (color 1) is set to 1."""
        return (1,) + tuple(self.nu[i] // self.nu[i - 1] for i in range(1, self.rank))

    @property
    def name(self) -> str:
        return self.family if self.family in ("F4", "G2") else f"{self.family}{self.rank}"

    def allowed_j(self) -> tuple[int, ...]:
        if self.family == "B":
            return (1, self.rank)
        if self.family == "C":
            return tuple(range(1, self.rank + 1))
        if self.family == "F4":
            return (4,)
        return (2,)


def make_algebra(family: str, rank: int | None = None) -> AlgebraData:
    """Build the norm data for one algebra.

    ``rank`` may be omitted for the exceptional families.
    """
    family = family.upper()
    if family not in FAMILIES:
        raise ConfigError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    if family == "F4":
        if rank not in (None, 4):
            raise ConfigError(f"F4 has rank 4, got {rank}")
        return AlgebraData("F4", 4, (1, 1, 2, 2))
    if family == "G2":
        if rank not in (None, 2):
            raise ConfigError(f"G2 has rank 2, got {rank}")
        return AlgebraData("G2", 2, (1, 3))
    if rank is None or rank < 2:
        raise ConfigError(f"{family}_l requires rank >= 2, got {rank}")
    if family == "B":
        # alpha_1..alpha_{l-1} long, alpha_l = eps_l short
        return AlgebraData("B", rank, (1,) * (rank - 1) + (2,))
    # alpha_1 = sqrt2 eps_l long, the rest short
    return AlgebraData("C", rank, (1,) + (2,) * (rank - 1))


@dataclass(frozen=True)
class WeightSpec:
    """Rectangular weight k0*Lambda_0 + kj*Lambda_j."""

    algebra: AlgebraData
    k0: int
    kj: int
    j: int | None

    @property
    def level(self) -> int:
        return self.k0 + self.kj

    @property
    def k_alpha(self) -> tuple[int, ...]:
        """Charge cap per color."""
        return tuple(n * self.level for n in self.algebra.nu)

    @property
    def threshold(self) -> int:
        """Number of leading indices t with j_t = 0 (only meaningful when kj > 0)."""
        if not self.kj:
            return 0
        nu_j = self.algebra.nu[self.j - 1]
        return nu_j * self.k0 + (nu_j - 1) * self.kj

    def j_t(self, t: int) -> int:
        if self.kj and self.threshold < t <= self.k_alpha[self.j - 1]:
            return self.j
        return 0

    @property
    def label(self) -> str:
        parts = []
        if self.k0:
            parts.append(f"{self.k0 if self.k0 > 1 else ''}L0")
        if self.kj:
            parts.append(f"{self.kj if self.kj > 1 else ''}L{self.j}")
        return f"{self.algebra.name}:{'+'.join(parts)}"


def make_weight(algebra: AlgebraData, k0: int, kj: int = 0, j: int | None = None) -> WeightSpec:
    if k0 < 0 or kj < 0:
        raise ConfigError("k0 and kj must be nonnegative")
    if k0 + kj < 1:
        raise ConfigError("level k0 + kj must be at least 1")
    if kj == 0:
        if j is not None:
            raise ConfigError("j must be omitted when kj = 0")
        return WeightSpec(algebra, k0, 0, None)
    allowed = algebra.allowed_j()
    if j is None:
        raise ConfigError(f"kj > 0 requires j in {{{', '.join(map(str, allowed))}}}")
    if j not in allowed:
        raise ConfigError(
            f"j={j} not allowed for {algebra.name}; allowed set is {{{', '.join(map(str, allowed))}}}"
        )
    return WeightSpec(algebra, k0, kj, j)


def delta_shift(weight: WeightSpec, i: int, n: int) -> int:
    """Number of t in 1..n with j_t = i."""
    cap = weight.k_alpha[i - 1]
    if n > cap:
        raise ConfigError(f"charge {n} exceeds cap {cap} for color {i}")
    if not weight.kj or i != weight.j:
        return 0
    return max(0, n - weight.threshold)
