"""Truncated q-series graded by q-degree and color-type.

Coefficients are nonnegative integers held in the unsigned 64-bit range;
leaving that range raises :class:`CoefficientOverflow` instead of wrapping.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .errors import CoefficientOverflow

COEFF_MAX = 2**64 - 1

Key = tuple[int, tuple[int, ...]]


def checked(c: int) -> int:
    if c < 0 or c > COEFF_MAX:
        raise CoefficientOverflow(f"coefficient {c} outside [0, 2^64 - 1]")
    return c


@dataclass(frozen=True)
class TruncatedSeries:
    max_degree: int
    num_colors: int
    terms: Mapping[Key, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (m, n), c in self.terms.items():
            n = tuple(n)
            if len(n) != self.num_colors:
                raise ValueError(f"color-type {n} has wrong length for {self.num_colors} colors")
            if m > self.max_degree or m < 0:
                continue
            if checked(c):
                clean[(m, n)] = c
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @classmethod
    def one(cls, max_degree: int, num_colors: int) -> "TruncatedSeries":
        return cls(max_degree, num_colors, {(0, (0,) * num_colors): 1})

    def __getitem__(self, key: Key) -> int:
        m, n = key
        return self.terms.get((m, tuple(n)), 0)

    def __iter__(self) -> Iterator[tuple[int, tuple[int, ...], int]]:
        for (m, n), c in self.terms.items():
            yield m, n, c

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_add(self, other)

    def degree_slice(self, m: int) -> dict[tuple[int, ...], int]:
        return {n: c for (d, n), c in self.terms.items() if d == m}

    def truncate(self, max_degree: int) -> "TruncatedSeries":
        return TruncatedSeries(min(max_degree, self.max_degree), self.num_colors, self.terms)

    # serialization

    def to_dict(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "num_colors": self.num_colors,
            "terms": [{"q": m, "colors": list(n), "coeff": c} for m, n, c in self],
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: dict) -> "TruncatedSeries":
        terms = {(t["q"], tuple(t["colors"])): t["coeff"] for t in data["terms"]}
        return cls(data["max_degree"], data["num_colors"], terms)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["q"] + [f"n_{i}" for i in range(1, self.num_colors + 1)] + ["coeff"])
        for m, n, c in self:
            writer.writerow([m, *n, c])
        return buf.getvalue()

    def to_text(self) -> str:
        """Render as ``1 + q*(y1 + y2 + y1*y2) + q^2*(...)``."""
        by_degree: dict[int, list[tuple[tuple[int, ...], int]]] = {}
        for m, n, c in self:
            by_degree.setdefault(m, []).append((n, c))
        chunks = []
        for m in sorted(by_degree):
            monos = sorted(by_degree[m], key=lambda nc: _graded_key(nc[0]))
            inner = [_y_term(n, c) for n, c in monos]
            if m == 0:
                chunks.extend(inner)
                continue
            qpart = "q" if m == 1 else f"q^{m}"
            if len(inner) == 1:
                chunks.append(qpart if inner[0] == "1" else f"{qpart}*{inner[0]}")
            else:
                chunks.append(f"{qpart}*({' + '.join(inner)})")
        return " + ".join(chunks) if chunks else "0"


def _graded_key(n: tuple[int, ...]):
    # total degree first, then y1 before y2 before ...
    return (sum(n), tuple(-x for x in n))


def _y_term(n: tuple[int, ...], c: int) -> str:
    factors = [f"y{i}" if e == 1 else f"y{i}^{e}" for i, e in enumerate(n, start=1) if e]
    if not factors:
        return str(c)
    body = "*".join(factors)
    return body if c == 1 else f"{c}*{body}"


def _check_grading(a: TruncatedSeries, b: TruncatedSeries) -> None:
    if a.max_degree != b.max_degree or a.num_colors != b.num_colors:
        raise ValueError(
            f"grading mismatch: (N={a.max_degree}, l={a.num_colors}) vs (N={b.max_degree}, l={b.num_colors})"
        )


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    _check_grading(a, b)
    terms = dict(a.terms)
    for key, c in b.terms.items():
        terms[key] = checked(terms.get(key, 0) + c)
    return TruncatedSeries(a.max_degree, a.num_colors, terms)


def series_sum(items: Iterable[TruncatedSeries], max_degree: int, num_colors: int) -> TruncatedSeries:
    terms: dict[Key, int] = {}
    for s in items:
        if s.max_degree != max_degree or s.num_colors != num_colors:
            _check_grading(TruncatedSeries(max_degree, num_colors), s)
        for key, c in s.terms.items():
            terms[key] = checked(terms.get(key, 0) + c)
    return TruncatedSeries(max_degree, num_colors, terms)


def series_scale_shift(s: TruncatedSeries, dm: int, dn: tuple[int, ...]) -> TruncatedSeries:
    """Multiply by the monomial q^dm * prod y_i^dn_i, dropping terms past the cutoff."""
    if dm < 0 or any(x < 0 for x in dn):
        raise ValueError("shifts must be nonnegative")
    if len(dn) != s.num_colors:
        raise ValueError("color shift has wrong length")
    terms = {
        (m + dm, tuple(a + b for a, b in zip(n, dn))): c
        for (m, n), c in s.terms.items()
        if m + dm <= s.max_degree
    }
    return TruncatedSeries(s.max_degree, s.num_colors, terms)


# univariate pieces


@dataclass(frozen=True)
class UniSeries:
    max_degree: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.max_degree + 1:
            raise ValueError("UniSeries needs exactly max_degree + 1 coefficients")

    def __getitem__(self, n: int) -> int:
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __mul__(self, other: "UniSeries") -> "UniSeries":
        N = min(self.max_degree, other.max_degree)
        out = [0] * (N + 1)
        for i, a in enumerate(self.coeffs[: N + 1]):
            if a:
                for j, b in enumerate(other.coeffs[: N + 1 - i]):
                    out[i + j] += a * b
        return UniSeries(N, tuple(checked(c) for c in out))


@lru_cache(maxsize=None)
def _pochhammer_table(r: int, N: int) -> tuple[int, ...]:
    if r == 0:
        return (1,) + (0,) * N
    prev = _pochhammer_table(r - 1, N)
    row = list(prev)
    # p_r(n) = p_{r-1}(n) + p_r(n - r)
    for n in range(r, N + 1):
        row[n] = checked(prev[n] + row[n - r])
    return tuple(row)


def pochhammer_inverse(r: int, N: int) -> UniSeries:
    """Expansion of 1/(q;q)_r up to q^N: partitions into at most r parts."""
    if r < 0 or N < 0:
        raise ValueError("r and N must be nonnegative")
    return UniSeries(N, _pochhammer_table(r, N))


def partitions_at_most(n: int, r: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Generate partitions of n into at most r parts, parts weakly decreasing."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    if r == 0:
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions_at_most(n - first, r - 1, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _count_by_largest(n: int, r: int, largest: int) -> int:
    if n == 0:
        return 1
    if r == 0:
        return 0
    return sum(_count_by_largest(n - first, r - 1, first) for first in range(1, min(n, largest) + 1))


def partition_count_oracle(r: int, n: int) -> int:
    """p_r(n) by recursion over the largest part.

    Small cases are counted by listing the partitions outright.
    """
    if r < 0 or n < 0:
        raise ValueError("r and n must be nonnegative")
    if n <= 20:
        return sum(1 for _ in partitions_at_most(n, r))
    return _count_by_largest(n, r, n)
