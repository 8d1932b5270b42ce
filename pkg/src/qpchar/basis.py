"""Brute-force census of the quasi-particle basis.

Charge-types are generated color by color; for each one the admissible mode
indices are walked depth-first and every monomial of total energy <= N is
counted individually.  Nothing here uses the fermionic sum.

Pruning of charge-types relies on a closed-form lower bound for the energy
still to come.  Writing S_i for the sum of squares of the dual-charge entries
of color i, the cheapest real completion of colors i..l given color i-1 costs
at least ``-g_i * S_{i-1}`` with ``g_{l+1} = 0`` and
``g_i = rho_i / (4 * (1 - g_{i+1}))``.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .affine import WeightSpec, delta_shift
from .errors import CoefficientOverflow, InternalInconsistency
from .qseries import TruncatedSeries, checked
from .quasiparticle import ChargeType, Monomial, by_p, conjugate_inverse_color, order_key

THREADS_ENV = "QPCHAR_THREADS"


@dataclass(frozen=True)
class BasisCensus:
    weight: WeightSpec
    max_degree: int
    counts: TruncatedSeries
    monomials: tuple[Monomial, ...] | None = None


def census_coefficient(census: BasisCensus, m: int, color_type) -> int:
    if m > census.max_degree:
        raise ValueError(f"degree {m} beyond truncation {census.max_degree}")
    return census.counts[(m, tuple(color_type))]


def thread_count(threads: int | None = None) -> int:
    if threads is not None:
        return max(1, threads)
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return 1
    value = int(raw)
    if value < 1:
        raise ValueError(f"{THREADS_ENV} must be a positive integer")
    return value


# charge-type generation


def _relaxation_coefficients(weight: WeightSpec) -> list[Fraction]:
    """g[i] for i = 1..l+1 (index 0 unused)."""
    l = weight.algebra.rank
    rho = weight.algebra.rho
    g = [Fraction(0)] * (l + 2)
    for i in range(l, 1, -1):
        denom = 1 - g[i + 1]
        if denom <= 0:
            raise InternalInconsistency("relaxation bound diverged")
        g[i] = Fraction(rho[i - 1], 4) / denom
    if g[2] >= 1:
        raise InternalInconsistency("relaxation bound diverged")
    return g


def iter_charge_types(weight: WeightSpec, N: int):
    """Yield every charge-type whose minimal energy can be at most N.

    Walks dual-charge entries color by color; the remaining colors are
    bounded below by the real relaxation described in the module docstring.
    """
    l = weight.algebra.rank
    caps = weight.k_alpha
    rho = weight.algebra.rho
    g = _relaxation_coefficients(weight)
    chosen: list[tuple[int, ...]] = []

    def color_rec(i: int, prefix: int):
        if i > l:
            yield tuple(conjugate_inverse_color(d) for d in chosen)
            return
        cap = caps[i - 1]
        coef = 1 - g[i + 1]
        prev = chosen[-1] if i > 1 else None
        a = [prev[(s - 1) // rho[i - 1]] if prev else 0 for s in range(1, cap + 1)]
        lin = [
            1 if weight.kj and i == weight.j and s > weight.threshold else 0
            for s in range(1, cap + 1)
        ]

        def term(s: int, b: int) -> Fraction:
            return coef * b * b - (a[s] - lin[s]) * b

        def floor_term(s: int) -> Fraction:
            # min over real b >= 0
            eff = a[s] - lin[s]
            return -Fraction(eff * eff) / (4 * coef) if eff > 0 else Fraction(0)

        tail = [Fraction(0)] * (cap + 1)
        for s in range(cap - 1, -1, -1):
            tail[s] = tail[s + 1] + floor_term(s)
        dual = [0] * cap

        def comp_rec(s: int, committed: Fraction, upper: int | None):
            if s == cap:
                d = tuple(dual)
                exact = sum(b * b - (a[t] - lin[t]) * b for t, b in enumerate(d))
                chosen.append(d)
                yield from color_rec(i + 1, prefix + exact)
                chosen.pop()
                return
            budget = N - prefix - committed - tail[s + 1]
            vertex = Fraction(a[s] - lin[s], 2 * coef)
            b = 0
            while upper is None or b <= upper:
                val = term(s, b)
                if val > budget:
                    if b > vertex:
                        break
                    b += 1
                    continue
                dual[s] = b
                yield from comp_rec(s + 1, committed + val, b)
                b += 1
            dual[s] = 0

        yield from comp_rec(0, Fraction(0), None)

    yield from color_rec(1, 0)


# energy walk


def _particles(weight: WeightSpec, charge_type: ChargeType):
    """Per particle (color, p, charge, bound, chained-to-previous)."""
    rho = weight.algebra.rho
    out = []
    for i, charges in enumerate(charge_type, start=1):
        prev = charge_type[i - 2] if i > 1 else ()
        for p, n in enumerate(by_p(charges), start=1):
            bound = -n - 2 * (p - 1) * n - delta_shift(weight, i, n)
            bound += sum(min(rho[i - 1] * nq, n) for nq in prev)
            chained = p > 1 and by_p(charges)[p - 2] == n
            out.append((i, p, n, bound, chained))
    return out


def walk_energies(weight: WeightSpec, charge_type: ChargeType, N: int, collect: bool = False):
    """Count admissible monomials of one charge-type by total energy.

    Returns ``(counts, monomials)`` with ``counts[e]`` the number of monomials
    of energy e <= N; ``monomials`` is filled only when ``collect`` is set.
    """
    parts = _particles(weight, charge_type)
    P = len(parts)
    counts = [0] * (N + 1)
    found: list[tuple[int, ...]] = []
    if P == 0:
        counts[0] = 1
        return counts, ([()] if collect else [])
    # chain successors of each particle and the bound-only cost of the others
    chain_after = [0] * P
    for idx in range(P - 2, -1, -1):
        if parts[idx + 1][4]:
            chain_after[idx] = chain_after[idx + 1] + 1
    suffix = [0] * (P + 1)
    for idx in range(P - 1, -1, -1):
        suffix[idx] = suffix[idx + 1] - parts[idx][3]
    other_cost = [suffix[idx + 1 + chain_after[idx]] for idx in range(P)]
    modes = [0] * P

    def rec(idx: int, spent: int):
        _, _, n, bound, chained = parts[idx]
        cap = bound if not chained else min(bound, modes[idx - 1] - 2 * n)
        L = chain_after[idx]
        rest_fixed = other_cost[idx] + n * L * (L + 1)
        last = idx == P - 1
        m = cap
        while True:
            # successors in this chain sit at least 2n lower each
            cost = spent - m + rest_fixed - L * m
            if cost > N:
                break
            modes[idx] = m
            if last:
                e = spent - m
                counts[e] += 1
                if collect:
                    found.append(tuple(modes))
            else:
                rec(idx + 1, spent - m)
            m -= 1

    rec(0, 0)
    return counts, found


def _build_monomial(weight: WeightSpec, charge_type: ChargeType, modes) -> Monomial:
    colors = []
    pos = 0
    for charges in charge_type:
        pairs = []
        for n in by_p(charges):
            pairs.append((n, modes[pos]))
            pos += 1
        colors.append(tuple(reversed(pairs)))
    return Monomial(tuple(colors))


def _census_chunk(args):
    weight, N, charge_types, collect = args
    out = []
    for ct in charge_types:
        counts, found = walk_energies(weight, ct, N, collect)
        out.append((ct, counts, found))
    return out


def enumerate_basis(
    weight: WeightSpec,
    N: int,
    emit: str = "counts",
    threads: int | None = None,
) -> BasisCensus:
    """Census of admissible monomials with total energy at most N."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    if emit not in ("counts", "list"):
        raise ValueError("emit must be 'counts' or 'list'")
    collect = emit == "list"
    charge_types = list(iter_charge_types(weight, N))
    workers = thread_count(threads)
    if workers > 1 and len(charge_types) > 1:
        # round-robin chunks; results are re-sorted into canonical order below
        chunks = [charge_types[w::workers] for w in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = [r for part in pool.map(_census_chunk, [(weight, N, c, collect) for c in chunks]) for r in part]
    else:
        results = _census_chunk((weight, N, charge_types, collect))
    results.sort(key=lambda item: item[0])

    terms: dict = {}
    monomials: list[Monomial] = []
    for ct, counts, found in results:
        ctype = tuple(sum(c) for c in ct)
        for e, c in enumerate(counts):
            if c:
                key = (e, ctype)
                terms[key] = checked(terms.get(key, 0) + c)
        if collect:
            monomials.extend(_build_monomial(weight, ct, modes) for modes in found)
    census = TruncatedSeries(N, weight.algebra.rank, terms)
    listing = None
    if collect:
        listing = tuple(sorted(monomials, key=lambda mo: (mo.total_energy, mo.color_type, order_key(mo))))
    return BasisCensus(weight, N, census, listing)
