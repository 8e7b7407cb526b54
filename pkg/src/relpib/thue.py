"""Bounded exact solver for quartic Thue equations over Z_M.

Finds every ``(p, q)`` with ``norm(q) <= bound`` and ``form(p, q)`` in a given
set of units, up to simultaneous multiplication of ``(p, q)`` by a unit.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .families import BinaryQuarticForm
from .numeric import complex_roots, lattice_near
from .ring import (
    QInt,
    RingError,
    RingSpec,
    canonical_associate,
    canonical_key,
    enumerate_norm_le,
    orbit_representatives,
    sqrt_exact,
)


@dataclass(frozen=True)
class ThueSolution:
    p: QInt
    q: QInt
    rhs: QInt

    def key(self) -> tuple:
        return (canonical_key(self.p), canonical_key(self.q))

    def __str__(self) -> str:
        return f"({self.p}, {self.q}) -> {self.rhs}"


def eval_form(form: BinaryQuarticForm, p: QInt, q: QInt) -> QInt:
    return form(p, q)


def _canonical_solution(form: BinaryQuarticForm, p: QInt, q: QInt) -> ThueSolution:
    cp, cq = canonical_associate((p, q))
    return ThueSolution(cp, cq, form(cp, cq))


def dedup_associates(solutions: Iterable[ThueSolution], form: BinaryQuarticForm | None = None) -> list[ThueSolution]:
    """One representative per orbit ``{(e p, e q)}``, sorted canonically."""
    seen: dict[tuple, ThueSolution] = {}
    for s in solutions:
        cp, cq = canonical_associate((s.p, s.q))
        if form is not None:
            rhs = form(cp, cq)
        else:
            # rescale the stored value by the unit that carried p, q over
            eps = next(e for e in cp.ring.units if e * s.p == cp and e * s.q == cq)
            rhs = eps ** 4 * s.rhs
        sol = ThueSolution(cp, cq, rhs)
        seen.setdefault(sol.key(), sol)
    return [seen[k] for k in sorted(seen)]


def _search_values(ring: RingSpec, rhs_units: Sequence[QInt]) -> set[QInt]:
    """Values whose solution classes meet ``rhs_units``: ``e^4 * rho`` over units ``e``."""
    return {e ** 4 * rho for e in ring.units for rho in rhs_units}


def _p_biquadratic(form: BinaryQuarticForm, q: QInt, values: Iterable[QInt]) -> list[tuple[QInt, QInt]]:
    # p^4 + c22 q^2 p^2 + q^4 = rho, quadratic in p^2
    q2 = q * q
    q4 = q2 * q2
    b = form.c22 * q2
    bb_minus = b * b - 4 * q4
    found = []
    for rho in values:
        disc = bb_minus + 4 * rho
        s = sqrt_exact(disc)
        if s is None:
            continue
        for root in {s, -s}:
            p2 = (root - b).exact_div(2)
            if p2 is None:
                continue
            p = sqrt_exact(p2)
            if p is None:
                continue
            for cand in {p, -p}:
                if form(cand, q) == rho:
                    found.append((cand, rho))
    return found


def _p_general(form: BinaryQuarticForm, q: QInt, values: Iterable[QInt]) -> list[tuple[QInt, QInt]]:
    ring = q.ring
    q2 = q * q
    found = []
    for rho in sorted(values, key=canonical_key):
        coeffs = [form.c40, form.c31 * q, form.c22 * q2, form.c13 * q2 * q, form.c04 * q2 * q2 - rho]
        seen = set()
        roots, prec = complex_roots(coeffs)
        for z in roots:
            for cand in lattice_near(ring, z, prec):
                if cand not in seen and form(cand, q) == rho:
                    seen.add(cand)
                    found.append((cand, rho))
    return found


def _solve_q_values(form: BinaryQuarticForm, q_values: Sequence[QInt], values: set[QInt]) -> list[ThueSolution]:
    ring = form.c40.ring
    finder = _p_biquadratic if form.is_biquadratic else _p_general
    out = []
    for q in q_values:
        if not q:
            for u in ring.units:
                if form(u, q) in values:
                    out.append(_canonical_solution(form, u, q))
            continue
        for p, _ in finder(form, q, values):
            out.append(_canonical_solution(form, p, q))
    return out


@lru_cache(maxsize=8)
def q_orbit_representatives(ring: RingSpec, qnorm_bound: int) -> tuple[QInt, ...]:
    """Zero plus one associate of every nonzero q with norm at most the bound."""
    return (ring.zero, *orbit_representatives(enumerate_norm_le(ring, qnorm_bound)))


def solve_bounded(
    form: BinaryQuarticForm,
    ring: RingSpec,
    qnorm_bound: int,
    rhs_units: Sequence[QInt] | None = None,
    shards: int = 1,
    parallel: bool = False,
) -> list[ThueSolution]:
    """All solution classes with ``norm(q) <= qnorm_bound``.

    A class is reported when one of its members takes a value in
    ``rhs_units`` (every unit by default).  The q-range is split
    round-robin into ``shards`` pieces; the merged result does not depend on
    the split.
    """
    if qnorm_bound < 0:
        raise ValueError("qnorm_bound must be nonnegative")
    if form.c40.ring.D != ring.D:
        raise RingError("form and ring disagree")
    rhs_units = list(ring.units) if rhs_units is None else list(rhs_units)
    if not rhs_units or not all(r.ring.D == ring.D and r.is_unit() for r in rhs_units):
        raise ValueError("rhs_units must be a nonempty list of units")
    values = _search_values(ring, rhs_units)
    q_values = q_orbit_representatives(ring, qnorm_bound)
    shards = max(1, shards)
    chunks = [q_values[i::shards] for i in range(shards)]
    if parallel and shards > 1:
        with ProcessPoolExecutor(max_workers=shards) as pool:
            parts = list(pool.map(_solve_q_values, [form] * shards, chunks, [values] * shards))
    else:
        parts = [_solve_q_values(form, chunk, values) for chunk in chunks]
    return dedup_associates((s for part in parts for s in part), form)
