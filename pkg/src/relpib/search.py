"""Generator discovery, the brute-force oracle and theorem reproduction runs."""

from __future__ import annotations

import csv
import io
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

from . import __version__
from .families import (
    FAMILY_I,
    FAMILY_II,
    FAMILY_III,
    FamilySpec,
    get_family,
    identity_checks,
    irreducibility_screen,
    minpoly,
    recover_xyz,
    thue_form,
)
from .quartic_forms import (
    EQUATION_ORDER,
    GeneratorTriple,
    RelQuartic,
    build_forms,
    index_form_value,
    is_relative_index_one,
    resolvent_unit_scan,
)
from .ring import QInt, RingSpec, canonical_associate, canonical_key, enumerate_norm_le, format_elt, parse
from .sympoly import FormalPoly, poly_vars
from .thue import ThueSolution, solve_bounded

log = logging.getLogger(__name__)

BRUTE_FORCE_CEILING = 5_000_000


class ReducibleError(ValueError):
    pass


class InstanceResult(NamedTuple):
    solutions: list[ThueSolution]
    generators: list[GeneratorTriple]


def sort_triples(triples) -> list[GeneratorTriple]:
    unique = {GeneratorTriple(*t).key(): GeneratorTriple(*t) for t in triples}
    return [unique[k] for k in sorted(unique)]


def reduce_instance(family: FamilySpec | str, t: QInt, qnorm_bound: int,
                    rhs_units: Sequence[QInt] | None = None, shards: int = 1,
                    check_irreducible: bool = True) -> InstanceResult:
    family = get_family(family)
    family.check_ring(t.ring)
    if check_irreducible and not irreducibility_screen(family, t):
        raise ReducibleError(f"f_t is reducible over M for family {family.id}, t={format_elt(t)}")
    form = thue_form(family, t)
    forms = build_forms(minpoly(family, t))
    solutions = solve_bounded(form, t.ring, qnorm_bound, rhs_units, shards=shards)
    triples = []
    for s in solutions:
        g = recover_xyz(family, t, s.p, s.q)
        if is_relative_index_one(forms, EQUATION_ORDER, g):
            triples.append(g)
        else:
            raise AssertionError(f"recovered triple {g} from {s} fails the index test")
    return InstanceResult(solutions, sort_triples(triples))


def generators_via_reduction(family: FamilySpec | str, t: QInt, qnorm_bound: int, **kwargs) -> list[GeneratorTriple]:
    """Canonical generator triples from the Thue equation of the family.

    Thue solutions with ``norm(q) <= qnorm_bound`` are mapped through the
    recovery map and kept when their index form value is a unit.
    """
    return reduce_instance(family, t, qnorm_bound, **kwargs).generators


def brute_force_box(family: FamilySpec | str, t: QInt, coord_norm_bound: int,
                    ceiling: int = BRUTE_FORCE_CEILING) -> list[GeneratorTriple]:
    """Every index-one triple with coordinate norms at most the bound.

    Exhaustive over the box; only triples whose first nonzero coordinate is
    its own canonical associate are evaluated, one per unit orbit.
    """
    family = get_family(family)
    ring = t.ring
    family.check_ring(ring)
    box = enumerate_norm_le(ring, coord_norm_bound)
    work = len(box) ** 3 // len(ring.units)
    if work > ceiling:
        raise ValueError(f"brute force over {work} triples exceeds the ceiling {ceiling}")
    forms = build_forms(minpoly(family, t))
    leads = {x for x in box if x and canonical_associate((x,))[0] == x}
    found = []
    for x in box:
        for y in box:
            for z in box:
                lead = x if x else (y if y else z)
                if lead not in leads:
                    continue
                g = (x, y, z)
                if forms.F(forms.Q1(x, y, z), forms.Q2(x, y, z)).norm() == 1:
                    found.append(GeneratorTriple(*g).canonical())
    return sort_triples(found)


def box_restriction(triples, coord_norm_bound: int) -> list[GeneratorTriple]:
    return sort_triples(g for g in triples if all(c.norm() <= coord_norm_bound for c in g))


def resolvent_v_zero_check(family: FamilySpec | str, t: QInt, box_bound: int) -> bool:
    """True iff every unit value of F on the box has ``v = 0``."""
    family = get_family(family)
    forms = build_forms(minpoly(family, t))
    pairs = resolvent_unit_scan(forms.F, box_bound)
    return bool(pairs) and all(not v for _, v in pairs)


# -- expected data ---------------------------------------------------------

@dataclass(frozen=True)
class TheoremExpectation:
    theorem: int
    family: FamilySpec
    domain: str
    # (t, w) -> list of triples; works for ring elements and formal T
    generators: Callable
    # (t, w) -> list of (p, q) pairs giving those generators
    thue_classes: Callable
    caveats: tuple[str, ...] = ()
    extra: Callable | None = None  # (t, w) -> extra triples for special parameters


def _th1_generators(t, w):
    one, zero = 0 * t + 1, 0 * t
    t2 = t * t
    return [
        (one, zero, zero),
        (-t2, zero, one),
        (one - t2 * t2, t, t2),
        (one - t2 * t2, -t, t2),
        (zero, t, one),
        (zero, -t, one),
    ]


def _th1_thue(t, w):
    one, zero = 0 * t + 1, 0 * t
    return [(one, zero), (zero, one), (one, t), (-one, t), (t, one), (-t, one)]


def _trivial_generators(t, w):
    one, zero = 0 * t + 1, 0 * t
    return [(one, zero, zero), (-w * t, zero, one)]


def _th2_generators(t, w):
    one, zero = 0 * t + 1, 0 * t
    return [(one, zero, zero), (6 * t + 2, -4 * t, one)]


def _trivial_thue(t, w):
    one, zero = 0 * t + 1, 0 * t
    return [(one, zero), (zero, one)]


def _th4_extra(t, w):
    if t != 1:
        return [], []
    one = 0 * t + 1
    u = one + w
    triples = [(3 * one, u, 2 * w), (3 * one, -u, 2 * w), (w, u, one), (w, -u, one)]
    pairs = [(one, u), (-one, u), (u, one), (u, -one)]
    return triples, pairs


EXPECTATIONS = {
    1: TheoremExpectation(1, FAMILY_I, "D > 0 squarefree, t in Z_M, |t| > 245",
                          _th1_generators, _th1_thue,
                          ("completeness relies on a parametric Thue result valid for |t| > 245",
                           "extra D=3 generator (1-w3^2 t, w3, w3^2) is recorded as disputed")),
    2: TheoremExpectation(2, FAMILY_II, "D > 0 squarefree, t in Z_M, |t| > 1544803",
                          _th2_generators, _trivial_thue,
                          ("completeness relies on a parametric Thue result valid for |t| > 1544803",)),
    3: TheoremExpectation(3, FAMILY_III, "D = 1, t in Z[i] \\ Z, |t|^2 <= 2500, f irreducible",
                          _trivial_generators, _trivial_thue,
                          ("bounded search: |q|^2 <= 1000",)),
    4: TheoremExpectation(4, FAMILY_III, "D = 1, t in {1..100}, t^2 + 4 squarefree",
                          _trivial_generators, _trivial_thue,
                          ("bounded search: |q|^2 <= 1000",), extra=_th4_extra),
}

THEOREM1_SAMPLE_D = (1, 2, 3, 7)
THEOREM2_T = 1544804
TH1_QNORM = 62000
TH2_QNORM = 50
TH34_QNORM = 1000


def theorem1_samples(Ds: Sequence[int] = THEOREM1_SAMPLE_D) -> list[QInt]:
    out = []
    for D in Ds:
        ring = RingSpec(D)
        out.extend([ring(246), ring(250, 3)])
    return out


def theorem3_parameters(t_max: int = 50) -> list[QInt]:
    """Non-rational Gaussian integers with ``|t| <= t_max``."""
    ring = RingSpec(1)
    return [t for t in enumerate_norm_le(ring, t_max * t_max) if t.b]


def _squarefree(n: int) -> bool:
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def theorem4_parameters(t_max: int = 100) -> list[QInt]:
    ring = RingSpec(1)
    return [ring(t) for t in range(1, t_max + 1) if _squarefree(t * t + 4)]


# -- reports -----------------------------------------------------------------

def triple_strings(g) -> list[str]:
    return [format_elt(c) for c in g]


@dataclass
class InstanceReport:
    family: str
    D: int
    t: str
    qnorm_bound: int
    expected: list[list[str]]
    found: list[list[str]]
    match: bool
    disputed: list[list[str]] = field(default_factory=list)
    seconds: float = 0.0
    expected_solutions: list[list[str]] = field(default_factory=list)
    solutions: list[list[str]] = field(default_factory=list)
    discrepancies: list[str] = field(default_factory=list)
    notes: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "D": self.D,
            "t": self.t,
            "family": self.family,
            "qnorm_bound": self.qnorm_bound,
            "expected": self.expected,
            "found": self.found,
            "match": self.match,
            "disputed": self.disputed,
            "seconds": self.seconds,
            "expected_solutions": self.expected_solutions,
            "solutions": self.solutions,
            "discrepancies": self.discrepancies,
            "notes": self.notes,
        }


@dataclass
class Report:
    theorem: int
    instances: list[InstanceReport]
    checks: dict[str, bool] = field(default_factory=dict)
    skipped: list[dict] = field(default_factory=list)
    caveats: list[str] = field(default_factory=list)
    notes: list[dict] = field(default_factory=list)
    version: str = __version__

    @property
    def ok(self) -> bool:
        return all(self.checks.values()) and all(i.match for i in self.instances)

    def discrepancies(self) -> list[str]:
        out = [f"check failed: {k}" for k, v in self.checks.items() if not v]
        for i in self.instances:
            out.extend(f"D={i.D} t={i.t}: {d}" for d in i.discrepancies)
        return out

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "instances": [i.to_dict() for i in self.instances],
            "version": self.version,
            "ok": self.ok,
            "checks": self.checks,
            "skipped": self.skipped,
            "caveats": self.caveats,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["family", "D", "t", "expected_count", "found_count", "match"])
        for i in self.instances:
            writer.writerow([i.family, i.D, i.t, len(i.expected), len(i.found), i.match])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"theorem {self.theorem}  version {self.version}  "
                 f"{'ALL MATCH' if self.ok else 'DISCREPANCIES'}"]
        for name, ok in self.checks.items():
            lines.append(f"  check {name}: {'ok' if ok else 'FAILED'}")
        for i in self.instances:
            lines.append(f"  D={i.D} t={i.t}: expected {len(i.expected)} found {len(i.found)} "
                         f"{'match' if i.match else 'MISMATCH'}")
            for d in i.discrepancies:
                lines.append(f"    {d}")
        if self.skipped:
            lines.append(f"  skipped {len(self.skipped)} reducible instance(s)")
        return "\n".join(lines) + "\n"


def _canonical_pairs(pairs) -> list[tuple[QInt, QInt]]:
    unique = {}
    for p, q in pairs:
        cp, cq = canonical_associate((p, q))
        unique[(cp.norm(), cp.a, cp.b, cq.norm(), cq.a, cq.b)] = (cp, cq)
    return [unique[k] for k in sorted(unique)]


def _run_instance(theorem: int, t: QInt, qnorm_bound: int, timings: bool) -> InstanceReport:
    exp = EXPECTATIONS[theorem]
    family = exp.family
    ring = t.ring
    w = ring.w
    start = time.perf_counter()
    expected = sort_triples(GeneratorTriple(*g).canonical() for g in exp.generators(t, w))
    expected_pairs = list(exp.thue_classes(t, w))
    if exp.extra is not None:
        extra_triples, extra_pairs = exp.extra(t, w)
        expected = sort_triples(expected + [GeneratorTriple(*g).canonical() for g in extra_triples])
        expected_pairs += extra_pairs
    expected_pairs = _canonical_pairs(expected_pairs)
    result = reduce_instance(family, t, qnorm_bound, check_irreducible=False)
    found_pairs = [(s.p, s.q) for s in result.solutions]

    discrepancies = []
    exp_keys = {g.key() for g in expected}
    found_keys = {g.key() for g in result.generators}
    for g in expected:
        if g.key() not in found_keys:
            discrepancies.append(f"expected generator {g} not found")
    for g in result.generators:
        if g.key() not in exp_keys:
            discrepancies.append(f"unexpected generator {g}")
    exp_pair_strs = {tuple(map(format_elt, pq)) for pq in expected_pairs}
    found_pair_strs = {tuple(map(format_elt, pq)) for pq in found_pairs}
    if exp_pair_strs != found_pair_strs:
        discrepancies.append(
            f"Thue classes differ: missing {sorted(exp_pair_strs - found_pair_strs)}, "
            f"extra {sorted(found_pair_strs - exp_pair_strs)}")

    report = InstanceReport(
        family=family.id,
        D=ring.D,
        t=format_elt(t),
        qnorm_bound=qnorm_bound,
        expected=[triple_strings(g) for g in expected],
        found=[triple_strings(g) for g in result.generators],
        match=not discrepancies,
        expected_solutions=[list(map(format_elt, pq)) for pq in expected_pairs],
        solutions=[list(map(format_elt, pq)) for pq in found_pairs],
        discrepancies=discrepancies,
    )
    if not ring.class_number_one:
        report.notes.append({"caveat": "Z_M is not a PID; completeness of the reduction is not claimed"})
    if theorem == 1 and ring.D == 3:
        _theorem1_disputed(report, t, result.generators)
    report.seconds = round(time.perf_counter() - start, 3) if timings else 0.0
    return report


def theorem1_extra_candidates(ring: RingSpec, t) -> dict[str, tuple]:
    """The extra D=3 generator under both sixth/third root of unity conventions.

    ``t`` may be a ring element or a formal polynomial over ``ring``.
    """
    w = ring.w
    conventions = {"w3=(1+sqrt(-3))/2": w, "w3=(-1+sqrt(-3))/2": w - 1}
    out = {}
    for name, w3 in conventions.items():
        if isinstance(t, FormalPoly):
            w3 = FormalPoly.const(ring, w3)
        w3sq = w3 * w3
        out[name] = (1 - w3sq * t, w3, w3sq)
    return out


def _theorem1_disputed(report: InstanceReport, t: QInt, found: list[GeneratorTriple]) -> None:
    ring = t.ring
    forms = build_forms(minpoly(FAMILY_I, t))
    found_keys = {g.key() for g in found}
    for name, g in theorem1_extra_candidates(ring, t).items():
        g = GeneratorTriple(*g).canonical()
        value = index_form_value(forms, g)
        report.disputed.append(triple_strings(g))
        report.notes.append({
            "disputed": name,
            "triple": triple_strings(g),
            "index_form_value_norm": str(value.norm()),
            "relative_index_one": value.norm() == 1,
            "found_by_search": g.key() in found_keys,
        })


def _formal_checks(theorem: int) -> tuple[dict[str, bool], list[dict]]:
    exp = EXPECTATIONS[theorem]
    family = exp.family
    checks: dict[str, bool] = {}
    notes: list[dict] = []
    for D in ((1,) if family.required_D else (1, 3)):
        ring = RingSpec(D)
        ids = identity_checks(family, ring)
        for name, ok in ids.items():
            checks[f"family {family.id} D={D} {name}"] = ok
        if theorem in (3, 4):
            continue
        (T,) = poly_vars(ring, "T")
        w = FormalPoly.const(ring, ring.w)
        forms = build_forms(RelQuartic(*family.minpoly(T, w)))
        for g in exp.generators(T, w):
            label = "(" + ", ".join(str(c) for c in g) + ")"
            checks[f"D={D} Q2{label} == 0"] = forms.Q2(*g).is_zero()
            checks[f"D={D} Q1{label} == 1"] = (forms.Q1(*g) - 1).is_zero()
    if theorem == 1:
        ring = RingSpec(3)
        (T,) = poly_vars(ring, "T")
        forms = build_forms(RelQuartic(*FAMILY_I.minpoly(T, FormalPoly.const(ring, ring.w))))
        for name, g in theorem1_extra_candidates(ring, T).items():
            q2 = forms.Q2(*g)
            notes.append({"disputed": name, "formal_Q2": str(q2), "Q2_vanishes": q2.is_zero(),
                          "formal_Q1": str(forms.Q1(*g))})
    return checks, notes


def _theorem2_numeric(t: QInt) -> dict[str, QInt]:
    """Exact index form values of the expected generators at a large parameter."""
    forms = build_forms(minpoly(FAMILY_II, t))
    return {"(" + ", ".join(map(format_elt, g)) + ")": index_form_value(forms, g)
            for g in _th2_generators(t, t.ring.w)}


def _instances(theorem: int, params: list[QInt], qnorm_bound, timings: bool, shards: int,
               skipped: list[dict]) -> list[InstanceReport]:
    family = EXPECTATIONS[theorem].family
    todo = []
    for t in params:
        if irreducibility_screen(family, t):
            bound = qnorm_bound(t) if callable(qnorm_bound) else qnorm_bound
            todo.append((theorem, t, bound, timings))
        else:
            log.info("skipping reducible instance D=%d t=%s", t.ring.D, format_elt(t))
            skipped.append({"D": t.ring.D, "t": format_elt(t), "reason": "reducible"})
    if shards > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=shards) as pool:
            reports = list(pool.map(_run_instance, *zip(*todo), chunksize=max(1, len(todo) // (4 * shards))))
    else:
        reports = [_run_instance(*args) for args in todo]
    reports.sort(key=lambda r: (r.D, canonical_key(parse(r.t, RingSpec(r.D)))))
    return reports


def verify_theorem(theorem: int, *, t_max: int | None = None, samples: Sequence[QInt] | None = None,
                   qnorm_bound: int | None = None, shards: int = 1, timings: bool = True) -> Report:
    """Reproduce one of the four theorems and compare with the expected lists."""
    if theorem not in EXPECTATIONS:
        raise ValueError(f"theorem must be 1, 2, 3 or 4, got {theorem}")
    exp = EXPECTATIONS[theorem]
    checks, notes = _formal_checks(theorem)
    skipped: list[dict] = []
    if theorem == 1:
        params = list(samples) if samples is not None else theorem1_samples()
        bound = qnorm_bound if qnorm_bound is not None else (lambda t: max(TH1_QNORM, t.norm()))
    elif theorem == 2:
        params = list(samples) if samples is not None else [RingSpec(D)(THEOREM2_T) for D in THEOREM1_SAMPLE_D]
        bound = qnorm_bound if qnorm_bound is not None else TH2_QNORM
        for t in params:
            values = _theorem2_numeric(t)
            notes.append({"D": t.ring.D, "t": format_elt(t),
                          "index_form_values": {k: format_elt(v) for k, v in values.items()}})
            for label, value in values.items():
                checks[f"D={t.ring.D} t={format_elt(t)} index{label} is a unit"] = value.is_unit()
    elif theorem == 3:
        params = list(samples) if samples is not None else theorem3_parameters(t_max or 50)
        bound = qnorm_bound if qnorm_bound is not None else TH34_QNORM
    else:
        params = list(samples) if samples is not None else theorem4_parameters(t_max or 100)
        bound = qnorm_bound if qnorm_bound is not None else TH34_QNORM
    instances = _instances(theorem, params, bound, timings, shards, skipped)
    return Report(theorem, instances, checks, skipped, list(exp.caveats), notes)
