import json

import pytest

from relpib.families import FAMILY_I, FAMILY_II, FAMILY_III
from relpib.quartic_forms import GeneratorTriple
from relpib.ring import RingSpec, format_elt
from relpib.search import (
    ReducibleError,
    box_restriction,
    brute_force_box,
    generators_via_reduction,
    reduce_instance,
    resolvent_v_zero_check,
    theorem3_parameters,
    theorem4_parameters,
    verify_theorem,
)

R1 = RingSpec(1)
I = R1.w


def keys(triples):
    return {GeneratorTriple(*g).canonical().key() for g in triples}


def test_reduction_family_III_t1():
    got = generators_via_reduction(FAMILY_III, R1(1), 1000)
    one, u = R1(1), R1(1, 1)
    expected = [(one, R1(0), R1(0)), (-I, R1(0), one), (R1(3), u, 2 * I), (R1(3), -u, 2 * I),
                (I, u, one), (I, -u, one)]
    assert keys(got) == keys(expected)


def test_reduction_rejects_reducible():
    with pytest.raises(ReducibleError):
        reduce_instance(FAMILY_III, R1(0), 10)
    with pytest.raises(ReducibleError):
        generators_via_reduction(FAMILY_II, R1(2), 10)


def test_reduction_family_I_small_D():
    ring = RingSpec(2)
    t = ring(3, 1)
    got = generators_via_reduction(FAMILY_I, t, 200)
    assert keys(got) >= keys([(ring(1), ring(0), ring(0)), (-t * t, ring(0), ring(1)), (ring(0), t, ring(1))])


def test_brute_force_matches_reduction_small_box():
    t = R1(2, 1)
    brute = brute_force_box(FAMILY_III, t, 5)
    reduced = box_restriction(generators_via_reduction(FAMILY_III, t, 1000), 5)
    assert brute == reduced


def test_brute_force_ceiling():
    with pytest.raises(ValueError):
        brute_force_box(FAMILY_I, R1(3), 400, ceiling=1000)


def test_resolvent_v_zero():
    assert resolvent_v_zero_check(FAMILY_I, R1(3), 10)
    assert resolvent_v_zero_check(FAMILY_II, RingSpec(3)(1, 1), 10)


def test_parameter_sets():
    ts = theorem4_parameters()
    assert len(ts) == 45 and ts[0] == 1
    assert R1(2) not in ts and R1(4) not in ts
    t3 = theorem3_parameters(3)
    assert all(t.b and t.norm() <= 9 for t in t3)
    assert len(t3) == 29 - 7


def test_verify_small_report_fields():
    report = verify_theorem(4, samples=[R1(1), R1(3)], timings=False)
    assert report.ok
    d = report.to_dict()
    assert {"theorem", "instances", "version", "ok", "checks", "caveats"} <= set(d)
    inst = d["instances"][0]
    assert {"family", "D", "t", "qnorm_bound", "expected", "found", "match", "discrepancies", "seconds"} <= set(inst)
    assert inst["seconds"] == 0.0
    assert json.loads(report.to_json()) == d
    assert report.to_csv().splitlines()[0] == "family,D,t,expected_count,found_count,match"
    assert report.to_json() == verify_theorem(4, samples=[R1(1), R1(3)], timings=False).to_json()


def test_verify_reports_discrepancy():
    # t=-4i: it is a square, so the family degenerates to family I and has extra generators
    report = verify_theorem(3, samples=[R1(0, -4)], timings=False)
    assert not report.ok
    assert report.discrepancies()


def test_verify_skips_reducible():
    # x^4 + 2x^2 + 1 = (x^2 + 1)^2
    report = verify_theorem(3, samples=[R1(0, 2), R1(1, 1)], timings=False)
    assert [s["t"] for s in report.skipped] == [format_elt(R1(0, 2))]
    assert [i.t for i in report.instances] == [format_elt(R1(1, 1))]


def test_verify_shards_identical():
    samples = [R1(a, b) for a in range(-2, 3) for b in (1, 2)]
    one = verify_theorem(3, samples=samples, qnorm_bound=100, timings=False).to_json()
    two = verify_theorem(3, samples=samples, qnorm_bound=100, timings=False, shards=2).to_json()
    assert one == two


def test_verify_bad_theorem():
    with pytest.raises(ValueError):
        verify_theorem(5)
