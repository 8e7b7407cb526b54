import random

import pytest

from relpib.families import FAMILY_I, FAMILY_II, FAMILY_III, thue_form
from relpib.ring import RingSpec, canonical_associate, enumerate_norm_le
from relpib.thue import ThueSolution, dedup_associates, eval_form, solve_bounded

R1 = RingSpec(1)
I = R1.w


def classes(sols):
    return {(s.p, s.q) for s in sols}


def canon(pairs):
    return {canonical_associate(pq) for pq in pairs}


def brute_classes(form, ring, pnorm, qnorm):
    # independent double loop over both coordinates
    ps = enumerate_norm_le(ring, pnorm)
    qs = enumerate_norm_le(ring, qnorm)
    found = set()
    for q in qs:
        for p in ps:
            if (p or q) and form(p, q).norm() == 1:
                found.add(canonical_associate((p, q)))
    return found


def test_eval_form_examples():
    assert eval_form(thue_form(FAMILY_III, R1(1)), R1(1), R1(1, 1)) == -1
    assert eval_form(thue_form(FAMILY_I, R1(7, 1)), R1(1), R1(0)) == 1
    assert eval_form(thue_form(FAMILY_I, R1(3)), R1(3), R1(1)) == 1


def test_family_III_t1_classes():
    sols = solve_bounded(thue_form(FAMILY_III, R1(1)), R1, 1000)
    expected = canon([(R1(1), R1(0)), (R1(0), R1(1)), (R1(1), R1(1, 1)), (R1(-1), R1(1, 1)),
                      (R1(1, 1), R1(1)), (R1(1, 1), R1(-1))])
    assert classes(sols) == expected
    for s in sols:
        assert eval_form(thue_form(FAMILY_III, R1(1)), s.p, s.q) == s.rhs


def test_family_III_t2_classes():
    form = thue_form(FAMILY_III, R1(2))
    sols = solve_bounded(form, R1, 1000)
    assert classes(sols) == canon([(R1(1), R1(0)), (R1(0), R1(1)), (R1(1), R1(1, 1)), (R1(-1), R1(1, 1)),
                                   (R1(1, 1), R1(1)), (R1(1, 1), R1(-1))])
    assert classes(sols) >= brute_classes(form, R1, 200, 100)


def test_family_I_t3_contains_expected():
    form = thue_form(FAMILY_I, R1(3))
    sols = classes(solve_bounded(form, R1, 100))
    assert sols >= canon([(R1(1), R1(0)), (R1(0), R1(1)), (R1(3), R1(1)), (R1(-3), R1(1)),
                          (R1(1), R1(3)), (R1(-1), R1(3))])


@pytest.mark.parametrize("family,D,t", [
    (FAMILY_I, 1, (3, 0)), (FAMILY_I, 2, (1, 1)), (FAMILY_I, 3, (2, 0)), (FAMILY_I, 7, (0, 1)),
    (FAMILY_III, 1, (1, 0)), (FAMILY_III, 1, (2, 0)), (FAMILY_III, 1, (1, -2)), (FAMILY_III, 1, (0, 3)),
    (FAMILY_II, 1, (1, 0)), (FAMILY_II, 3, (0, 1)), (FAMILY_II, 2, (-1, 0)),
])
def test_solver_matches_brute_force(family, D, t):
    ring = RingSpec(D)
    form = thue_form(family, ring(*t))
    qbound, pbound = 100, 200
    sols = classes(solve_bounded(form, ring, qbound))
    brute = brute_classes(form, ring, pbound, qbound)
    # the brute loop is limited to norm(p) <= pbound; the solver is not
    assert {pq for pq in sols if pq[0].norm() <= pbound} == brute


def test_rhs_restriction():
    form = thue_form(FAMILY_III, R1(1))
    only_one = solve_bounded(form, R1, 50, rhs_units=[R1.one])
    assert classes(only_one) <= classes(solve_bounded(form, R1, 50))
    for s in only_one:
        assert any((e**4) * s.rhs == 1 for e in R1.units)


def test_bad_arguments():
    form = thue_form(FAMILY_III, R1(1))
    with pytest.raises(ValueError):
        solve_bounded(form, R1, -1)
    with pytest.raises(ValueError):
        solve_bounded(form, R1, 10, rhs_units=[R1(2)])
    with pytest.raises(ValueError):
        solve_bounded(form, R1, 10, rhs_units=[])


def test_dedup_examples():
    sols = [ThueSolution(u, R1(0), u**4) for u in R1.units]
    assert len(dedup_associates(sols)) == 1
    form = thue_form(FAMILY_III, R1(1))
    pair = [ThueSolution(R1(1), R1(1, 1), form(R1(1), R1(1, 1))),
            ThueSolution(R1(-1), R1(1, 1), form(R1(-1), R1(1, 1)))]
    assert len(dedup_associates(pair, form)) == 2
    r7 = RingSpec(7)
    f7 = thue_form(FAMILY_I, r7(2))
    orbit = [ThueSolution(u * r7(1), u * r7(3), f7(u, 3 * u)) for u in r7.units]
    assert len(dedup_associates(orbit, f7)) == 1


def test_shard_invariance_small():
    form = thue_form(FAMILY_II, RingSpec(3)(1, 1))
    base = solve_bounded(form, RingSpec(3), 80)
    for shards in (2, 3, 7):
        assert solve_bounded(form, RingSpec(3), 80, shards=shards) == base
    assert solve_bounded(form, RingSpec(3), 80, shards=2, parallel=True) == base


def test_large_parameter_numeric_path():
    ring = RingSpec(2)
    t = ring(1544804)
    form = thue_form(FAMILY_II, t)
    sols = classes(solve_bounded(form, ring, 50))
    assert canon([(ring(1), ring(0)), (ring(0), ring(1))]) <= sols
