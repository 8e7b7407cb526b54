import pytest

from relpib.families import FAMILY_I, FAMILY_II, FAMILY_III, minpoly
from relpib.quartic_forms import (
    EQUATION_ORDER,
    ExtensionContext,
    GeneratorTriple,
    RelQuartic,
    build_forms,
    eval_resolvent,
    eval_ternary,
    index_form_value,
    is_relative_index_one,
    resolvent_unit_scan,
)
from relpib.ring import RingSpec
from relpib.sympoly import FormalPoly, poly_vars

R1 = RingSpec(1)
I = R1.w


def forms_at(family, t):
    return build_forms(minpoly(family, t))


def test_context_restricted():
    assert EQUATION_ORDER.target_norm == 1
    with pytest.raises(ValueError):
        ExtensionContext(d=2)


def test_family_I_resolvent_coefficients():
    T, = poly_vars(R1, "T")
    forms = build_forms(RelQuartic(0 * T, -T**2, 0 * T, 0 * T + 1))
    F = forms.F
    assert (F.c30, F.c21, F.c12, F.c03) == (1, T**2, FormalPoly.const(R1, -4), -4 * T**2)


def test_family_III_and_II_conics():
    T, X, Y, Z = poly_vars(R1, "TXYZ")
    w = FormalPoly.const(R1, I)
    f3 = RelQuartic(*FAMILY_III.minpoly(T, w))
    assert build_forms(f3).Q2(X, Y, Z) == Y**2 - X * Z - w * T * Z**2
    f2 = RelQuartic(*FAMILY_II.minpoly(T, w))
    assert build_forms(f2).Q2(X, Y, Z) == Y**2 - X * Z + 4 * T * Y * Z + (6 * T + 2) * Z**2


def test_eval_resolvent_examples():
    F = forms_at(FAMILY_I, R1(3)).F
    assert eval_resolvent(F, R1(1), R1(0)) == 1
    assert eval_resolvent(F, R1(1), R1(1)) == -30
    F3 = forms_at(FAMILY_III, R1(1)).F
    assert eval_resolvent(F3, R1(2), R1(1)) == 0


def test_eval_ternary_examples():
    t = R1(1)
    forms = forms_at(FAMILY_I, R1(7, 2))
    g = (R1(1), R1(0), R1(0))
    assert eval_ternary(forms.Q1, g) == 1 and eval_ternary(forms.Q2, g) == 0
    f3 = forms_at(FAMILY_III, t)
    g = (R1(3), R1(1, 1), R1(0, 2))
    assert eval_ternary(f3.Q1, g) == -1 and eval_ternary(f3.Q2, g) == 0


def test_family_I_trivial_Q2_formal():
    T, = poly_vars(R1, "T")
    forms = build_forms(RelQuartic(0 * T, -T**2, 0 * T, 0 * T + 1))
    assert forms.Q2(-T**2, 0 * T, 0 * T + 1).is_zero()


def test_index_form_examples():
    assert index_form_value(forms_at(FAMILY_I, R1(5)), (R1(1), R1(0), R1(0))) == 1
    T, = poly_vars(R1, "T")
    w = FormalPoly.const(R1, I)
    f2 = build_forms(RelQuartic(*FAMILY_II.minpoly(T, w)))
    assert (index_form_value(f2, (6 * T + 2, -4 * T, 0 * T + 1)) - 1).is_zero()
    assert index_form_value(forms_at(FAMILY_III, R1(1)), (I, R1(1, 1), R1(1))) == -1


def test_index_form_zero_triple_rejected():
    with pytest.raises(ValueError):
        index_form_value(forms_at(FAMILY_I, R1(5)), (R1(0), R1(0), R1(0)))


def test_is_relative_index_one_examples():
    t = R1(246)
    forms = forms_at(FAMILY_I, t)
    assert is_relative_index_one(forms, EQUATION_ORDER, (R1(0), t, R1(1)))
    assert not is_relative_index_one(forms, EQUATION_ORDER, (R1(1), R1(1), R1(1)))
    f3 = forms_at(FAMILY_III, R1(1))
    assert is_relative_index_one(f3, EQUATION_ORDER, (R1(3), R1(-1, -1), R1(0, 2)))


def _scan_oracle(F, ring, bound):
    # independent loop over coordinate boxes
    out = []
    box = [ring(a, b) for a in range(-6, 7) for b in range(-6, 7) if ring(a, b).norm() <= bound]
    for u in box:
        for v in box:
            val = F.c30 * u**3 + F.c21 * u**2 * v + F.c12 * u * v**2 + F.c03 * v**3
            if val.norm() == 1:
                out.append((u, v))
    return out


@pytest.mark.parametrize("family,t", [(FAMILY_I, R1(3)), (FAMILY_III, R1(2, 1))])
def test_resolvent_unit_scan(family, t):
    F = forms_at(family, t).F
    got = resolvent_unit_scan(F, 25)
    assert got and all(not v for _, v in got)
    assert set(got) == set(_scan_oracle(F, R1, 25))


def test_generator_triple_canonical():
    g = GeneratorTriple(I * 3, R1(0), -I)
    c = g.canonical()
    assert c.key() == GeneratorTriple(-3 * I * I, R1(0), I * I).canonical().key()
