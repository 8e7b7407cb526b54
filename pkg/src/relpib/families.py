"""The three parametric families of relative quartic extensions.

Each family fixes a defining polynomial ``f_t``, a point on the conic
``Q2 = 0``, the line parametrization through that point and the quadratic
recovery map ``(p, q) -> (x, y, z)``.  Pulling Q1 back along the recovery map
gives the binary quartic Thue form of the family.

All coefficient builders take ``(t, w)`` and use only ring operations, so the
same definitions are evaluated at ring elements or at formal polynomials.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Any, Callable

import mpmath

from .numeric import (
    complex_roots,
    divides_monic_quadratic,
    lattice_near,
    poly_eval,
    quartic_discriminant,
)
from .quartic_forms import GeneratorTriple, RelQuartic, build_forms
from .ring import QInt, RingError, RingSpec, sqrt_exact
from .sympoly import FormalPoly, poly_vars


@dataclass(frozen=True)
class BinaryQuarticForm:
    """Coefficients on p^4, p^3 q, p^2 q^2, p q^3, q^4."""

    c40: Any
    c31: Any
    c22: Any
    c13: Any
    c04: Any

    @property
    def coefficients(self) -> tuple:
        return (self.c40, self.c31, self.c22, self.c13, self.c04)

    @property
    def is_biquadratic(self) -> bool:
        return not self.c31 and not self.c13

    def __call__(self, p, q):
        p2, q2 = p * p, q * q
        return (self.c40 * p2 * p2 + self.c31 * p2 * p * q + self.c22 * p2 * q2
                + self.c13 * p * q2 * q + self.c04 * q2 * q2)


@dataclass(frozen=True)
class FamilySpec:
    id: str
    number: int
    required_D: int | None
    minpoly: Callable  # (t, w) -> (a1, a2, a3, a4)
    base_point: Callable  # (t, w) -> (x0, y0, z0)
    line: Callable  # (p, q, r, t, w) -> (x, y, z)
    line_relation: Callable  # (p, q, r, t, w) -> relation that Q2(line) equals up to sign
    recovery: Callable  # (p, q, t, w) -> (kx, ky, kz)
    thue: Callable  # (t, w) -> five coefficients
    resolvent_factors: Callable  # (t, w) -> three (u-coefficient, v-coefficient) pairs
    validity: str = ""

    def check_ring(self, ring: RingSpec) -> None:
        if self.required_D is not None and ring.D != self.required_D:
            raise RingError(f"family {self.id} requires D={self.required_D}, got D={ring.D}")

    def __str__(self) -> str:
        return self.id


FAMILY_I = FamilySpec(
    id="I",
    number=1,
    required_D=None,
    minpoly=lambda t, w: (0 * t, -t * t, 0 * t, 0 * t + 1),
    base_point=lambda t, w: (-t * t, 0 * t, 0 * t + 1),
    line=lambda p, q, r, t, w: (-t * t * r + p, q, r),
    line_relation=lambda p, q, r, t, w: r * p - q * q,
    recovery=lambda p, q, t, w: (p * p - t * t * q * q, p * q, q * q),
    thue=lambda t, w: (0 * t + 1, 0 * t, -t * t, 0 * t, 0 * t + 1),
    resolvent_factors=lambda t, w: ((1, -2), (1, 2), (1, t * t)),
    validity="|t| > 245",
)

FAMILY_II = FamilySpec(
    id="II",
    number=2,
    required_D=None,
    minpoly=lambda t, w: (-4 * t, 6 * t + 2, 4 * t, 0 * t + 1),
    base_point=lambda t, w: (6 * t + 2, 0 * t, 0 * t + 1),
    line=lambda p, q, r, t, w: ((6 * t + 2) * r + p, q, r),
    line_relation=lambda p, q, r, t, w: q * q - r * (p - 4 * t * q),
    recovery=lambda p, q, t, w: (p * p - 4 * t * p * q + (6 * t + 2) * q * q, p * q - 4 * t * q * q, q * q),
    thue=lambda t, w: (0 * t + 1, -4 * t, 6 * t + 2, 4 * t, 0 * t + 1),
    resolvent_factors=lambda t, w: ((1, 2), (1, -(2 - 2 * t)), (1, -(2 + 8 * t))),
    validity="|t| > 1544803",
)

FAMILY_III = FamilySpec(
    id="III",
    number=3,
    required_D=1,
    minpoly=lambda t, w: (0 * t, -w * t, 0 * t, 0 * t + 1),
    base_point=lambda t, w: (0 * t + 1, 0 * t, 0 * t),
    line=lambda p, q, r, t, w: (r, p, q),
    line_relation=lambda p, q, r, t, w: r * q - (p * p - w * t * q * q),
    recovery=lambda p, q, t, w: (p * p - w * t * q * q, p * q, q * q),
    thue=lambda t, w: (0 * t + 1, 0 * t, -w * t, 0 * t, 0 * t + 1),
    resolvent_factors=lambda t, w: ((1, w * t), (1, -2), (1, 2)),
    validity="bounded search only",
)

FAMILIES = {f.id: f for f in (FAMILY_I, FAMILY_II, FAMILY_III)}


def get_family(key: str | int | FamilySpec) -> FamilySpec:
    if isinstance(key, FamilySpec):
        return key
    text = str(key).strip().upper()
    aliases = {"1": "I", "2": "II", "3": "III"}
    text = aliases.get(text, text)
    if text not in FAMILIES:
        raise KeyError(f"unknown family {key!r}; expected one of I, II, III")
    return FAMILIES[text]


def _numeric(family: FamilySpec, t: QInt) -> QInt:
    family.check_ring(t.ring)
    return t.ring.w


def minpoly(family: FamilySpec, t: QInt) -> RelQuartic:
    w = _numeric(family, t)
    return RelQuartic(*family.minpoly(t, w))


def thue_form(family: FamilySpec, t: QInt) -> BinaryQuarticForm:
    w = _numeric(family, t)
    return BinaryQuarticForm(*family.thue(t, w))


def recover_xyz(family: FamilySpec, t: QInt, p: QInt, q: QInt) -> GeneratorTriple:
    """Generator coefficients for a Thue solution, with k = 1, canonicalized."""
    if not p and not q:
        raise ValueError("(p, q) must not be (0, 0)")
    w = _numeric(family, t)
    return GeneratorTriple(*family.recovery(p, q, t, w)).canonical()


# -- irreducibility ----------------------------------------------------------

def biquadratic_irreducible(A: QInt, B: QInt) -> bool:
    """Irreducibility of ``x^4 + A x^2 + B`` over M.

    Reducible iff ``A^2 - 4B`` is a square, or ``B = s^2`` with ``2s - A``
    a square for one of the two choices of ``s``.
    """
    if sqrt_exact(A * A - 4 * B) is not None:
        return False
    s = sqrt_exact(B)
    if s is not None:
        for sign in (1, -1):
            if sqrt_exact(2 * sign * s - A) is not None:
                return False
    return True


def quartic_irreducible(coeffs: tuple[QInt, ...]) -> bool:
    """Irreducibility of a monic quartic ``x^4 + a1 x^3 + ... + a4`` over M.

    Linear and monic quadratic factors over Z_M are built from the numeric
    roots (a quadratic factor is ``(x - r_i)(x - r_j)``) and confirmed by
    exact division.  Repeated roots are caught by the exact discriminant.
    """
    full = (coeffs[0].ring.one, *coeffs)
    if not quartic_discriminant(*full):
        return False
    ring = coeffs[0].ring
    roots, prec = complex_roots(full)
    for r in roots:
        for cand in lattice_near(ring, r, prec):
            if not poly_eval(full, cand):
                return False
    for ri, rj in itertools.combinations(roots, 2):
        with mpmath.workprec(prec):
            s, m = -(ri + rj), ri * rj
        c1s = lattice_near(ring, s, prec, radius=1)
        c0s = lattice_near(ring, m, prec, radius=1)
        for c1 in c1s:
            for c0 in c0s:
                if divides_monic_quadratic(full, c1, c0):
                    return False
    return True


def irreducibility_screen(family: FamilySpec, t: QInt) -> bool:
    a1, a2, a3, a4 = minpoly(family, t).coefficients
    if not a1 and not a3:
        return biquadratic_irreducible(a2, a4)
    return quartic_irreducible((a1, a2, a3, a4))


# -- formal identities -------------------------------------------------------

def _formal(family: FamilySpec, ring: RingSpec):
    family.check_ring(ring)
    T, P, Q, R, U, V = poly_vars(ring, "TPQRUV")
    w = FormalPoly.const(ring, ring.w)
    return T, P, Q, R, U, V, w


def resolvent_factorization(family: FamilySpec, ring: RingSpec | None = None) -> tuple[FormalPoly, ...]:
    """The three linear factors of F(U, V), checked against the formal F.

    Raises ``ArithmeticError`` if the product differs from F.
    """
    ring = ring or RingSpec(family.required_D or 1)
    T, P, Q, R, U, V, w = _formal(family, ring)
    forms = build_forms(RelQuartic(*family.minpoly(T, w)))
    factors = tuple(cu * U + cv * V for cu, cv in family.resolvent_factors(T, w))
    diff = factors[0] * factors[1] * factors[2] - forms.F(U, V)
    if not diff.is_zero():
        raise ArithmeticError(f"resolvent factorization of family {family.id} fails: {diff}")
    return factors


def identity_checks(family: FamilySpec, ring: RingSpec | None = None, spot_checks: int = 10,
                    seed: int = 0) -> dict[str, bool]:
    """Formal identities behind the reduction for one family.

    Every identity is polynomial in T with Z_M coefficients, so holding
    formally means holding for every parameter value; it is additionally
    spot-checked at ``spot_checks`` random ring values of t.
    """
    ring = ring or RingSpec(family.required_D or 1)
    T, P, Q, R, U, V, w = _formal(family, ring)
    forms = build_forms(RelQuartic(*family.minpoly(T, w)))
    out: dict[str, bool] = {}

    try:
        resolvent_factorization(family, ring)
        out["resolvent_factorization"] = True
    except ArithmeticError:
        out["resolvent_factorization"] = False

    out["base_point_on_conic"] = forms.Q2(*family.base_point(T, w)).is_zero()

    line_q2 = forms.Q2(*family.line(P, Q, R, T, w))
    rel = family.line_relation(P, Q, R, T, w)
    out["line_relation"] = (line_q2 - rel).is_zero() or (line_q2 + rel).is_zero()

    rec = family.recovery(P, Q, T, w)
    thue = BinaryQuarticForm(*family.thue(T, w))
    out["q2_vanishes_on_recovery"] = forms.Q2(*rec).is_zero()
    out["q1_recovery_is_thue_form"] = (forms.Q1(*rec) - thue(P, Q)).is_zero()

    rng = random.Random(seed)
    spot = True
    for _ in range(spot_checks):
        t = ring(rng.randint(-50, 50), rng.randint(-50, 50))
        p = ring(rng.randint(-9, 9), rng.randint(-9, 9))
        q = ring(rng.randint(-9, 9), rng.randint(-9, 9))
        wn = ring.w
        nforms = build_forms(RelQuartic(*family.minpoly(t, wn)))
        nrec = family.recovery(p, q, t, wn)
        nthue = BinaryQuarticForm(*family.thue(t, wn))
        u = ring(rng.randint(-9, 9), rng.randint(-9, 9))
        v = ring(rng.randint(-9, 9), rng.randint(-9, 9))
        prod = ring.one
        for cu, cv in family.resolvent_factors(t, wn):
            prod = prod * (cu * u + cv * v)
        spot &= nforms.Q2(*nrec) == 0
        spot &= nforms.Q1(*nrec) == nthue(p, q)
        spot &= prod == nforms.F(u, v)
    out["spot_checks"] = spot
    return out


def parametrization_identity_check(family: FamilySpec, ring: RingSpec | None = None) -> bool:
    return all(identity_checks(family, ring).values())
