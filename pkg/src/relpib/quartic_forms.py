"""Index form machinery for a relative quartic extension M(xi)/M.

For ``f(x) = x^4 + a1 x^3 + a2 x^2 + a3 x + a4`` the element
``alpha = x*xi + y*xi^2 + z*xi^3`` has relative index one in Z_M[xi] exactly
when ``F(Q1(x, y, z), Q2(x, y, z))`` is a unit, with F the cubic resolvent
form and Q1, Q2 the two ternary quadratic forms built below.

Form coefficients may be ring elements or :class:`FormalPoly` values; the
same code then evaluates numerically or proves identities symbolically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, NamedTuple

from .ring import QInt, RingError, RingSpec, canonical_associate, canonical_key, enumerate_norm_le


@dataclass(frozen=True)
class RelQuartic:
    a1: Any
    a2: Any
    a3: Any
    a4: Any

    @property
    def coefficients(self) -> tuple:
        return (self.a1, self.a2, self.a3, self.a4)


@dataclass(frozen=True)
class ExtensionContext:
    """Denominator, index of xi and degree of M; fixed for the equation order."""

    d: int = 1
    i0: int = 1
    m: int = 2

    def __post_init__(self) -> None:
        if (self.d, self.i0, self.m) != (1, 1, 2):
            raise ValueError("only the equation order Z_M[xi] over a quadratic M is supported")

    @property
    def target_norm(self) -> int:
        return self.d ** (6 * self.m) // self.i0


EQUATION_ORDER = ExtensionContext()


@dataclass(frozen=True)
class CubicResolventForm:
    c30: Any
    c21: Any
    c12: Any
    c03: Any

    def __call__(self, u, v):
        return self.c30 * u ** 3 + self.c21 * u ** 2 * v + self.c12 * u * v ** 2 + self.c03 * v ** 3


@dataclass(frozen=True)
class TernaryQuadraticForm:
    """Coefficients on x^2, xy, y^2, xz, yz, z^2."""

    xx: Any
    xy: Any
    yy: Any
    xz: Any
    yz: Any
    zz: Any

    def __call__(self, x, y, z):
        return (self.xx * x * x + self.xy * x * y + self.yy * y * y
                + self.xz * x * z + self.yz * y * z + self.zz * z * z)


class GeneratorTriple(NamedTuple):
    x: Any
    y: Any
    z: Any

    def key(self) -> tuple:
        return tuple(canonical_key(c) for c in self)

    def canonical(self) -> GeneratorTriple:
        return GeneratorTriple(*canonical_associate(self))

    def __str__(self) -> str:
        return f"({self.x}, {self.y}, {self.z})"


class QuarticForms(NamedTuple):
    F: CubicResolventForm
    Q1: TernaryQuadraticForm
    Q2: TernaryQuadraticForm


def build_forms(f: RelQuartic) -> QuarticForms:
    a1, a2, a3, a4 = f.coefficients
    F = CubicResolventForm(
        a1 * 0 + 1,
        -a2,
        a1 * a3 - 4 * a4,
        4 * a2 * a4 - a3 * a3 - a1 * a1 * a4,
    )
    Q1 = TernaryQuadraticForm(
        a1 * 0 + 1,
        -a1,
        a2,
        a1 * a1 - 2 * a2,
        a3 - a1 * a2,
        -a1 * a3 + a2 * a2 + a4,
    )
    Q2 = TernaryQuadraticForm(a1 * 0, a1 * 0, a1 * 0 + 1, a1 * 0 - 1, -a1, a2)
    return QuarticForms(F, Q1, Q2)


def eval_resolvent(F: CubicResolventForm, u, v):
    return F(u, v)


def eval_ternary(Q: TernaryQuadraticForm, g):
    return Q(*g)


def _require_nonzero(g) -> None:
    if not any(g):
        raise ValueError("generator triple must not be zero")


def index_form_value(forms: QuarticForms, g):
    """``F(Q1(g), Q2(g))``; its norm is the relative index of the generator."""
    _require_nonzero(g)
    return forms.F(forms.Q1(*g), forms.Q2(*g))


def is_relative_index_one(forms: QuarticForms, ctx: ExtensionContext, g) -> bool:
    return index_form_value(forms, g).norm() == ctx.target_norm


def resolvent_unit_scan(F: CubicResolventForm, box_bound: int) -> list[tuple[QInt, QInt]]:
    """All ``(u, v)`` with coordinate norms at most ``box_bound`` and ``F(u, v)`` a unit."""
    if box_bound < 1:
        raise ValueError("box_bound must be at least 1")
    if not isinstance(F.c30, QInt):
        raise RingError("resolvent scan needs a numeric form")
    ring: RingSpec = F.c30.ring
    box = enumerate_norm_le(ring, box_bound)
    return [(u, v) for u in box for v in box if F(u, v).norm() == 1]
