"""High-precision root hints for univariate polynomials over Z_M.

Roots are only used to propose lattice candidates; callers verify every
candidate exactly.
"""

from __future__ import annotations

from typing import Sequence

import mpmath

from .ring import QInt, RingSpec

MAX_DOUBLINGS = 6
# largest accepted root error estimate, in units of the complex plane
_ERROR_CEILING = 0.25


class PrecisionError(ArithmeticError):
    """Root finding did not reach a usable accuracy at the precision cap."""


def working_precision(coeffs: Sequence[QInt]) -> int:
    bits = max(max(abs(c.a).bit_length(), abs(c.b).bit_length()) for c in coeffs)
    return 4 * bits + 64


def complex_roots(coeffs: Sequence[QInt]) -> tuple[list, int]:
    """Roots of ``sum coeffs[i] x^(n-i)`` (highest degree first) as mpc values.

    Precision starts at four times the largest coefficient bit length plus 64
    and doubles until the error estimate is below the ceiling.  Returns the
    roots and the precision in bits that further work on them should use.
    """
    ring = coeffs[0].ring
    prec = working_precision(coeffs)
    for _ in range(MAX_DOUBLINGS + 1):
        with mpmath.workprec(prec):
            mp = [ring.mp_embed(c) for c in coeffs]
            try:
                roots, err = mpmath.polyroots(mp, maxsteps=50 + prec // 2, extraprec=prec, error=True)
            except mpmath.libmp.NoConvergence:
                prec *= 2
                continue
            if err < _ERROR_CEILING:
                return list(roots), prec
        prec *= 2
    raise PrecisionError(f"no convergent roots up to {prec // 2} bits")


def lattice_near(ring: RingSpec, z, prec: int, radius: int = 2) -> list[QInt]:
    """Lattice points whose coordinates are within ``radius`` of those of ``z``."""
    with mpmath.workprec(prec):
        a, b = ring.mp_coords(z)
        ca, cb = int(mpmath.nint(a)), int(mpmath.nint(b))
    out = []
    for da in range(-radius, radius + 1):
        for db in range(-radius, radius + 1):
            out.append(QInt(ring, ca + da, cb + db))
    return out


def poly_eval(coeffs: Sequence[QInt], x: QInt) -> QInt:
    acc = x.ring.zero
    for c in coeffs:
        acc = acc * x + c
    return acc


def divides_monic_quadratic(coeffs: Sequence[QInt], c1: QInt, c0: QInt) -> bool:
    """Whether ``x^2 + c1 x + c0`` divides the monic quartic ``coeffs`` exactly."""
    rem = list(coeffs)
    for i in range(len(rem) - 2):
        lead = rem[i]
        rem[i + 1] = rem[i + 1] - lead * c1
        rem[i + 2] = rem[i + 2] - lead * c0
    return not rem[-1] and not rem[-2]


def quartic_discriminant(a, b, c, d, e):
    return (256 * a**3 * e**3 - 192 * a**2 * b * d * e**2 - 128 * a**2 * c**2 * e**2
            + 144 * a**2 * c * d**2 * e - 27 * a**2 * d**4 + 144 * a * b**2 * c * e**2
            - 6 * a * b**2 * d**2 * e - 80 * a * b * c**2 * d * e + 18 * a * b * c * d**3
            + 16 * a * c**4 * e - 4 * a * c**3 * d**2 - 27 * b**4 * e**2
            + 18 * b**3 * c * d * e - 4 * b**3 * d**3 - 4 * b**2 * c**3 * e + b**2 * c**2 * d**2)
