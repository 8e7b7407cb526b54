"""Exact arithmetic in the ring of integers of an imaginary quadratic field.

Elements are stored as integer coordinates ``a + b*w`` over the integral
basis ``{1, w}`` where ``w = sqrt(-D)`` when ``D % 4 != 3`` and
``w = (1 + sqrt(-D)) / 2`` when ``D % 4 == 3``.  Complex embeddings are only
used to locate candidates that are then checked exactly.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import mpmath

__all__ = [
    "BasisMode",
    "ParseError",
    "QInt",
    "RingError",
    "RingSpec",
    "canonical_associate",
    "canonical_key",
    "enumerate_norm_le",
    "format_elt",
    "norm",
    "parse",
    "sqrt_exact",
    "units",
]

# cmath is accurate enough up to this coordinate bit length; beyond it mpmath
# is used at a precision that grows with the operand.
_FLOAT_BITS = 96


class RingError(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


class BasisMode(enum.Enum):
    SQRT = "sqrt"
    HALF = "half"


def _is_squarefree(n: int) -> bool:
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class RingSpec:
    """The ring Z_M for M = Q(sqrt(-D)), D > 0 squarefree."""

    D: int
    # w^2 = trace_w * w + const_w
    trace_w: int = field(init=False, repr=False, compare=False)
    const_w: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.D, int) or self.D <= 0 or not _is_squarefree(self.D):
            raise RingError(f"D must be a positive squarefree integer, got {self.D!r}")
        if self.D % 4 == 3:
            object.__setattr__(self, "trace_w", 1)
            object.__setattr__(self, "const_w", -(1 + self.D) // 4)
        else:
            object.__setattr__(self, "trace_w", 0)
            object.__setattr__(self, "const_w", -self.D)

    @property
    def basis_mode(self) -> BasisMode:
        return BasisMode.HALF if self.trace_w else BasisMode.SQRT

    @property
    def class_number_one(self) -> bool:
        return self.D in (1, 2, 3, 7, 11, 19, 43, 67, 163)

    def __call__(self, a: int = 0, b: int = 0) -> QInt:
        return QInt(self, a, b)

    @property
    def zero(self) -> QInt:
        return QInt(self, 0, 0)

    @property
    def one(self) -> QInt:
        return QInt(self, 1, 0)

    @property
    def w(self) -> QInt:
        return QInt(self, 0, 1)

    @property
    def units(self) -> tuple[QInt, ...]:
        return _units(self)

    def embed(self, a: int, b: int) -> complex:
        """Complex embedding of ``a + b*w`` (double precision)."""
        return complex(a + b * self.trace_w / 2, b * self.im_w)

    @property
    def im_w(self) -> float:
        return math.sqrt(self.D) / (2 if self.trace_w else 1)

    def coords(self, z: complex) -> tuple[float, float]:
        """Inverse of :meth:`embed` for real-valued lattice coordinates."""
        b = z.imag / self.im_w
        return z.real - b * self.trace_w / 2, b

    def mp_embed(self, x: QInt):
        w = mpmath.mpc(mpmath.mpf(self.trace_w) / 2, mpmath.sqrt(self.D) / (2 if self.trace_w else 1))
        return x.a + x.b * w

    def mp_coords(self, z) -> tuple:
        im_w = mpmath.sqrt(self.D) / (2 if self.trace_w else 1)
        b = z.imag / im_w
        return z.real - b * mpmath.mpf(self.trace_w) / 2, b


@lru_cache(maxsize=None)
def _units(ring: RingSpec) -> tuple[QInt, ...]:
    one, w = ring.one, ring.w
    if ring.D == 1:
        return (one, -one, w, -w)
    if ring.D == 3:
        return (one, -one, w, -w, w - one, one - w)
    return (one, -one)


class QInt:
    """An element ``a + b*w`` of Z_M.  Treated as immutable."""

    __slots__ = ("ring", "a", "b")

    def __init__(self, ring: RingSpec, a: int = 0, b: int = 0):
        self.ring = ring
        self.a = a
        self.b = b

    def _coerce(self, other) -> QInt:
        if isinstance(other, QInt):
            if other.ring.D != self.ring.D:
                raise RingError(f"mixed rings: D={self.ring.D} and D={other.ring.D}")
            return other
        if isinstance(other, int):
            return QInt(self.ring, other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QInt(self.ring, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QInt(self.ring, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self) -> QInt:
        return QInt(self.ring, -self.a, -self.b)

    def __pos__(self) -> QInt:
        return self

    def __mul__(self, other):
        if isinstance(other, int):
            return QInt(self.ring, self.a * other, self.b * other)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        r = self.ring
        bd = self.b * o.b
        return QInt(r, self.a * o.a + r.const_w * bd, self.a * o.b + self.b * o.a + r.trace_w * bd)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> QInt:
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result, base = self.ring.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, QInt):
            return self.ring.D == other.ring.D and self.a == other.a and self.b == other.b
        if isinstance(other, int):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring.D, self.a, self.b))

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def __repr__(self) -> str:
        return f"QInt(D={self.ring.D}, {format_elt(self)!r})"

    def __str__(self) -> str:
        return format_elt(self)

    def conj(self) -> QInt:
        return QInt(self.ring, self.a + self.b * self.ring.trace_w, -self.b)

    def norm(self) -> int:
        a, b, r = self.a, self.b, self.ring
        return a * a + r.trace_w * a * b - r.const_w * b * b

    def is_unit(self) -> bool:
        return self.norm() == 1

    def exact_div(self, other) -> QInt | None:
        """Return ``self / other`` if it lies in the ring, else ``None``."""
        if isinstance(other, int):
            if other == 0:
                raise ZeroDivisionError("division by zero in Z_M")
            if self.a % other or self.b % other:
                return None
            return QInt(self.ring, self.a // other, self.b // other)
        o = self._coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Z_M")
        num = self * o.conj()
        if num.a % n or num.b % n:
            return None
        return QInt(self.ring, num.a // n, num.b // n)

    def __complex__(self) -> complex:
        return self.ring.embed(self.a, self.b)


def norm(x: QInt) -> int:
    return x.norm()


def units(ring: RingSpec) -> list[QInt]:
    return list(ring.units)


def canonical_key(x: QInt) -> tuple[int, int, int]:
    return (x.norm(), x.a, x.b)


def _vector_key(v: Sequence[QInt]) -> tuple:
    return tuple(canonical_key(x) for x in v)


def canonical_associate(v: Sequence[QInt]) -> tuple[QInt, ...]:
    """Smallest unit multiple of ``v`` under the ``(norm, a, b)`` order.

    The order compares coordinates lexicographically over the vector.
    """
    v = tuple(v)
    if not v or not any(v):
        raise RingError("canonical_associate of a zero vector")
    ring = v[0].ring
    best, best_key = None, None
    for eps in ring.units:
        cand = tuple(eps * x for x in v)
        key = _vector_key(cand)
        if best_key is None or key < best_key:
            best, best_key = cand, key
    return best


def _leading_positive(r: QInt) -> QInt:
    if r.a < 0 or (r.a == 0 and r.b < 0):
        return -r
    return r


def _root_hint(x: QInt) -> tuple[int, int]:
    ring = x.ring
    bits = max(abs(x.a).bit_length(), abs(x.b).bit_length())
    if bits <= _FLOAT_BITS:
        a, b = ring.coords(cmath.sqrt(ring.embed(x.a, x.b)))
        return round(a), round(b)
    with mpmath.workprec(bits + 64):
        a, b = ring.mp_coords(mpmath.sqrt(ring.mp_embed(x)))
        return int(mpmath.nint(a)), int(mpmath.nint(b))


def sqrt_exact(x: QInt) -> QInt | None:
    """Exact square root of ``x`` in Z_M, or ``None``.

    Of the two roots ``r`` and ``-r`` the one whose leading nonzero
    coordinate is positive is returned.
    """
    if not x:
        return x
    n = x.norm()
    s = math.isqrt(n)
    if s * s != n:
        return None
    ca, cb = _root_hint(x)
    ring = x.ring
    for da in range(-2, 3):
        for db in range(-2, 3):
            r = QInt(ring, ca + da, cb + db)
            if r * r == x:
                return _leading_positive(r)
    return None


def enumerate_norm_le(ring: RingSpec, bound: int) -> list[QInt]:
    """All elements of norm at most ``bound``, ordered by ``(norm, a, b)``."""
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    out = []
    D = ring.D
    if ring.trace_w == 0:
        bmax = math.isqrt(bound // D)
        for b in range(-bmax, bmax + 1):
            amax = math.isqrt(bound - D * b * b)
            out.extend(QInt(ring, a, b) for a in range(-amax, amax + 1))
    else:
        # norm = ((2a + b)^2 + D b^2) / 4
        bmax = math.isqrt(4 * bound // D)
        for b in range(-bmax, bmax + 1):
            rest = 4 * bound - D * b * b
            if rest < 0:
                continue
            s = math.isqrt(rest)
            lo = -((s + b) // 2)
            hi = (s - b) // 2
            out.extend(QInt(ring, a, b) for a in range(lo, hi + 1))
    out.sort(key=canonical_key)
    return out


def orbit_representatives(elements: Iterable[QInt]) -> list[QInt]:
    """Keep the nonzero elements that are their own canonical associate."""
    return [x for x in elements if x and canonical_associate((x,))[0] == x]


def format_elt(x: QInt) -> str:
    if x.b == 0:
        return str(x.a)
    if x.a == 0:
        return f"{x.b}*w"
    return f"{x.a}{x.b:+d}*w"


def parse(text: str, ring: RingSpec) -> QInt:
    """Parse ``3``, ``-3+2*w``, ``3-2*w``, ``2*w`` or ``-2*w``.

    A bare ``w`` is rejected: the coefficient is mandatory.
    """
    pos, n = 0, len(text)

    def digits(start: int) -> int:
        end = start
        while end < n and text[end].isdigit():
            end += 1
        if end == start:
            raise ParseError("expected digits", text, start)
        return end

    def w_suffix(start: int) -> None:
        if text[start : start + 2] != "*w":
            raise ParseError("expected '*w'", text, start)
        if start + 2 != n:
            raise ParseError("trailing characters", text, start + 2)

    if n == 0:
        raise ParseError("empty element", text, 0)
    sign = 1
    if text[0] in "+-":
        sign = -1 if text[0] == "-" else 1
        pos = 1
    end = digits(pos)
    first = sign * int(text[pos:end])
    explicit_plus = text[0] == "+"
    if end == n:
        if explicit_plus:
            raise ParseError("expected '*w'", text, end)
        return QInt(ring, first, 0)
    if text[end] == "*":
        w_suffix(end)
        return QInt(ring, 0, first)
    if text[end] not in "+-" or explicit_plus:
        raise ParseError("unexpected character", text, end)
    sign2 = -1 if text[end] == "-" else 1
    end2 = digits(end + 1)
    w_suffix(end2)
    return QInt(ring, first, sign2 * int(text[end + 1 : end2]))
