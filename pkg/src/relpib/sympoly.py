"""Sparse multivariate polynomials with Z_M coefficients.

Only what is needed to check polynomial identities exactly: ring operations,
substitution and evaluation over a fixed universe of variables.
"""

from __future__ import annotations

from typing import Mapping

from .ring import QInt, RingError, RingSpec

VARIABLES = ("T", "P", "Q", "R", "U", "V", "X", "Y", "Z")
_INDEX = {name: i for i, name in enumerate(VARIABLES)}
_ZERO_EXP = (0,) * len(VARIABLES)

MAX_DEGREE = 8


class DegreeError(ArithmeticError):
    pass


def _check_degree(exp: tuple[int, ...], limit: int) -> None:
    for name, e in zip(VARIABLES, exp):
        if e > limit:
            raise DegreeError(f"degree {e} in {name} exceeds guard {limit}")


class FormalPoly:
    __slots__ = ("ring", "terms", "max_degree")

    def __init__(self, ring: RingSpec, terms: Mapping[tuple[int, ...], QInt] | None = None,
                 max_degree: int = MAX_DEGREE):
        self.ring = ring
        self.max_degree = max_degree
        self.terms = {}
        for exp, c in (terms or {}).items():
            if c:
                _check_degree(exp, max_degree)
                self.terms[exp] = c

    @classmethod
    def var(cls, ring: RingSpec, name: str) -> FormalPoly:
        exp = [0] * len(VARIABLES)
        exp[_INDEX[name]] = 1
        return cls(ring, {tuple(exp): ring.one})

    @classmethod
    def const(cls, ring: RingSpec, c: QInt | int) -> FormalPoly:
        if isinstance(c, int):
            c = ring(c)
        return cls(ring, {_ZERO_EXP: c})

    def _lift(self, other) -> FormalPoly:
        if isinstance(other, FormalPoly):
            if other.ring.D != self.ring.D:
                raise RingError("mixed rings in polynomial arithmetic")
            return other
        if isinstance(other, (int, QInt)):
            return FormalPoly.const(self.ring, other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        terms = dict(self.terms)
        for exp, c in o.terms.items():
            terms[exp] = terms[exp] + c if exp in terms else c
        return FormalPoly(self.ring, terms, self.max_degree)

    __radd__ = __add__

    def __neg__(self) -> FormalPoly:
        return FormalPoly(self.ring, {e: -c for e, c in self.terms.items()}, self.max_degree)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        terms: dict[tuple[int, ...], QInt] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                exp = tuple(i + j for i, j in zip(e1, e2))
                c = c1 * c2
                terms[exp] = terms[exp] + c if exp in terms else c
        return FormalPoly(self.ring, terms, self.max_degree)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> FormalPoly:
        result = FormalPoly.const(self.ring, 1)
        result.max_degree = self.max_degree
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.terms == o.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self, name: str) -> int:
        i = _INDEX[name]
        return max((e[i] for e in self.terms), default=0)

    def variables(self) -> set[str]:
        return {VARIABLES[i] for e in self.terms for i, k in enumerate(e) if k}

    def substitute(self, bindings: Mapping[str, FormalPoly | QInt | int]) -> FormalPoly:
        """Replace variables by polynomials; unbound variables are kept."""
        images = []
        for name in VARIABLES:
            if name in bindings:
                images.append(self._lift(bindings[name]))
            else:
                images.append(FormalPoly.var(self.ring, name))
        powers: dict[tuple[int, int], FormalPoly] = {}
        result = FormalPoly(self.ring, max_degree=self.max_degree)
        for exp, c in self.terms.items():
            term = FormalPoly.const(self.ring, c)
            term.max_degree = self.max_degree
            for i, k in enumerate(exp):
                if k:
                    if (i, k) not in powers:
                        powers[(i, k)] = images[i] ** k
                    term = term * powers[(i, k)]
            result = result + term
        return result

    def eval(self, point: Mapping[str, QInt | int]) -> QInt:
        total = self.ring.zero
        for exp, c in self.terms.items():
            value = c
            for i, k in enumerate(exp):
                if k:
                    name = VARIABLES[i]
                    if name not in point:
                        raise KeyError(f"no value bound for variable {name}")
                    value = value * (point[name] ** k if isinstance(point[name], QInt)
                                     else self.ring(point[name] ** k))
            total = total + value
        return total

    def __repr__(self) -> str:
        return f"FormalPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp in sorted(self.terms, reverse=True):
            mono = "*".join(
                VARIABLES[i] + (f"^{k}" if k > 1 else "") for i, k in enumerate(exp) if k
            )
            c = self.terms[exp]
            if not mono:
                parts.append(f"({c})")
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)


def poly_vars(ring: RingSpec, names: str = "".join(VARIABLES)) -> tuple[FormalPoly, ...]:
    """``T, P, Q = poly_vars(ring, "TPQ")``."""
    return tuple(FormalPoly.var(ring, n) for n in names)


def is_zero(p: FormalPoly) -> bool:
    return p.is_zero()
