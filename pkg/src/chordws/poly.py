"""Exact polynomials with rational coefficients in the two variables ``c`` and ``y``.

Coefficients are :class:`fractions.Fraction`, so arithmetic never rounds and
integers are unbounded.  ``Q[c]`` is the subring with no ``y``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Tuple, Union

from .errors import DegreeOverflow, DuplicateNode, ParseError

Exponent = Tuple[int, int]
Scalar = Union[int, Fraction]

__all__ = [
    "MultiPoly",
    "ZERO",
    "ONE",
    "C",
    "Y",
    "add",
    "mul",
    "interpolate_in_c",
    "is_quasihomogeneous",
]


class MultiPoly:
    """Immutable polynomial in ``c`` and ``y``.

    ``terms`` maps ``(deg_c, deg_y)`` to a nonzero Fraction.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, Scalar] | None = None):
        clean = {}
        if terms:
            for (dc, dy), coef in terms.items():
                if dc < 0 or dy < 0:
                    raise ValueError(f"negative exponent {(dc, dy)}")
                coef = Fraction(coef)
                if coef:
                    clean[(int(dc), int(dy))] = coef
        self._terms = clean
        self._hash = None

    @classmethod
    def const(cls, value: Scalar) -> "MultiPoly":
        return cls({(0, 0): value})

    @classmethod
    def monomial(cls, deg_c: int = 0, deg_y: int = 0, coef: Scalar = 1) -> "MultiPoly":
        return cls({(deg_c, deg_y): coef})

    @classmethod
    def _coerce(cls, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return cls.const(other)
        return NotImplemented

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), reverse=True)

    def coefficient(self, deg_c: int, deg_y: int = 0) -> Fraction:
        return self._terms.get((deg_c, deg_y), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def degree_c(self) -> int:
        """Degree in ``c``; -1 for the zero polynomial."""
        return max((dc for dc, _ in self._terms), default=-1)

    def total_weight(self) -> int:
        return max((dc + 2 * dy for dc, dy in self._terms), default=-1)

    def is_in_c_only(self) -> bool:
        return all(dy == 0 for _, dy in self._terms)

    def leading_coefficient_c(self) -> Fraction:
        """Coefficient of the highest power of ``c`` among y-free terms."""
        d = self.degree_c()
        return self._terms.get((d, 0), Fraction(0))

    def evaluate(self, c: Scalar = 0, y: Scalar = 0) -> Fraction:
        c, y = Fraction(c), Fraction(y)
        return sum((coef * c**dc * y**dy for (dc, dy), coef in self._terms.items()), Fraction(0))

    def __eq__(self, other):
        other = MultiPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other):
        other = MultiPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for e, coef in other._terms.items():
            out[e] = out.get(e, 0) + coef
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({e: -coef for e, coef in self._terms.items()})

    def __sub__(self, other):
        other = MultiPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = MultiPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for (a1, b1), x in self._terms.items():
            for (a2, b2), z in other._terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + x * z
        return MultiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, factor: Scalar) -> "MultiPoly":
        factor = Fraction(factor)
        return MultiPoly({e: coef * factor for e, coef in self._terms.items()})

    def __repr__(self):
        return f"MultiPoly({str(self)!r})"

    def __str__(self):
        return to_text(self)

    def to_json(self) -> dict:
        return {
            "terms": [
                {"c": dc, "y": dy, "num": str(coef.numerator), "den": str(coef.denominator)}
                for (dc, dy), coef in self.items()
            ]
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "MultiPoly":
        return cls({(t["c"], t["y"]): Fraction(int(t["num"]), int(t["den"])) for t in data["terms"]})


ZERO = MultiPoly()
ONE = MultiPoly.const(1)
C = MultiPoly.monomial(1, 0)
Y = MultiPoly.monomial(0, 1)


def add(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return p + q


def mul(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return p * q


def _monomial_text(dc: int, dy: int) -> str:
    parts = []
    if dc:
        parts.append("c" if dc == 1 else f"c^{dc}")
    if dy:
        parts.append("y" if dy == 1 else f"y^{dy}")
    return "*".join(parts)


def _coef_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def to_text(p: MultiPoly) -> str:
    """Canonical text: terms by ``(deg_c, deg_y)`` descending, e.g. ``c^2 - 1/2*c``."""
    if p.is_zero():
        return "0"
    out = []
    for i, ((dc, dy), coef) in enumerate(p.items()):
        sign = "-" if coef < 0 else "+"
        mag = abs(coef)
        mono = _monomial_text(dc, dy)
        if not mono:
            body = _coef_text(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_coef_text(mag)}*{mono}"
        if i == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f"{sign} {body}")
    return " ".join(out)


_TERM_RE = re.compile(r"([+-]?)([^+-]+)")
_FACTOR_RE = re.compile(r"^(?:(\d+)(?:/(\d+))?|([cy])(?:\^(\d+))?)$")


def parse(text: str) -> MultiPoly:
    """Parse the text produced by :func:`to_text` (and mild variations of it)."""
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty polynomial text")
    pos, terms = 0, {}
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse polynomial {text!r}")
        pos = m.end()
        coef, dc, dy = Fraction(-1 if m.group(1) == "-" else 1), 0, 0
        for factor in m.group(2).split("*"):
            fm = _FACTOR_RE.match(factor)
            if not fm:
                raise ParseError(f"bad factor {factor!r} in {text!r}")
            if fm.group(1) is not None:
                coef *= Fraction(int(fm.group(1)), int(fm.group(2) or 1))
            elif fm.group(3) == "c":
                dc += int(fm.group(4) or 1)
            else:
                dy += int(fm.group(4) or 1)
        terms[(dc, dy)] = terms.get((dc, dy), 0) + coef
    return MultiPoly(terms)


def interpolate_in_c(points: Sequence[Tuple[Scalar, Scalar]], max_degree: int) -> MultiPoly:
    """Exact Lagrange interpolation in ``c``.

    The first ``max_degree + 1`` points determine the polynomial; every further
    point must lie on it, otherwise :class:`DegreeOverflow` is raised.
    """
    pts = [(Fraction(x), Fraction(v)) for x, v in points]
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise DuplicateNode("interpolation nodes must be pairwise distinct")
    if len(pts) < max_degree + 1:
        raise ValueError(f"need at least {max_degree + 1} points, got {len(pts)}")
    base = pts[: max_degree + 1]
    coeffs = [Fraction(0)] * (max_degree + 1)
    for i, (xi, vi) in enumerate(base):
        # basis polynomial prod_{j != i} (c - xj) / (xi - xj), built low degree first
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(base):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        scale = vi / denom
        for k, b in enumerate(basis):
            coeffs[k] += scale * b
    poly = MultiPoly({(k, 0): a for k, a in enumerate(coeffs)})
    for x, v in pts[max_degree + 1 :]:
        if poly.evaluate(x) != v:
            raise DegreeOverflow(f"point ({x}, {v}) does not lie on the degree-{max_degree} interpolant")
    return poly


def is_quasihomogeneous(p: MultiPoly, degree: int) -> bool:
    """True iff every term has weight ``deg_c + 2*deg_y == degree``."""
    return all(dc + 2 * dy == degree for dc, dy in p.terms)


def from_c_coefficients(coeffs: Iterable[Scalar]) -> MultiPoly:
    return MultiPoly({(k, 0): a for k, a in enumerate(coeffs)})
