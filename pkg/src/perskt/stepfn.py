"""Bounded integer step functions and the convolution-derivative product.

A ``StepFn`` is stored as its jump list: value at x is the sum of jumps at
positions <= x (so the indicator of [a, infinity) jumps at a and takes the
value 1 there).  The ring product is transported from polynomial
multiplication through ``theta``; an independent piecewise implementation of
the same product, following the closed convolution formulas on indicators,
is kept alongside as a verification oracle.
"""

from __future__ import annotations

from fractions import Fraction
from math import inf as INF
from typing import Iterable, List, Tuple, Union

from .errors import DomainError, InputError
from .novikov import ExponentLike, NovikovPoly, as_exponent, format_exponent

class StepFn:
    """Integer step function vanishing near -infinity, canonical jump list."""

    __slots__ = ("_jumps",)

    def __init__(self, jumps: Iterable[Tuple[ExponentLike, int]] = ()):
        acc: dict = {}
        for pos, jump in jumps:
            p = as_exponent(pos)
            j = acc.get(p, 0) + int(jump)
            if j:
                acc[p] = j
            elif p in acc:
                del acc[p]
        self._jumps = tuple(sorted(acc.items()))

    @classmethod
    def zero(cls) -> "StepFn":
        return cls()

    @classmethod
    def indicator(cls, a: ExponentLike, b: Union[ExponentLike, float] = INF) -> "StepFn":
        """1 on [a, b), 0 elsewhere; b may be INF."""
        a = as_exponent(a)
        if b == INF:
            return cls([(a, 1)])
        b = as_exponent(b)
        if a >= b:
            raise DomainError(f"indicator needs a < b, got [{a}, {b})")
        return cls([(a, 1), (b, -1)])

    def jumps(self) -> Tuple[Tuple[Fraction, int], ...]:
        return self._jumps

    def __bool__(self) -> bool:
        return bool(self._jumps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, StepFn):
            return NotImplemented
        return self._jumps == other._jumps

    def __hash__(self) -> int:
        return hash(self._jumps)

    def __add__(self, other: "StepFn") -> "StepFn":
        return StepFn(self._jumps + other._jumps)

    def __neg__(self) -> "StepFn":
        return StepFn(tuple((p, -j) for p, j in self._jumps))

    def __sub__(self, other: "StepFn") -> "StepFn":
        return self + (-other)

    def __mul__(self, other: int) -> "StepFn":
        if not isinstance(other, int):
            return NotImplemented
        return StepFn(tuple((p, j * other) for p, j in self._jumps))

    __rmul__ = __mul__

    def value(self, x: ExponentLike) -> int:
        x = as_exponent(x)
        return sum(j for p, j in self._jumps if p <= x)

    def value_at_inf(self) -> int:
        return sum(j for _, j in self._jumps)

    def pieces(self) -> List[Tuple[Fraction, Union[Fraction, float], int]]:
        """Maximal constancy intervals with nonzero value, as (start, end, value)."""
        out = []
        level = 0
        for i, (p, j) in enumerate(self._jumps):
            level += j
            if level:
                end = self._jumps[i + 1][0] if i + 1 < len(self._jumps) else INF
                out.append((p, end, level))
        return out

    def is_nonneg_nondecreasing(self) -> Tuple[bool, bool]:
        """(all values >= 0, all jumps >= 0)."""
        nonneg = True
        level = 0
        for _, j in self._jumps:
            level += j
            if level < 0:
                nonneg = False
        return nonneg, all(j >= 0 for _, j in self._jumps)

    def to_json(self) -> list:
        return [{"pos": format_exponent(p), "jump": j} for p, j in self._jumps]

    @classmethod
    def from_json(cls, data) -> "StepFn":
        if not isinstance(data, list):
            raise InputError("step function JSON must be a list of jumps")
        jumps = []
        for item in data:
            if not isinstance(item, dict) or not {"pos", "jump"} <= set(item):
                raise InputError(f"bad jump {item!r}")
            if not isinstance(item["jump"], int):
                raise InputError(f"jump must be an integer: {item!r}")
            jumps.append((as_exponent(item["pos"]), item["jump"]))
        return cls(jumps)

    def __str__(self) -> str:
        if not self._jumps:
            return "0 everywhere"
        lines = [f"0 on (-inf, {format_exponent(self._jumps[0][0])})"]
        level = 0
        for i, (p, j) in enumerate(self._jumps):
            level += j
            end = format_exponent(self._jumps[i + 1][0]) if i + 1 < len(self._jumps) else "inf"
            lines.append(f"{level} on [{format_exponent(p)}, {end})")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"StepFn({self._jumps!r})"


def theta(p: NovikovPoly) -> StepFn:
    """Ring isomorphism onto step functions: t^a -> indicator of [a, infinity)."""
    return StepFn(p.terms())


def theta_inverse(s: StepFn) -> NovikovPoly:
    return NovikovPoly(s.jumps())


def convolve(s1: StepFn, s2: StepFn) -> StepFn:
    """The product D(s1 * s2), computed by transport through theta."""
    return theta(theta_inverse(s1) * theta_inverse(s2))


def convolve_piecewise(s1: StepFn, s2: StepFn) -> StepFn:
    """Independent implementation of ``convolve`` via the indicator formulas.

    Decomposes both factors into indicators of their maximal constancy
    intervals and applies, per pair, the closed forms

        1_[a,b) o 1_[c,d) = 1_[a+c, min(b+c,a+d)) - 1_[max(b+c,a+d), b+d)
        1_[a,oo) o 1_[c,oo) = 1_[a+c, oo)
        1_[a,oo) o 1_[c,d)  = 1_[a+c, a+d)
    """
    jumps: dict = {}

    def bump(pos: Fraction, amount: int) -> None:
        jumps[pos] = jumps.get(pos, 0) + amount

    for a, b, m in s1.pieces():
        for c, d, n in s2.pieces():
            w = m * n
            if b == INF and d == INF:
                bump(a + c, w)
            elif b == INF:
                bump(a + c, w)
                bump(a + d, -w)
            elif d == INF:
                bump(c + a, w)
                bump(c + b, -w)
            else:
                lo, hi = min(b + c, a + d), max(b + c, a + d)
                if a + c != lo:
                    bump(a + c, w)
                    bump(lo, -w)
                if hi != b + d:
                    bump(hi, -w)
                    bump(b + d, w)
    return StepFn(jumps.items())


def length(s: StepFn) -> Fraction:
    """Integral of s - s(inf) * 1_[0,inf); the integrand has compact support."""
    adjusted = s - StepFn.indicator(0) * s.value_at_inf()
    total = Fraction(0)
    for start, end, value in adjusted.pieces():
        if end == INF:
            raise AssertionError("adjusted integrand must have compact support")
        total += value * (end - start)
    return total


def weighted_length(s: StepFn, h: StepFn) -> Fraction:
    """Integral of h * (s - s(inf) * 1_[0,inf)), exact for step-function weights."""
    adjusted = s - StepFn.indicator(0) * s.value_at_inf()
    total = Fraction(0)
    for start, end, value in adjusted.pieces():
        if end == INF:
            raise AssertionError("adjusted integrand must have compact support")
        # split on the weight's breakpoints inside [start, end)
        cuts = [start] + [p for p, _ in h.jumps() if start < p < end] + [end]
        for lo, hi in zip(cuts, cuts[1:]):
            total += h.value(lo) * value * (hi - lo)
    return total


def l1_distance(s1: StepFn, s2: StepFn) -> Union[Fraction, float]:
    """Integral of |s1 - s2|; INF when the values at +infinity differ."""
    diff = s1 - s2
    if diff.value_at_inf() != 0:
        return INF
    total = Fraction(0)
    for start, end, value in diff.pieces():
        total += abs(value) * (end - start)
    return total
