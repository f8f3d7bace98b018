"""Exact arithmetic for Novikov polynomials with rational exponents.

Two rings live here.  ``NovikovPoly`` is the unital ring of finite integer
combinations of powers t^a with a rational; its ideal of elements vanishing
at t=1 is the set of polynomials with coefficient sum zero.  ``DoubleExpPoly``
is the non-unital ring generated by symbols s^{a,b} (a < b) subject to
s^{a,b} + s^{b,c} = s^{a,c}, kept in the unique maximally-merged
disjoint-interval normal form so that equality is decidable.

All exponents are ``fractions.Fraction``; nothing here is approximate.
"""

from __future__ import annotations

from fractions import Fraction
from math import floor
from typing import Iterable, Mapping, Tuple, Union

from .errors import DomainError, InputError

Exponent = Fraction
ExponentLike = Union[Fraction, int, str]


def as_exponent(x: ExponentLike) -> Fraction:
    """Coerce ints, Fractions and 'num/den' strings to an exact exponent."""
    if isinstance(x, bool):
        raise InputError(f"not an exponent: {x!r}")
    if isinstance(x, (Fraction, int)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"bad exponent string {x!r}") from e
    raise InputError(f"not an exponent: {x!r}")


def format_exponent(x: Fraction) -> str:
    return str(Fraction(x))


class NovikovPoly:
    """Finite integer combination of powers t^a, a rational, in canonical form."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping[Fraction, int], Iterable[Tuple[ExponentLike, int]], None] = None):
        acc: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for exp, coeff in items:
                e = as_exponent(exp)
                c = acc.get(e, 0) + int(coeff)
                if c:
                    acc[e] = c
                elif e in acc:
                    del acc[e]
        self._terms = acc

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "NovikovPoly":
        return cls()

    @classmethod
    def one(cls) -> "NovikovPoly":
        return cls.monomial(0)

    @classmethod
    def monomial(cls, exponent: ExponentLike, coeff: int = 1) -> "NovikovPoly":
        return cls([(exponent, coeff)])

    # -- canonical views ---------------------------------------------------

    def terms(self) -> Tuple[Tuple[Fraction, int], ...]:
        """Term list sorted by increasing exponent."""
        return tuple(sorted(self._terms.items()))

    def exponents(self) -> Tuple[Fraction, ...]:
        return tuple(sorted(self._terms))

    def coeff(self, exponent: ExponentLike) -> int:
        return self._terms.get(as_exponent(exponent), 0)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NovikovPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self.terms())

    # -- ring structure ----------------------------------------------------

    def __add__(self, other: "NovikovPoly") -> "NovikovPoly":
        acc = dict(self._terms)
        for e, c in other._terms.items():
            s = acc.get(e, 0) + c
            if s:
                acc[e] = s
            elif e in acc:
                del acc[e]
        out = NovikovPoly.__new__(NovikovPoly)
        out._terms = acc
        return out

    def __neg__(self) -> "NovikovPoly":
        out = NovikovPoly.__new__(NovikovPoly)
        out._terms = {e: -c for e, c in self._terms.items()}
        return out

    def __sub__(self, other: "NovikovPoly") -> "NovikovPoly":
        return self + (-other)

    def __mul__(self, other) -> "NovikovPoly":
        if isinstance(other, int):
            if other == 0:
                return NovikovPoly.zero()
            out = NovikovPoly.__new__(NovikovPoly)
            out._terms = {e: c * other for e, c in self._terms.items()}
            return out
        if not isinstance(other, NovikovPoly):
            return NotImplemented
        acc: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                s = acc.get(e, 0) + c1 * c2
                if s:
                    acc[e] = s
                elif e in acc:
                    del acc[e]
        out = NovikovPoly.__new__(NovikovPoly)
        out._terms = acc
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "NovikovPoly":
        if n < 0:
            raise DomainError("negative powers are not defined in the polynomial ring")
        out = NovikovPoly.one()
        for _ in range(n):
            out = out * self
        return out

    # -- measurements ------------------------------------------------------

    def eval_at_one(self) -> int:
        """Coefficient sum, i.e. the value P(1)."""
        return sum(self._terms.values())

    def length(self) -> Fraction:
        """-P'(1): for t^a - t^b this is b - a, the bar length."""
        return -sum((c * e for e, c in self._terms.items()), Fraction(0))

    def project_zero(self) -> "NovikovPoly":
        """P(t) - P(1) t^0, the retraction onto the coefficient-sum-zero ideal."""
        return self - NovikovPoly.monomial(0, self.eval_at_one())

    def invert_variable(self) -> "NovikovPoly":
        """The substitution t -> t^{-1}."""
        out = NovikovPoly.__new__(NovikovPoly)
        out._terms = {-e: c for e, c in self._terms.items()}
        return out

    def gap(self) -> Fraction:
        """Minimal positive-side spacing between consecutive exponents.

        Over consecutive exponent pairs (a_i, a_{i+1}) with a_{i+1} >= 0 this
        is the least a_{i+1} - max(a_i, 0); it is 0 when no such pair exists.
        """
        exps = self.exponents()
        candidates = [exps[i + 1] - max(exps[i], Fraction(0))
                      for i in range(len(exps) - 1) if exps[i + 1] >= 0]
        return min(candidates) if candidates else Fraction(0)

    def positive_mass(self) -> int:
        """Total absolute coefficient mass over strictly positive exponents."""
        return sum(abs(c) for e, c in self._terms.items() if e > 0)

    def is_constant(self) -> bool:
        """True when supported at exponent 0 only (the zero polynomial counts)."""
        return all(e == 0 for e in self._terms)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> list:
        return [{"coeff": c, "exp": format_exponent(e)} for e, c in self.terms()]

    @classmethod
    def from_json(cls, data) -> "NovikovPoly":
        if not isinstance(data, list):
            raise InputError("Novikov polynomial JSON must be a list of terms")
        pairs = []
        for item in data:
            if not isinstance(item, dict) or "coeff" not in item or "exp" not in item:
                raise InputError(f"bad Novikov term {item!r}")
            if not isinstance(item["coeff"], int):
                raise InputError(f"coefficient must be an integer: {item!r}")
            pairs.append((as_exponent(item["exp"]), item["coeff"]))
        return cls(pairs)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.terms():
            mag = f"t^({format_exponent(e)})" if abs(c) == 1 else f"{abs(c)}*t^({format_exponent(e)})"
            if not parts:
                parts.append(("-" if c < 0 else "") + mag)
            else:
                parts.append(("- " if c < 0 else "+ ") + mag)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"NovikovPoly({self.terms()!r})"


class DoubleExpPoly:
    """Integer combination of symbols s^{a,b}, a < b, in normal form.

    The relations s^{a,b} + s^{b,c} = s^{a,c} identify an element with the
    compactly supported step function sum n_k 1_{[a_k,b_k)}; the stored
    normal form lists the maximal constancy intervals of that function, so
    two elements are equal iff their term tuples coincide.
    """

    __slots__ = ("_terms",)

    def __init__(self, raw: Iterable[Tuple[ExponentLike, ExponentLike, int]] = ()):
        jumps: dict = {}
        for a, b, n in raw:
            a, b = as_exponent(a), as_exponent(b)
            if a >= b:
                raise DomainError(f"interval exponents must satisfy a < b, got ({a}, {b})")
            n = int(n)
            if n == 0:
                continue
            jumps[a] = jumps.get(a, 0) + n
            jumps[b] = jumps.get(b, 0) - n
        points = sorted(p for p, j in jumps.items() if j)
        terms = []
        level = 0
        for i, p in enumerate(points):
            level += jumps[p]
            if level:
                terms.append((p, points[i + 1], level))
        # level returns to 0 at the last point since the jumps cancel in total
        self._terms = tuple(terms)

    @classmethod
    def zero(cls) -> "DoubleExpPoly":
        return cls()

    @classmethod
    def generator(cls, a: ExponentLike, b: ExponentLike, n: int = 1) -> "DoubleExpPoly":
        """The single symbol n * s^{a,b}."""
        return cls([(a, b, n)])

    def terms(self) -> Tuple[Tuple[Fraction, Fraction, int], ...]:
        return self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DoubleExpPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __add__(self, other: "DoubleExpPoly") -> "DoubleExpPoly":
        return DoubleExpPoly(self._terms + other._terms)

    def __neg__(self) -> "DoubleExpPoly":
        return DoubleExpPoly(tuple((a, b, -n) for a, b, n in self._terms))

    def __sub__(self, other: "DoubleExpPoly") -> "DoubleExpPoly":
        return self + (-other)

    def __mul__(self, other) -> "DoubleExpPoly":
        if isinstance(other, int):
            return DoubleExpPoly(tuple((a, b, n * other) for a, b, n in self._terms))
        if not isinstance(other, DoubleExpPoly):
            return NotImplemented
        # s^{a,b} * s^{c,d} = s^{a+c,a+d} - s^{b+c,b+d}
        raw = []
        for a, b, n in self._terms:
            for c, d, m in other._terms:
                raw.append((a + c, a + d, n * m))
                raw.append((b + c, b + d, -n * m))
        return DoubleExpPoly(raw)

    __rmul__ = __mul__

    def sigma(self) -> NovikovPoly:
        """The isomorphism onto the coefficient-sum-zero ideal: s^{a,b} -> t^a - t^b."""
        pairs = []
        for a, b, n in self._terms:
            pairs.append((a, n))
            pairs.append((b, -n))
        return NovikovPoly(pairs)

    def to_json(self) -> list:
        return [{"a": format_exponent(a), "b": format_exponent(b), "n": n}
                for a, b, n in self._terms]

    @classmethod
    def from_json(cls, data) -> "DoubleExpPoly":
        if not isinstance(data, list):
            raise InputError("double-exponent polynomial JSON must be a list")
        raw = []
        for item in data:
            if not isinstance(item, dict) or not {"a", "b", "n"} <= set(item):
                raise InputError(f"bad double-exponent term {item!r}")
            if not isinstance(item["n"], int):
                raise InputError(f"coefficient must be an integer: {item!r}")
            raw.append((as_exponent(item["a"]), as_exponent(item["b"]), item["n"]))
        return cls(raw)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for a, b, n in self._terms:
            mag = f"s^({format_exponent(a)},{format_exponent(b)})"
            if abs(n) != 1:
                mag = f"{abs(n)}*" + mag
            if not parts:
                parts.append(("-" if n < 0 else "") + mag)
            else:
                parts.append(("- " if n < 0 else "+ ") + mag)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"DoubleExpPoly({self._terms!r})"


def sigma_inverse(p: NovikovPoly) -> DoubleExpPoly:
    """Inverse of ``DoubleExpPoly.sigma`` on the coefficient-sum-zero ideal.

    Writing p with increasing exponents a_1 < ... < a_m, the prefix sums
    c_i = n_1 + ... + n_i telescope: p = sum_i c_i (t^{a_i} - t^{a_{i+1}}).
    """
    if p.eval_at_one() != 0:
        raise DomainError("sigma_inverse requires coefficient sum zero (P(1) = 0)")
    items = p.terms()
    raw = []
    running = 0
    for i in range(len(items) - 1):
        running += items[i][1]
        if running:
            raw.append((items[i][0], items[i + 1][0], running))
    return DoubleExpPoly(raw)


def qr_tilde(p: NovikovPoly, r: ExponentLike) -> DoubleExpPoly:
    """Acyclic-truncation map on polynomials: t^a -> s^{a, a+r}, r > 0."""
    r = as_exponent(r)
    if r <= 0:
        raise DomainError("qr_tilde requires r > 0")
    return DoubleExpPoly([(e, e + r, c) for e, c in p.terms()])


def in_image_qr(p: NovikovPoly, r: ExponentLike) -> bool:
    """Whether p = q * (t^0 - t^r) for some polynomial q.

    Criterion: within each residue class of exponents mod r the coefficients
    must sum to zero.
    """
    r = as_exponent(r)
    if r <= 0:
        raise DomainError("in_image_qr requires r > 0")
    sums: dict = {}
    for e, c in p.terms():
        key = e - floor(e / r) * r
        sums[key] = sums.get(key, 0) + c
    return all(v == 0 for v in sums.values())
