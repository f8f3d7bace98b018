"""K-classes of filtered complexes and the Euler-type pairing.

The class of a complex is the Novikov polynomial of its homology barcode.
The pairing comes in three realizations that must agree where they overlap:
a closed formula P(t^{-1})Q(t) on classes, a direct computation through the
filtered hom complex, and a bilinear evaluation against a table of generator
data (used to reproduce geometric examples without their ambient setup).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import inf as INF
from typing import Dict, Iterable, Tuple

from .errors import DomainError, InputError
from .novikov import ExponentLike, NovikovPoly, as_exponent
from .fcomplex import FieldSpec, FilteredChainMap, FilteredComplex, hom_complex
from .barcode import GradedBarcode, decompose

KClass = NovikovPoly


def kclass(c: FilteredComplex) -> NovikovPoly:
    """The class of a complex: lambda of its homology barcode."""
    return decompose(c).lambda_poly()


def euler_alpha(c: FilteredComplex, alpha: ExponentLike) -> int:
    """Euler characteristic of the truncation at level alpha."""
    alpha = as_exponent(alpha)
    total = 0
    for degree, dim in c.dims_by_degree(alpha).items():
        total += -dim if degree % 2 else dim
    return total


def is_r_acyclic(c: FilteredComplex, r: ExponentLike) -> bool:
    """No infinite bars and every finite bar of length at most r."""
    r = as_exponent(r)
    if r < 0:
        raise DomainError("acyclicity threshold must be >= 0")
    for _, birth, death, _ in decompose(c).bars():
        if death == INF or death - birth > r:
            return False
    return True


def is_r_isomorphism(f: FilteredChainMap, r: ExponentLike) -> bool:
    """A map is an r-isomorphism iff its cone is r-acyclic."""
    return is_r_acyclic(f.cone(), r)


def kappa_formula(p: NovikovPoly, q: NovikovPoly) -> NovikovPoly:
    """kappa(P, Q)(t) = P(t^{-1}) Q(t)."""
    return p.invert_variable() * q


def kappa_direct(c1: FilteredComplex, c2: FilteredComplex) -> NovikovPoly:
    """The pairing through the filtered hom complex; agrees with the formula."""
    return kclass(hom_complex(c1, c2))


def kq_r(p: NovikovPoly, r: ExponentLike) -> NovikovPoly:
    """Acyclic truncation on classes: multiplication by (1 - t^r)."""
    r = as_exponent(r)
    if r < 0:
        raise DomainError("kq_r requires r >= 0")
    return p * (NovikovPoly.one() - NovikovPoly.monomial(r))


# -- pairing tables ------------------------------------------------------------


@dataclass(frozen=True)
class TableGenerator:
    name: str
    kclass: NovikovPoly
    euler: int


class PairingTable:
    """Generator classes plus hom barcodes, validated for self-consistency.

    Diagonal hom data must be the constant (-1)^n * euler; off-diagonal data
    present in both orders must satisfy the duality
    lambda_{hom(A,B)}(t) = (-1)^n lambda_{hom(B,A)}(t^{-1}).
    """

    def __init__(self, dimension: int, generators: Iterable[TableGenerator],
                 hom: Dict[Tuple[str, str], GradedBarcode]):
        self.dimension = int(dimension)
        gen_list = list(generators)
        self.generators = {g.name: g for g in gen_list}
        if len(self.generators) != len(gen_list):
            raise DomainError("duplicate generator names")
        self.hom = dict(hom)
        self._validate()

    def _sign(self) -> int:
        return -1 if self.dimension % 2 else 1

    def _validate(self) -> None:
        for (a, b), barcode in self.hom.items():
            if a not in self.generators or b not in self.generators:
                raise DomainError(f"hom entry ({a!r}, {b!r}) names an unknown generator")
            if a == b:
                expected = NovikovPoly.monomial(0, self._sign() * self.generators[a].euler)
                if barcode.lambda_poly() != expected:
                    raise DomainError(
                        f"diagonal hom entry for {a!r} is not the constant (-1)^n * euler")
        for (a, b) in self.hom:
            if a != b and (b, a) in self.hom:
                lhs = self.hom[(a, b)].lambda_poly()
                rhs = self.hom[(b, a)].lambda_poly().invert_variable() * self._sign()
                if lhs != rhs:
                    raise DomainError(f"hom entries ({a!r}, {b!r}) violate duality")

    def base_pairing(self, a: str, b: str) -> NovikovPoly:
        if a not in self.generators or b not in self.generators:
            raise DomainError(f"unknown generator in pairing: {a!r}, {b!r}")
        if (a, b) in self.hom:
            return self.hom[(a, b)].lambda_poly()
        if (b, a) in self.hom:
            return self.hom[(b, a)].lambda_poly().invert_variable() * self._sign()
        if a == b:
            return NovikovPoly.monomial(0, self._sign() * self.generators[a].euler)
        raise DomainError(f"no hom data for pair ({a!r}, {b!r})")

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "generators": [{"name": g.name, "kclass": g.kclass.to_json(), "euler": g.euler}
                           for g in self.generators.values()],
            "hom": [{"from": a, "to": b, "barcode": bc.to_json()}
                    for (a, b), bc in sorted(self.hom.items())],
        }

    @classmethod
    def from_json(cls, data) -> "PairingTable":
        if not isinstance(data, dict) or not {"dimension", "generators"} <= set(data):
            raise InputError("pairing table JSON needs 'dimension' and 'generators'")
        gens = []
        for item in data["generators"]:
            if not isinstance(item, dict) or not {"name", "kclass", "euler"} <= set(item):
                raise InputError(f"bad table generator {item!r}")
            gens.append(TableGenerator(str(item["name"]),
                                       NovikovPoly.from_json(item["kclass"]),
                                       int(item["euler"])))
        hom = {}
        for item in data.get("hom", ()):
            if not isinstance(item, dict) or not {"from", "to", "barcode"} <= set(item):
                raise InputError(f"bad hom entry {item!r}")
            hom[(str(item["from"]), str(item["to"]))] = GradedBarcode.from_json(item["barcode"])
        return cls(int(data["dimension"]), gens, hom)


@dataclass(frozen=True)
class CombinationTerm:
    name: str
    coeff: int = 1
    shift: Fraction = Fraction(0)
    translation: int = 0


class Combination:
    """Integer combination of shifted, translated table generators."""

    def __init__(self, terms: Iterable[CombinationTerm]):
        self.terms = tuple(terms)

    _TOKEN = re.compile(r"""
        \s*(?:
          (?P<sign>[+-])
        | (?P<shift>t\^(?:\{(?P<sfrac>-?\d+(?:/\d+)?)\}|\((?P<pfrac>-?\d+(?:/\d+)?)\)|(?P<bfrac>-?\d+(?:/\d+)?)))
        | (?P<transl>T\^(?P<tpow>-?\d+))
        | (?P<coeff>\d+)
        | (?P<star>\*)
        | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
        )""", re.VERBOSE)

    @classmethod
    def parse(cls, text: str) -> "Combination":
        """Parse expressions like ``-Z0+Y``, ``t^{1/2}*L``, ``2*T^2 L``."""
        pos = 0
        terms = []
        sign = 1
        coeff = None
        shift = Fraction(0)
        translation = 0
        pending = False

        def flush(name: str) -> None:
            nonlocal sign, coeff, shift, translation, pending
            terms.append(CombinationTerm(name, sign * (1 if coeff is None else coeff),
                                         shift, translation))
            sign, coeff, shift, translation, pending = 1, None, Fraction(0), 0, False

        while pos < len(text):
            m = cls._TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise InputError(f"cannot parse combination at {text[pos:]!r}")
            pos = m.end()
            if m.group("sign"):
                if pending:
                    raise InputError(f"dangling term before {m.group('sign')!r} in {text!r}")
                sign = 1 if m.group("sign") == "+" else -1
                pending = True
            elif m.group("shift"):
                frac = m.group("sfrac") or m.group("pfrac") or m.group("bfrac")
                shift += Fraction(frac)
                pending = True
            elif m.group("transl"):
                translation += int(m.group("tpow"))
                pending = True
            elif m.group("coeff"):
                coeff = (coeff or 1) * int(m.group("coeff"))
                pending = True
            elif m.group("name"):
                flush(m.group("name"))
        if pending:
            raise InputError(f"combination {text!r} ends without a generator name")
        if not terms:
            raise InputError("empty combination")
        return cls(terms)

    def __str__(self) -> str:
        parts = []
        for t in self.terms:
            body = t.name
            if t.translation:
                body = f"T^{t.translation} {body}"
            if t.shift:
                body = f"t^{{{t.shift}}}*{body}"
            if abs(t.coeff) != 1:
                body = f"{abs(t.coeff)}*{body}"
            parts.append(("- " if t.coeff < 0 else ("+ " if parts else "")) + body)
        return " ".join(parts) if parts else "0"


def kappa_table(table: PairingTable, x: Combination, y: Combination) -> NovikovPoly:
    """Bilinear pairing of combinations against the table.

    Shifts act by t^{-r} on the left slot and t^{r} on the right; each
    translation unit contributes a sign.
    """
    total = NovikovPoly.zero()
    for tx in x.terms:
        for ty in y.terms:
            base = table.base_pairing(tx.name, ty.name)
            sign = -1 if (tx.translation + ty.translation) % 2 else 1
            weight = tx.coeff * ty.coeff * sign
            total = total + NovikovPoly.monomial(ty.shift - tx.shift, weight) * base
    return total


# -- semi-norm witnesses ----------------------------------------------------------


def seminorm_witness(a: ExponentLike, n: int, field: FieldSpec = FieldSpec()):
    """Witness complex for the fragmentation semi-norm bound ||t^a|| <= |a|/n, a < 0.

    Returns (C0, phi, delta) with delta = |a|/n: C0 is a class-zero direct
    sum of one translated free generator at level a, a delta-staircase of
    elementary pairs climbing from a to 0, and a free generator at level 0;
    phi projects the cone of the inclusion of that last factor onto the
    translated first factor, and its own cone carries only bars of length
    at most delta, so phi is a delta-isomorphism and not a delta/2-one.
    """
    a = as_exponent(a)
    if a >= 0:
        raise DomainError("the staircase witness needs a < 0")
    if n < 1:
        raise DomainError("the number of steps must be positive")
    delta = -a / n
    c0 = FilteredComplex.e1(a, 1, field, gid="w")
    for i in range(n):
        c0 = c0.direct_sum(FilteredComplex.e2(a + i * delta, a + (i + 1) * delta, 0,
                                              field, ids=(f"s{i}.x", f"s{i}.y")))
    unit = FilteredComplex.e1(0, 0, field, gid="e")
    c0 = c0.direct_sum(unit)
    inclusion = FilteredChainMap(unit, c0, {"e": {"e": 1}})
    cone = inclusion.cone()
    target = FilteredComplex.e1(a, 1, field, gid="z")
    phi = FilteredChainMap(cone, target, {"w": {"z": 1}})
    return c0, phi, delta


def strong_seminorm_upper(a: ExponentLike) -> Fraction:
    """Exact value of the strong fragmentation semi-norm on t^a: |a| for a < 0, else 0."""
    a = as_exponent(a)
    return -a if a < 0 else Fraction(0)
