"""Finitely generated filtered chain complexes over a prime field.

A complex is a list of generators (id, degree, filtration) together with a
sparse boundary, subject to three invariants: the boundary lowers degree by
exactly one, squares to zero over the field, and never raises filtration.
Everything built here preserves those invariants; ``validate`` re-checks
them and is wired into the operations that require a valid input.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import inf as INF
from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple

from . import linalg
from .errors import DomainError, InputError
from .novikov import ExponentLike, as_exponent, format_exponent

Boundary = Dict[str, Dict[str, int]]


@dataclass(frozen=True)
class FieldSpec:
    """Prime field GF(p); arithmetic is mod p with exact inverses."""

    characteristic: int = 2

    def __post_init__(self):
        p = self.characteristic
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise DomainError(f"field characteristic must be prime, got {p}")

    @property
    def p(self) -> int:
        return self.characteristic

    def inv(self, x: int) -> int:
        return pow(x, -1, self.characteristic)


class Generator(NamedTuple):
    gid: str
    degree: int
    filtration: Fraction


def _clean_boundary(boundary: Boundary, p: int) -> Boundary:
    out: Boundary = {}
    for src, row in boundary.items():
        cleaned = {tgt: c % p for tgt, c in row.items() if c % p}
        if cleaned:
            out[src] = cleaned
    return out


class FilteredComplex:

    __slots__ = ("field", "generators", "boundary", "_by_id")

    def __init__(self, field: FieldSpec, generators: Iterable[Generator], boundary: Boundary):
        self.field = field
        self.generators = tuple(Generator(g[0], int(g[1]), as_exponent(g[2])) for g in generators)
        self.boundary = _clean_boundary(boundary, field.p)
        self._by_id = {g.gid: g for g in self.generators}
        if len(self._by_id) != len(self.generators):
            raise DomainError("generator ids must be distinct")

    # -- constructors --------------------------------------------------

    @classmethod
    def empty(cls, field: FieldSpec = FieldSpec()) -> "FilteredComplex":
        return cls(field, (), {})

    @classmethod
    def e1(cls, a: ExponentLike, k: int = 0, field: FieldSpec = FieldSpec(),
           gid: str = "x") -> "FilteredComplex":
        """One generator of degree k at filtration a, zero boundary."""
        return cls(field, [Generator(gid, k, as_exponent(a))], {})

    @classmethod
    def e2(cls, b: ExponentLike, c: ExponentLike, k: int = 0, field: FieldSpec = FieldSpec(),
           ids: Tuple[str, str] = ("x", "y")) -> "FilteredComplex":
        """Two generators x (degree k, level b) and y (degree k+1, level c), dy = x."""
        b, c = as_exponent(b), as_exponent(c)
        if b > c:
            raise DomainError(f"elementary pair needs b <= c, got ({b}, {c})")
        xid, yid = ids
        gens = [Generator(xid, k, b), Generator(yid, k + 1, c)]
        return cls(field, gens, {yid: {xid: 1}})

    # -- validation ------------------------------------------------------

    def validate(self) -> List[str]:
        problems = []
        p = self.field.p
        for src, row in self.boundary.items():
            if src not in self._by_id:
                problems.append(f"boundary from unknown generator {src!r}")
                continue
            for tgt, coeff in row.items():
                if tgt not in self._by_id:
                    problems.append(f"boundary from {src!r} to unknown generator {tgt!r}")
                    continue
                s, t = self._by_id[src], self._by_id[tgt]
                if t.degree != s.degree - 1:
                    problems.append(
                        f"boundary entry {src!r} -> {tgt!r} does not lower degree by 1")
                if t.filtration > s.filtration:
                    problems.append(
                        f"filtration raised along boundary entry {src!r} -> {tgt!r}")
                if coeff % p == 0:
                    problems.append(f"zero coefficient stored on {src!r} -> {tgt!r}")
        # d(d x) = 0 over the field
        for src, row in self.boundary.items():
            acc: Dict[str, int] = {}
            for mid, c1 in row.items():
                for tgt, c2 in self.boundary.get(mid, {}).items():
                    acc[tgt] = (acc.get(tgt, 0) + c1 * c2) % p
            bad = [t for t, v in acc.items() if v]
            if bad:
                problems.append(f"boundary does not square to zero from {src!r} (hits {sorted(bad)})")
        return problems

    def require_valid(self) -> "FilteredComplex":
        problems = self.validate()
        if problems:
            raise DomainError("invalid complex: " + "; ".join(problems))
        return self

    # -- basic views -------------------------------------------------------

    def __len__(self) -> int:
        return len(self.generators)

    def generator(self, gid: str) -> Generator:
        return self._by_id[gid]

    def degrees(self) -> List[int]:
        return sorted({g.degree for g in self.generators})

    def generators_of_degree(self, k: int, max_filtration=None) -> List[Generator]:
        out = [g for g in self.generators if g.degree == k]
        if max_filtration is not None:
            out = [g for g in out if g.filtration <= max_filtration]
        return out

    def max_filtration(self) -> Optional[Fraction]:
        return max((g.filtration for g in self.generators), default=None)

    # -- elementary operations ----------------------------------------------

    def direct_sum(self, other: "FilteredComplex") -> "FilteredComplex":
        if self.field != other.field:
            raise DomainError("direct sum requires matching fields")
        taken = {g.gid for g in self.generators}
        rename = {}
        for g in other.generators:
            gid = g.gid
            while gid in taken:
                gid += "'"
            taken.add(gid)
            rename[g.gid] = gid
        gens = list(self.generators) + [Generator(rename[g.gid], g.degree, g.filtration)
                                        for g in other.generators]
        boundary = {src: dict(row) for src, row in self.boundary.items()}
        for src, row in other.boundary.items():
            boundary[rename[src]] = {rename[t]: c for t, c in row.items()}
        return FilteredComplex(self.field, gens, boundary)

    def shift(self, r: ExponentLike) -> "FilteredComplex":
        """Raise every filtration level by r (r may be negative)."""
        r = as_exponent(r)
        gens = [Generator(g.gid, g.degree, g.filtration + r) for g in self.generators]
        return FilteredComplex(self.field, gens, self.boundary)

    def translate(self, k: int) -> "FilteredComplex":
        """Apply the translation functor k times: degrees rise by k."""
        gens = [Generator(g.gid, g.degree + k, g.filtration) for g in self.generators]
        return FilteredComplex(self.field, gens, self.boundary)

    def truncate(self, r: ExponentLike) -> "FilteredComplex":
        """Subcomplex on generators of filtration <= r (closed under the boundary)."""
        r = as_exponent(r)
        keep = {g.gid for g in self.generators if g.filtration <= r}
        gens = [g for g in self.generators if g.gid in keep]
        boundary = {src: row for src, row in self.boundary.items() if src in keep}
        return FilteredComplex(self.field, gens, boundary)

    def tensor(self, other: "FilteredComplex") -> "FilteredComplex":
        """Tensor product: degrees add, filtrations add, Koszul sign on the right factor."""
        if self.field != other.field:
            raise DomainError("tensor requires matching fields")
        p = self.field.p
        gens = []
        for gx in self.generators:
            for gy in other.generators:
                gens.append(Generator(f"({gx.gid})x({gy.gid})", gx.degree + gy.degree,
                                      gx.filtration + gy.filtration))
        boundary: Boundary = {}
        for gx in self.generators:
            for gy in other.generators:
                row: Dict[str, int] = {}
                for tgt, c in self.boundary.get(gx.gid, {}).items():
                    row[f"({tgt})x({gy.gid})"] = c % p
                sign = -1 if gx.degree % 2 else 1
                for tgt, c in other.boundary.get(gy.gid, {}).items():
                    key = f"({gx.gid})x({tgt})"
                    row[key] = (row.get(key, 0) + sign * c) % p
                if any(row.values()):
                    boundary[f"({gx.gid})x({gy.gid})"] = row
        return FilteredComplex(self.field, gens, boundary)

    def dual(self, m0: int = 0) -> "FilteredComplex":
        """Dual complex: degree g -> m0 - g, filtration negated, transposed boundary."""
        p = self.field.p
        gens = [Generator(g.gid + "^", m0 - g.degree, -g.filtration) for g in self.generators]
        boundary: Boundary = {}
        for src, row in self.boundary.items():
            for tgt, c in row.items():
                # delta(y^)(x) = (-1)^{m0 - deg y} y^(dx)
                sign = -1 if (m0 - self._by_id[tgt].degree) % 2 else 1
                boundary.setdefault(tgt + "^", {})[src + "^"] = (sign * c) % p
        return FilteredComplex(self.field, gens, boundary)

    def dims_by_degree(self, alpha=None) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for g in self.generators:
            if alpha is None or g.filtration <= alpha:
                out[g.degree] = out.get(g.degree, 0) + 1
        return out

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "field": self.field.characteristic,
            "generators": [{"id": g.gid, "degree": g.degree,
                            "filtration": format_exponent(g.filtration)}
                           for g in self.generators],
            "boundary": [{"from": src, "to": tgt, "coeff": c}
                         for src in sorted(self.boundary)
                         for tgt, c in sorted(self.boundary[src].items())],
        }

    @classmethod
    def from_json(cls, data) -> "FilteredComplex":
        if not isinstance(data, dict) or "generators" not in data:
            raise InputError("complex JSON must be an object with a 'generators' list")
        try:
            fld = FieldSpec(int(data.get("field", 2)))
        except (TypeError, ValueError) as e:
            raise InputError("bad field characteristic") from e
        gens = []
        for item in data["generators"]:
            if not isinstance(item, dict) or not {"id", "degree", "filtration"} <= set(item):
                raise InputError(f"bad generator {item!r}")
            gens.append(Generator(str(item["id"]), int(item["degree"]),
                                  as_exponent(item["filtration"])))
        boundary: Boundary = {}
        for item in data.get("boundary", ()):
            if not isinstance(item, dict) or not {"from", "to", "coeff"} <= set(item):
                raise InputError(f"bad boundary entry {item!r}")
            if not isinstance(item["coeff"], int):
                raise InputError(f"boundary coefficient must be an integer: {item!r}")
            row = boundary.setdefault(str(item["from"]), {})
            tgt = str(item["to"])
            row[tgt] = row.get(tgt, 0) + item["coeff"]
        return cls(fld, gens, boundary)

    def __repr__(self) -> str:
        return (f"FilteredComplex(p={self.field.characteristic}, "
                f"generators={len(self.generators)})")


@dataclass
class FilteredChainMap:
    """Degree-0 chain map; entries may raise filtration by at most the allowance."""

    domain: FilteredComplex
    codomain: FilteredComplex
    entries: Dict[str, Dict[str, int]] = dc_field(default_factory=dict)
    shift_allowance: Fraction = Fraction(0)

    def __post_init__(self):
        self.shift_allowance = as_exponent(self.shift_allowance)
        self.entries = _clean_boundary(self.entries, self.domain.field.p)

    @classmethod
    def identity(cls, c: FilteredComplex) -> "FilteredChainMap":
        return cls(c, c, {g.gid: {g.gid: 1} for g in c.generators})

    def validate(self) -> List[str]:
        problems = []
        if self.domain.field != self.codomain.field:
            return ["domain and codomain fields differ"]
        p = self.domain.field.p
        for src, row in self.entries.items():
            if src not in self.domain._by_id:
                problems.append(f"entry from unknown generator {src!r}")
                continue
            s = self.domain.generator(src)
            for tgt, c in row.items():
                if tgt not in self.codomain._by_id:
                    problems.append(f"entry into unknown generator {tgt!r}")
                    continue
                t = self.codomain.generator(tgt)
                if t.degree != s.degree:
                    problems.append(f"entry {src!r} -> {tgt!r} is not degree 0")
                if t.filtration > s.filtration + self.shift_allowance:
                    problems.append(f"entry {src!r} -> {tgt!r} exceeds the filtration allowance")
        # commutes with the boundary: f(dx) = d(f x)
        for g in self.domain.generators:
            acc: Dict[str, int] = {}
            for mid, c1 in self.domain.boundary.get(g.gid, {}).items():
                for tgt, c2 in self.entries.get(mid, {}).items():
                    acc[tgt] = (acc.get(tgt, 0) + c1 * c2) % p
            for mid, c1 in self.entries.get(g.gid, {}).items():
                for tgt, c2 in self.codomain.boundary.get(mid, {}).items():
                    acc[tgt] = (acc.get(tgt, 0) - c1 * c2) % p
            bad = sorted(t for t, v in acc.items() if v % p)
            if bad:
                problems.append(f"does not commute with the boundary at {g.gid!r} (hits {bad})")
        return problems

    def require_valid(self) -> "FilteredChainMap":
        problems = self.validate()
        if problems:
            raise DomainError("invalid map: " + "; ".join(problems))
        return self

    def cone(self) -> "FilteredComplex":
        """Mapping cone of a filtration-preserving map.

        Domain generators come in translated by one degree with their
        filtrations kept; the differential is d(a~) = -da~ + f(a), d(b) = db.
        """
        if self.shift_allowance != 0:
            raise DomainError("cone requires a filtration-preserving map (allowance 0)")
        self.require_valid()
        p = self.domain.field.p
        taken = {g.gid for g in self.codomain.generators}
        rename = {}
        for g in self.domain.generators:
            gid = "T." + g.gid
            while gid in taken:
                gid += "'"
            taken.add(gid)
            rename[g.gid] = gid
        gens = list(self.codomain.generators)
        gens += [Generator(rename[g.gid], g.degree + 1, g.filtration)
                 for g in self.domain.generators]
        boundary = {src: dict(row) for src, row in self.codomain.boundary.items()}
        for g in self.domain.generators:
            row: Dict[str, int] = {}
            for tgt, c in self.domain.boundary.get(g.gid, {}).items():
                row[rename[tgt]] = (-c) % p
            for tgt, c in self.entries.get(g.gid, {}).items():
                row[tgt] = (row.get(tgt, 0) + c) % p
            if any(row.values()):
                boundary[rename[g.gid]] = row
        return FilteredComplex(self.domain.field, gens, boundary)

    def to_json(self) -> dict:
        return {
            "domain": self.domain.to_json(),
            "codomain": self.codomain.to_json(),
            "entries": [{"from": src, "to": tgt, "coeff": c}
                        for src in sorted(self.entries)
                        for tgt, c in sorted(self.entries[src].items())],
            "shift_allowance": format_exponent(self.shift_allowance),
        }

    @classmethod
    def from_json(cls, data) -> "FilteredChainMap":
        if not isinstance(data, dict) or not {"domain", "codomain"} <= set(data):
            raise InputError("map JSON must contain 'domain' and 'codomain'")
        dom = FilteredComplex.from_json(data["domain"])
        cod = FilteredComplex.from_json(data["codomain"])
        entries: Dict[str, Dict[str, int]] = {}
        for item in data.get("entries", ()):
            if not isinstance(item, dict) or not {"from", "to", "coeff"} <= set(item):
                raise InputError(f"bad map entry {item!r}")
            if not isinstance(item["coeff"], int):
                raise InputError(f"map coefficient must be an integer: {item!r}")
            row = entries.setdefault(str(item["from"]), {})
            tgt = str(item["to"])
            row[tgt] = row.get(tgt, 0) + item["coeff"]
        return cls(dom, cod, entries, as_exponent(data.get("shift_allowance", 0)))


def eta_map(c: FilteredComplex, r: ExponentLike) -> FilteredChainMap:
    """The canonical comparison map from the r-shifted complex, identity on generators."""
    r = as_exponent(r)
    if r < 0:
        raise DomainError("eta requires r >= 0")
    return FilteredChainMap(c.shift(r), c, {g.gid: {g.gid: 1} for g in c.generators})


def acyclic_truncation(c: FilteredComplex, r: ExponentLike) -> FilteredComplex:
    """Cone of the comparison map; on classes this multiplies by (1 - t^r)."""
    return eta_map(c, r).cone()


def hom_complex(c1: FilteredComplex, c2: FilteredComplex) -> FilteredComplex:
    """Filtered hom complex on elementary maps x -> y.

    The generator (x -> y) is given internal degree deg(y) - deg(x) and
    filtration l(y) - l(x); the differential is f -> d o f - (-1)^{|f|} f o d.
    The internal degree doubles as the translation index in the pairing.
    """
    if c1.field != c2.field:
        raise DomainError("hom requires matching fields")
    p = c1.field.p
    gens = []
    for gx in c1.generators:
        for gy in c2.generators:
            gens.append(Generator(f"({gx.gid})->({gy.gid})", gy.degree - gx.degree,
                                  gy.filtration - gx.filtration))
    # incoming boundary per target, for the f o d term
    incoming: Dict[str, List[Tuple[str, int]]] = {}
    for src, row in c1.boundary.items():
        for tgt, c in row.items():
            incoming.setdefault(tgt, []).append((src, c))
    boundary: Boundary = {}
    for gx in c1.generators:
        for gy in c2.generators:
            fdeg = gy.degree - gx.degree
            sign = -1 if fdeg % 2 else 1
            row: Dict[str, int] = {}
            for tgt, c in c2.boundary.get(gy.gid, {}).items():
                row[f"({gx.gid})->({tgt})"] = c % p
            for src, c in incoming.get(gx.gid, ()):
                key = f"({src})->({gy.gid})"
                row[key] = (row.get(key, 0) - sign * c) % p
            if any(row.values()):
                boundary[f"({gx.gid})->({gy.gid})"] = row
    return FilteredComplex(c1.field, gens, boundary)


# -- randomized instances ----------------------------------------------------

PlantedBar = Tuple[int, Fraction, object, int]  # (degree, birth, death or INF, mult)


def _random_level(rng: random.Random, denominator: int = 4, lo: int = -3, hi: int = 3) -> Fraction:
    den = rng.randint(1, denominator)
    return Fraction(rng.randint(lo * den, hi * den), den)


def _random_descriptors(rng: random.Random, max_pieces: int, degrees: Tuple[int, int],
                        allow_ghosts: bool):
    out = []
    for _ in range(rng.randint(1, max_pieces)):
        k = rng.randint(*degrees)
        a = _random_level(rng)
        if rng.random() < 0.4:
            out.append(("e1", k, a, None))
        elif allow_ghosts and rng.random() < 0.25:
            out.append(("e2", k, a, a))
        else:
            out.append(("e2", k, a, a + Fraction(rng.randint(1, 8), rng.randint(1, 4))))
    return out


def _assemble_pieces(descriptors, field: FieldSpec, prefix: str):
    """Direct sum of elementary pieces plus the bars they plant."""
    total = FilteredComplex.empty(field)
    planted: List[Tuple[int, Fraction, object]] = []
    pieces = []
    for i, (kind, k, a, b) in enumerate(descriptors):
        if kind == "e1":
            piece = FilteredComplex.e1(a, k, field, gid=f"{prefix}{i}.x")
            planted.append((k, a, INF))
        else:
            piece = FilteredComplex.e2(a, b, k, field, ids=(f"{prefix}{i}.x", f"{prefix}{i}.y"))
            if b > a:
                planted.append((k, a, b))
        pieces.append((kind, k, a, b, f"{prefix}{i}"))
        total = total.direct_sum(piece)
    return total, planted, pieces


def _random_pieces(rng: random.Random, max_pieces: int, degrees: Tuple[int, int],
                   field: FieldSpec, allow_ghosts: bool, prefix: str):
    return _assemble_pieces(_random_descriptors(rng, max_pieces, degrees, allow_ghosts),
                            field, prefix)


def _boundary_matrix(c: FilteredComplex) -> linalg.Matrix:
    n = len(c.generators)
    index = {g.gid: i for i, g in enumerate(c.generators)}
    mat = linalg.zeros(n, n)
    for src, row in c.boundary.items():
        j = index[src]
        for tgt, coeff in row.items():
            mat[index[tgt]][j] = coeff % c.field.p
    return mat


def _matrix_boundary(c: FilteredComplex, mat: linalg.Matrix) -> Boundary:
    gens = c.generators
    boundary: Boundary = {}
    for j, gsrc in enumerate(gens):
        row = {gens[i].gid: mat[i][j] for i in range(len(gens)) if mat[i][j]}
        if row:
            boundary[gsrc.gid] = row
    return boundary


def _random_transvections(c: FilteredComplex, rng: random.Random, moves: int):
    """Moves u <- u + c v with deg v = deg u, l(v) <= l(u): filtered basis changes."""
    gens = c.generators
    p = c.field.p
    out = []
    for _ in range(moves):
        if len(gens) < 2:
            break
        u = rng.randrange(len(gens))
        candidates = [v for v in range(len(gens))
                      if v != u and gens[v].degree == gens[u].degree
                      and gens[v].filtration <= gens[u].filtration]
        if not candidates:
            continue
        out.append((u, rng.choice(candidates), rng.randint(1, p - 1)))
    return out


def _conjugate(c: FilteredComplex, transvections) -> FilteredComplex:
    """Rewrite the boundary in the changed basis; all invariants are preserved."""
    mat = _boundary_matrix(c)
    p = c.field.p
    n = len(c.generators)
    for u, v, coeff in transvections:
        # D <- (I - c e_{v,u}) D (I + c e_{v,u})
        for i in range(n):
            mat[i][u] = (mat[i][u] + coeff * mat[i][v]) % p
        for j in range(n):
            mat[v][j] = (mat[v][j] - coeff * mat[u][j]) % p
    return FilteredComplex(c.field, c.generators, _matrix_boundary(c, mat))


def random_planted(seed: int, max_pieces: int = 4, degrees: Tuple[int, int] = (-1, 2),
                   field: FieldSpec = FieldSpec(), moves: int = 8,
                   allow_ghosts: bool = False):
    """Random valid complex with a known normal form; returns (complex, bars).

    The planted bars are the barcode the decomposition must recover, as a
    sorted tuple of (degree, birth, death, multiplicity) with INF deaths.
    """
    rng = random.Random(seed)
    total, planted, _ = _random_pieces(rng, max_pieces, degrees, field, allow_ghosts, "g")
    mixed = _conjugate(total, _random_transvections(total, rng, moves))
    counts: Dict[Tuple[int, Fraction, object], int] = {}
    for key in planted:
        counts[key] = counts.get(key, 0) + 1
    bars = tuple(sorted(((k, b, d, m) for (k, b, d), m in counts.items()),
                        key=lambda t: (t[0], t[1], t[2] == INF, t[2])))
    return mixed, bars


def random_complex(seed: int, **kwargs) -> FilteredComplex:
    return random_planted(seed, **kwargs)[0]


def random_chain_map(seed: int, max_pieces: int = 3, degrees: Tuple[int, int] = (-1, 2),
                     field: FieldSpec = FieldSpec(), moves: int = 6,
                     mirror: bool = True) -> FilteredChainMap:
    """Random filtration-preserving chain map between random complexes.

    Maps are assembled piecewise between elementary summands (the only
    shapes a chain map can take there) and then hidden by changing bases on
    both ends; the matrix transforms as F -> V^{-1} F U alongside.  With
    ``mirror`` the codomain may duplicate domain pieces, so identity-shaped
    components appear and the cone acquires ghost pairs.
    """
    rng = random.Random(seed)
    dom_desc = _random_descriptors(rng, max_pieces, degrees, False)
    cod_desc = _random_descriptors(rng, max_pieces, degrees, False)
    if mirror:
        cod_desc += [d for d in dom_desc if rng.random() < 0.5]
    dom, _, dom_pieces = _assemble_pieces(dom_desc, field, "a")
    cod, _, cod_pieces = _assemble_pieces(cod_desc, field, "b")
    p = field.p
    entries: Dict[str, Dict[str, int]] = {}

    def add(src: str, tgt: str, c: int) -> None:
        row = entries.setdefault(src, {})
        row[tgt] = (row.get(tgt, 0) + c) % p

    for kind1, k1, a1, b1, p1 in dom_pieces:
        for kind2, k2, a2, b2, p2 in cod_pieces:
            if rng.random() < 0.5:
                continue
            c = rng.randint(1, p - 1)
            if kind1 == "e1" and kind2 == "e1" and k1 == k2 and a2 <= a1:
                add(f"{p1}.x", f"{p2}.x", c)
            elif kind1 == "e1" and kind2 == "e2" and k1 == k2 and a2 <= a1:
                add(f"{p1}.x", f"{p2}.x", c)
            elif kind1 == "e2" and kind2 == "e1" and k2 == k1 + 1 and a2 <= b1:
                add(f"{p1}.y", f"{p2}.x", c)
            elif kind1 == "e2" and kind2 == "e2" and k1 == k2 and a2 <= a1 and b2 <= b1:
                add(f"{p1}.x", f"{p2}.x", c)
                add(f"{p1}.y", f"{p2}.y", c)
            elif kind1 == "e2" and kind2 == "e2" and k2 == k1 + 1 and a2 <= b1:
                add(f"{p1}.y", f"{p2}.x", c)

    dom_moves = _random_transvections(dom, rng, moves)
    cod_moves = _random_transvections(cod, rng, moves)
    mixed_dom = _conjugate(dom, dom_moves)
    mixed_cod = _conjugate(cod, cod_moves)

    dom_index = {g.gid: i for i, g in enumerate(dom.generators)}
    cod_index = {g.gid: i for i, g in enumerate(cod.generators)}
    fmat = linalg.zeros(len(cod.generators), len(dom.generators))
    for src, row in entries.items():
        for tgt, c in row.items():
            fmat[cod_index[tgt]][dom_index[src]] = c
    for u, v, coeff in dom_moves:          # F <- F (I + c e_{v,u})
        for i in range(len(fmat)):
            fmat[i][u] = (fmat[i][u] + coeff * fmat[i][v]) % p
    for u, v, coeff in cod_moves:          # F <- (I - c e_{v,u}) F
        for j in range(len(dom.generators)):
            fmat[v][j] = (fmat[v][j] - coeff * fmat[u][j]) % p

    mixed_entries: Dict[str, Dict[str, int]] = {}
    for j, gsrc in enumerate(dom.generators):
        row = {cod.generators[i].gid: fmat[i][j]
               for i in range(len(cod.generators)) if fmat[i][j]}
        if row:
            mixed_entries[gsrc.gid] = row
    return FilteredChainMap(mixed_dom, mixed_cod, mixed_entries)
