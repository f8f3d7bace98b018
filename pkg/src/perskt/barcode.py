"""Barcodes of filtered complexes and the invariants living on them.

``decompose`` computes the normal form of a filtered complex by column
reduction: generators are processed in increasing (filtration, degree, id)
order, a reduced column pairs its generator with its pivot to close a bar,
and unpaired generators open infinite bars.  ``rank_invariant`` recomputes
persistent ranks by direct linear algebra on truncations and serves as the
independent check on the reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import inf as INF
from typing import Dict, Iterable, List, Tuple, Union

from . import linalg
from .errors import DomainError, InputError
from .novikov import ExponentLike, NovikovPoly, as_exponent, format_exponent
from .stepfn import StepFn, length as sf_length, theta, weighted_length
from .fcomplex import FilteredComplex

Death = Union[Fraction, float]  # a filtration level or INF
Bar = Tuple[int, Fraction, Death, int]  # (degree, birth, death, multiplicity)


def _death_key(d: Death):
    return (1, Fraction(0)) if d == INF else (0, d)


def parse_death(text) -> Death:
    if text == "inf":
        return INF
    return as_exponent(text)


def format_death(d: Death) -> str:
    return "inf" if d == INF else format_exponent(d)


class GradedBarcode:
    """Multiset of bars (degree, birth, death, multiplicity), birth < death."""

    __slots__ = ("_bars",)

    def __init__(self, bars: Iterable[Tuple[int, ExponentLike, Death, int]] = ()):
        counts: Dict[Tuple[int, Fraction, Death], int] = {}
        for degree, birth, death, mult in bars:
            birth = as_exponent(birth)
            death = INF if death == INF else as_exponent(death)
            mult = int(mult)
            if mult <= 0:
                raise DomainError("bar multiplicities must be positive")
            if death != INF and birth >= death:
                raise DomainError(f"bar needs birth < death, got [{birth}, {death})")
            key = (int(degree), birth, death)
            counts[key] = counts.get(key, 0) + mult
        self._bars = tuple(sorted(((k, b, d, m) for (k, b, d), m in counts.items()),
                                  key=lambda t: (t[0], t[1], _death_key(t[2]))))

    @classmethod
    def empty(cls) -> "GradedBarcode":
        return cls()

    @classmethod
    def single(cls, degree: int, birth: ExponentLike, death: Death, mult: int = 1) -> "GradedBarcode":
        return cls([(degree, birth, death, mult)])

    def bars(self) -> Tuple[Bar, ...]:
        return self._bars

    def __bool__(self) -> bool:
        return bool(self._bars)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedBarcode):
            return NotImplemented
        return self._bars == other._bars

    def __hash__(self) -> int:
        return hash(self._bars)

    def __add__(self, other: "GradedBarcode") -> "GradedBarcode":
        """Multiset union."""
        return GradedBarcode(self._bars + other._bars)

    # -- invariants ----------------------------------------------------------

    def counts(self):
        """(total, finite, infinite, per-degree map of the same triple)."""
        total = finite = infinite = 0
        per_degree: Dict[int, List[int]] = {}
        for degree, _, death, mult in self._bars:
            entry = per_degree.setdefault(degree, [0, 0, 0])
            total += mult
            entry[0] += mult
            if death == INF:
                infinite += mult
                entry[2] += mult
            else:
                finite += mult
                entry[1] += mult
        return total, finite, infinite, {k: tuple(v) for k, v in per_degree.items()}

    def finite_part(self) -> "GradedBarcode":
        return GradedBarcode(b for b in self._bars if b[2] != INF)

    def infinite_part(self) -> "GradedBarcode":
        return GradedBarcode(b for b in self._bars if b[2] == INF)

    def restrict_degree(self, degree: int) -> "GradedBarcode":
        return GradedBarcode(b for b in self._bars if b[0] == degree)

    def lambda_poly(self) -> NovikovPoly:
        """Sum over bars of (-1)^degree (t^birth - t^death), dropping infinite deaths."""
        pairs = []
        for degree, birth, death, mult in self._bars:
            sign = -mult if degree % 2 else mult
            pairs.append((birth, sign))
            if death != INF:
                pairs.append((death, -sign))
        return NovikovPoly(pairs)

    def chi_bar(self) -> StepFn:
        """Signed sum of bar indicators; equals theta of the class polynomial."""
        jumps = []
        for degree, birth, death, mult in self._bars:
            sign = -mult if degree % 2 else mult
            jumps.append((birth, sign))
            if death != INF:
                jumps.append((death, -sign))
        return StepFn(jumps)

    def abs_sigma(self) -> StepFn:
        """Unsigned sum of bar indicators."""
        jumps = []
        for _, birth, death, mult in self._bars:
            jumps.append((birth, mult))
            if death != INF:
                jumps.append((death, -mult))
        return StepFn(jumps)

    def euler(self) -> int:
        """Euler characteristic: the signed count of infinite bars."""
        return self.chi_bar().value_at_inf()

    def length(self) -> Fraction:
        return sf_length(self.chi_bar())

    def abs_length(self) -> Fraction:
        if any(death == INF for _, _, death, _ in self._bars):
            raise DomainError("absolute total length needs all bars finite")
        total = Fraction(0)
        for _, birth, death, mult in self._bars:
            total += mult * (death - birth)
        return total

    def bar_length(self) -> Fraction:
        """Length of the finite part plus the Euler characteristic."""
        return self.finite_part().length() + self.euler()

    def gen_length(self, h: StepFn) -> Fraction:
        return weighted_length(self.chi_bar(), h)

    def tensor(self, other: "GradedBarcode") -> "GradedBarcode":
        """Bar-level product mirroring the tensor of elementary complexes."""
        out: List[Bar] = []
        for k1, a, b, m1 in self._bars:
            for k2, c, d, m2 in other._bars:
                mult = m1 * m2
                if b == INF and d == INF:
                    out.append((k1 + k2, a + c, INF, mult))
                elif b == INF:
                    out.append((k1 + k2, a + c, a + d, mult))
                elif d == INF:
                    out.append((k1 + k2, c + a, c + b, mult))
                else:
                    lo, hi = min(a + d, b + c), max(a + d, b + c)
                    if a + c < lo:
                        out.append((k1 + k2, a + c, lo, mult))
                    if hi < b + d:
                        out.append((k1 + k2 + 1, hi, b + d, mult))
        return GradedBarcode(out)

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        return {"bars": [{"degree": k, "birth": format_exponent(b),
                          "death": format_death(d), "mult": m}
                         for k, b, d, m in self._bars]}

    @classmethod
    def from_json(cls, data) -> "GradedBarcode":
        if not isinstance(data, dict) or "bars" not in data:
            raise InputError("barcode JSON must be an object with a 'bars' list")
        bars = []
        for item in data["bars"]:
            if not isinstance(item, dict) or not {"degree", "birth", "death"} <= set(item):
                raise InputError(f"bad bar {item!r}")
            mult = item.get("mult", 1)
            if not isinstance(mult, int) or not isinstance(item["degree"], int):
                raise InputError(f"bad bar {item!r}")
            bars.append((item["degree"], as_exponent(item["birth"]),
                         parse_death(item["death"]), mult))
        return cls(bars)

    def __str__(self) -> str:
        if not self._bars:
            return "(empty barcode)"
        rows = ["degree  birth  death  mult"]
        for k, b, d, m in self._bars:
            rows.append(f"{k:>6}  {format_exponent(b)}  {format_death(d)}  {m}")
        return "\n".join(rows)

    def __repr__(self) -> str:
        return f"GradedBarcode({self._bars!r})"


# -- decomposition -------------------------------------------------------------


def decompose_with_ghosts(c: FilteredComplex) -> Tuple[GradedBarcode, int]:
    """Normal form plus the number of suppressed ghost pairs (birth = death)."""
    c.require_valid()
    p = c.field.p
    order = sorted(c.generators, key=lambda g: (g.filtration, g.degree, g.gid))
    index = {g.gid: i for i, g in enumerate(order)}
    columns = []
    for g in order:
        col = {index[tgt]: coeff % p for tgt, coeff in c.boundary.get(g.gid, {}).items()}
        columns.append({r: v for r, v in col.items() if v})

    pivot_owner: Dict[int, int] = {}
    bars: List[Bar] = []
    ghosts = 0
    for j, col in enumerate(columns):
        while col:
            pivot = max(col)
            if pivot not in pivot_owner:
                break
            k = pivot_owner[pivot]
            factor = (col[pivot] * pow(columns[k][pivot], -1, p)) % p
            for r, v in columns[k].items():
                s = (col.get(r, 0) - factor * v) % p
                if s:
                    col[r] = s
                elif r in col:
                    del col[r]
        if col:
            pivot = max(col)
            pivot_owner[pivot] = j
            birth = order[pivot].filtration
            death = order[j].filtration
            if birth == death:
                ghosts += 1
            else:
                bars.append((order[pivot].degree, birth, death, 1))

    paired = set(pivot_owner) | set(pivot_owner.values())
    for i, g in enumerate(order):
        if i not in paired:
            bars.append((g.degree, g.filtration, INF, 1))
    return GradedBarcode(bars), ghosts


def decompose(c: FilteredComplex) -> GradedBarcode:
    return decompose_with_ghosts(c)[0]


def rank_invariant(c: FilteredComplex, s: ExponentLike, t: ExponentLike, k: int) -> int:
    """Rank of the persistence map H_k(level <= s) -> H_k(level <= t).

    Computed directly as dim Z_k^s - dim(Z_k^s  intersect  B_k^t) by Gaussian
    elimination on truncated boundary matrices; independent of the column
    reduction used by ``decompose``.
    """
    s, t = as_exponent(s), as_exponent(t)
    if s > t:
        raise DomainError("rank_invariant requires s <= t")
    c.require_valid()
    p = c.field.p
    rows_k1 = c.generators_of_degree(k - 1)
    row_index = {g.gid: i for i, g in enumerate(rows_k1)}
    cols_s = c.generators_of_degree(k, max_filtration=s)
    if not cols_s:
        return 0

    def boundary_matrix(columns):
        mat = linalg.zeros(len(rows_k1), len(columns))
        for j, g in enumerate(columns):
            for tgt, coeff in c.boundary.get(g.gid, {}).items():
                mat[row_index[tgt]][j] = coeff % p
        return mat

    if rows_k1:
        kernel = linalg.nullspace(boundary_matrix(cols_s), p)  # cycles at level s
    else:
        kernel = linalg.identity(len(cols_s))  # everything is a cycle
    if not kernel:
        return 0

    # embed the cycles into coordinates over all degree-k generators
    gens_k = c.generators_of_degree(k)
    embed = {g.gid: i for i, g in enumerate(gens_k)}
    z_cols = []
    for vec in kernel:
        col = [0] * len(gens_k)
        for j, g in enumerate(cols_s):
            col[embed[g.gid]] = vec[j]
        z_cols.append(col)

    b_cols = []
    for g in c.generators_of_degree(k + 1, max_filtration=t):
        col = [0] * len(gens_k)
        for tgt, coeff in c.boundary.get(g.gid, {}).items():
            col[embed[tgt]] = coeff % p
        b_cols.append(col)

    dim_z = len(z_cols)
    if not b_cols:
        return dim_z
    rows = [list(col) for col in zip(*(z_cols + b_cols))]
    dim_sum = linalg.rank(rows, p)
    rank_b = linalg.rank([list(r) for r in zip(*b_cols)], p)
    # dim(Z cap B) = dim Z + dim B - dim(Z + B)
    return dim_z - (dim_z + rank_b - dim_sum)


# -- bottleneck distance ---------------------------------------------------------


def _tau_matchable(bar1, bar2, tau: Fraction) -> bool:
    (a, b), (c, d) = bar1, bar2
    if (b == INF) != (d == INF):
        return False
    if b == INF:
        return abs(a - c) <= tau
    return abs(a - c) <= tau and abs(b - d) <= tau


def _discardable(bar, tau: Fraction) -> bool:
    a, b = bar
    return b != INF and (b - a) <= 2 * tau


def _max_matching(adjacency: List[List[int]], n_right: int) -> int:
    match_right = [-1] * n_right
    matched = 0

    def augment(u: int, seen: List[bool]) -> bool:
        for v in adjacency[u]:
            if not seen[v]:
                seen[v] = True
                if match_right[v] < 0 or augment(match_right[v], seen):
                    match_right[v] = u
                    return True
        return False

    for u in range(len(adjacency)):
        if augment(u, [False] * n_right):
            matched += 1
    return matched


def _feasible(left, right, tau: Fraction) -> bool:
    """Perfect matching in the diagonal-augmented bipartite graph."""
    nl, nr = len(left), len(right)
    size = nl + nr
    adjacency: List[List[int]] = [[] for _ in range(size)]
    # left vertices: real bars of `left` then diagonal copies for `right`
    for i, bar in enumerate(left):
        for j, other in enumerate(right):
            if _tau_matchable(bar, other, tau):
                adjacency[i].append(j)
        if _discardable(bar, tau):
            adjacency[i].append(nr + i)
    for j, other in enumerate(right):
        if _discardable(other, tau):
            adjacency[nl + j].append(j)
        # diagonal copies pair freely with each other
        for i in range(nl):
            adjacency[nl + j].append(nr + i)
    return _max_matching(adjacency, size) == size


def _degree_bottleneck(left, right) -> Union[Fraction, float]:
    n_inf_l = sum(1 for _, d in left if d == INF)
    n_inf_r = sum(1 for _, d in right if d == INF)
    if n_inf_l != n_inf_r:
        return INF
    candidates = {Fraction(0)}
    for a, b in left + right:
        if b != INF:
            candidates.add((b - a) / 2)
    for a, b in left:
        for cc, d in right:
            if (b == INF) == (d == INF):
                candidates.add(abs(a - cc))
                if b != INF:
                    candidates.add(abs(b - d))
    ordered = sorted(candidates)
    lo, hi = 0, len(ordered) - 1
    if not _feasible(left, right, ordered[hi]):
        raise AssertionError("bottleneck candidate set must contain a feasible value")
    while lo < hi:
        mid = (lo + hi) // 2
        if _feasible(left, right, ordered[mid]):
            hi = mid
        else:
            lo = mid + 1
    return ordered[lo]


def bottleneck(b1: GradedBarcode, b2: GradedBarcode) -> Union[Fraction, float]:
    """Exact bottleneck distance; bars only match within their own degree.

    A bar may stay unmatched iff its length is at most 2 tau; matched
    endpoints differ by at most tau; infinite bars match infinite bars.  The
    optimum is attained on the finite candidate set of half-lengths and
    endpoint differences, searched by bipartite matching feasibility.
    """
    degrees = sorted({k for k, *_ in b1.bars()} | {k for k, *_ in b2.bars()})
    worst: Union[Fraction, float] = Fraction(0)
    for k in degrees:
        left = [(b, d) for deg, b, d, m in b1.bars() if deg == k for _ in range(m)]
        right = [(b, d) for deg, b, d, m in b2.bars() if deg == k for _ in range(m)]
        value = _degree_bottleneck(left, right)
        if value == INF:
            return INF
        worst = max(worst, value)
    return worst


# -- persistence Morse data ------------------------------------------------------


@dataclass(frozen=True)
class MorseData:
    """Per-degree step functions P (generators), H (homology), Q (boundary ranks)."""

    P: Dict[int, StepFn]
    H: Dict[int, StepFn]
    Q: Dict[int, StepFn]

    def verify(self) -> bool:
        degrees = set(self.P) | set(self.H) | set(self.Q) | {k + 1 for k in self.Q}
        for k in degrees:
            lhs = self.P.get(k, StepFn.zero()) - self.H.get(k, StepFn.zero())
            rhs = self.Q.get(k, StepFn.zero()) + self.Q.get(k - 1, StepFn.zero())
            if lhs != rhs:
                return False
        return True


def morse_data(c: FilteredComplex) -> MorseData:
    """The persistence Morse inequality data, with the identity re-verified.

    P counts generators by filtration level, H is the homology barcode, and
    Q tracks boundary ranks of truncations, computed by direct elimination.
    """
    c.require_valid()
    p = c.field.p
    P: Dict[int, StepFn] = {}
    for k in c.degrees():
        gens = c.generators_of_degree(k)
        fn = StepFn((g.filtration, 1) for g in gens)
        if fn:
            P[k] = fn

    H: Dict[int, StepFn] = {}
    for degree, birth, death, mult in decompose(c).bars():
        jumps = [(birth, mult)] + ([(death, -mult)] if death != INF else [])
        H[degree] = H.get(degree, StepFn.zero()) + StepFn(jumps)
    H = {k: v for k, v in H.items() if v}

    Q: Dict[int, StepFn] = {}
    for k in sorted({d - 1 for d in c.degrees()} | set(c.degrees())):
        sources = c.generators_of_degree(k + 1)
        if not sources:
            continue
        rows = c.generators_of_degree(k)
        row_index = {g.gid: i for i, g in enumerate(rows)}
        breakpoints = sorted({g.filtration for g in sources})
        jumps = []
        previous = 0
        for level in breakpoints:
            cols = [g for g in sources if g.filtration <= level]
            mat = linalg.zeros(len(rows), len(cols))
            for j, g in enumerate(cols):
                for tgt, coeff in c.boundary.get(g.gid, {}).items():
                    mat[row_index[tgt]][j] = coeff % p
            value = linalg.rank(mat, p) if rows else 0
            if value != previous:
                jumps.append((level, value - previous))
                previous = value
        fn = StepFn(jumps)
        if fn:
            Q[k] = fn

    data = MorseData(P, H, Q)
    if not data.verify():
        raise AssertionError("Morse identity P - H = (1+x)Q failed; decomposition bug")
    return data
