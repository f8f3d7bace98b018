"""Seeded random generators shared by the test modules."""

from fractions import Fraction
from math import inf as INF
import random

from perskt import GradedBarcode, NovikovPoly


def rand_fraction(rng: random.Random, span: int = 6, denominator: int = 4) -> Fraction:
    den = rng.randint(1, denominator)
    return Fraction(rng.randint(-span * den, span * den), den)


def rand_poly(rng: random.Random, max_terms: int = 5, span: int = 6,
              denominator: int = 4) -> NovikovPoly:
    pairs = []
    for _ in range(rng.randint(0, max_terms)):
        coeff = rng.choice([-3, -2, -1, 1, 2, 3])
        pairs.append((rand_fraction(rng, span, denominator), coeff))
    return NovikovPoly(pairs)


def rand_barcode(rng: random.Random, max_bars: int = 4, degrees=(-1, 2),
                 finite_only: bool = False) -> GradedBarcode:
    bars = []
    for _ in range(rng.randint(0, max_bars)):
        degree = rng.randint(*degrees)
        birth = rand_fraction(rng)
        if not finite_only and rng.random() < 0.3:
            death = INF
        else:
            death = birth + Fraction(rng.randint(1, 8), rng.randint(1, 4))
        bars.append((degree, birth, death, rng.randint(1, 2)))
    return GradedBarcode(bars)


def jitter_barcode(rng: random.Random, barcode: GradedBarcode,
                   tau: Fraction) -> GradedBarcode:
    """Perturb endpoints by at most tau, preserving degrees and finiteness."""
    bars = []
    for degree, birth, death, mult in barcode.bars():
        eps = Fraction(rng.randint(-4, 4), 4) * tau / 1
        birth2 = birth + min(max(eps, -tau), tau)
        if death == INF:
            bars.append((degree, birth2, INF, mult))
        else:
            eps2 = Fraction(rng.randint(-4, 4), 4) * tau / 1
            death2 = death + min(max(eps2, -tau), tau)
            if birth2 < death2:
                bars.append((degree, birth2, death2, mult))
    return GradedBarcode(bars)
