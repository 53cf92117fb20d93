import random
from fractions import Fraction
from pathlib import Path

import pytest

from zcurv.jets import Jet
from zcurv.superfield import SuperField

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def rng():
    return random.Random(20260809)


def random_fraction(rng, lo=-3, hi=3, max_den=3, nonzero=False):
    while True:
        value = Fraction(rng.randint(lo, hi), rng.randint(1, max_den))
        if value or not nonzero:
            return value


def random_jet(rng, base=(0, 0), order=6, terms=4, max_deg=None):
    max_deg = min(order, order if max_deg is None else max_deg)
    coeffs = {}
    for _ in range(terms):
        i = rng.randint(0, max_deg)
        j = rng.randint(0, max_deg - i)
        coeffs[(i, j)] = coeffs.get((i, j), Fraction(0)) + random_fraction(rng)
    return Jet(base, order, coeffs)


def random_poly_x(rng, base=(0, 0), order=9, degree=4, monic_slope=False):
    """Random polynomial in x with nonzero derivative body."""
    coeffs = {(0, 0): random_fraction(rng)}
    slope = Fraction(1) if monic_slope else random_fraction(rng, nonzero=True)
    coeffs[(1, 0)] = slope
    for d in range(2, degree + 1):
        c = random_fraction(rng)
        if c:
            coeffs[(d, 0)] = c
    return Jet(base, order, coeffs)


def random_poly_y(rng, base=(0, 0), order=9, degree=4):
    jet = random_poly_x(rng, base, order, degree)
    return Jet(base, order, {(j, i): v for (i, j), v in jet.coeffs.items()})


def random_superfield(rng, gens, base=(0, 0), order=5, parity=None,
                      comps=3, terms=3):
    n = len(gens)
    masks = [m for m in range(1 << n)
             if parity is None or m.bit_count() % 2 == parity]
    out: dict = {}
    for _ in range(comps):
        m = rng.choice(masks)
        jet = random_jet(rng, base, order, terms)
        out[m] = out[m] + jet if m in out else jet
    return SuperField(gens, base, order, out)
