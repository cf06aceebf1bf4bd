"""Shared fixtures and generators for solvable weight families.

The generators build weight triples that solve the Yang-Baxter equation
by construction: a one-parameter family where every entry is a rational
function of two parameters (so all arithmetic stays in Fraction), plus
a diagonal twist that breaks the c/d symmetries without breaking the
equation.  Tests use these as positive instances; random weights from
random_weights are the generic negative instances.
"""

from fractions import Fraction
from pathlib import Path

import pytest

from vertexforms.grid import deserialize_state
from vertexforms.yangbaxter import VertexWeights

FIXTURES = Path(__file__).parent / "fixtures"


def load_state(name):
    return deserialize_state((FIXTURES / name).read_text())


@pytest.fixture
def rect_state():
    return load_state("rect_5x3.json")


@pytest.fixture
def torus_state():
    return load_state("torus_5x3.json")


def tanh_add(x: Fraction, y: Fraction) -> Fraction:
    return (x + y) / (1 + x * y)


def tanh_sub(x: Fraction, y: Fraction) -> Fraction:
    return (x - y) / (1 - x * y)


def baxter_weights(t: Fraction, h: Fraction) -> VertexWeights:
    """One point of a solvable family: (a, a, t, t, h, h, ath, ath).

    With a = (t + h)/(1 + th), triples taken at parameters (t1 - t2,
    t1, t2 combined through tanh_sub) and a shared h solve the
    Yang-Baxter equation; the addition law keeps every entry rational.
    """
    a = tanh_add(t, h)
    return VertexWeights(a, a, t, t, h, h, a * t * h, a * t * h)


def twist(w: VertexWeights, x: Fraction, y: Fraction) -> VertexWeights:
    """Diagonal gauge change: rescales c and d pairs in opposite directions."""
    return VertexWeights(
        w.a1, w.a_neg1, w.b1, w.b_neg1,
        w.c1 * y / x, w.c_neg1 * x / y,
        w.d1 / (x * y), w.d_neg1 * x * y,
    )


def solvable_triple(t1, t2, h, x, y, z, scales=(1, 1, 1)):
    """(R, S, T) solving the Yang-Baxter equation, twisted and rescaled."""
    r = twist(baxter_weights(tanh_sub(t1, t2), h), x, y)
    s = twist(baxter_weights(t1, h), x, z)
    t = twist(baxter_weights(t2, h), y, z)
    cr, cs, ct = scales
    return (
        VertexWeights(*(cr * v for v in r.as_vector())),
        VertexWeights(*(cs * v for v in s.as_vector())),
        VertexWeights(*(ct * v for v in t.as_vector())),
    )


def random_solvable_pair(rng):
    """Fully nonzero (S, T) from the twisted family, suitable for solve_R."""
    while True:
        t1 = Fraction(rng.randint(1, 9), rng.randint(10, 19))
        t2 = Fraction(rng.randint(1, 9), rng.randint(10, 19))
        if t1 == t2:
            continue
        h = Fraction(rng.randint(1, 9), rng.randint(10, 19))
        x = Fraction(rng.randint(1, 7), rng.randint(1, 7))
        y = Fraction(rng.randint(1, 7), rng.randint(1, 7))
        z = Fraction(rng.randint(1, 7), rng.randint(1, 7))
        scales = tuple(Fraction(rng.randint(1, 5)) for _ in range(3))
        try:
            r, s, t = solvable_triple(t1, t2, h, x, y, z, scales)
        except ZeroDivisionError:
            continue
        if any(v == 0 for w in (r, s, t) for v in w.as_vector()):
            continue
        return s, t


def random_solvable_triple(rng):
    """Fully nonzero (R, S, T) with zero commutator, for equivalence suites."""
    while True:
        t1 = Fraction(rng.randint(1, 9), rng.randint(10, 19))
        t2 = Fraction(rng.randint(1, 9), rng.randint(10, 19))
        if t1 == t2:
            continue
        h = Fraction(rng.randint(1, 9), rng.randint(10, 19))
        x = Fraction(rng.randint(1, 7), rng.randint(1, 7))
        y = Fraction(rng.randint(1, 7), rng.randint(1, 7))
        z = Fraction(rng.randint(1, 7), rng.randint(1, 7))
        try:
            triple = solvable_triple(t1, t2, h, x, y, z)
        except ZeroDivisionError:
            continue
        if any(v == 0 for w in triple for v in w.as_vector()):
            continue
        return triple


def random_weights(rng) -> VertexWeights:
    """Generic rational weights; almost never solve the equation."""
    return VertexWeights(*(
        Fraction(rng.randint(-6, 6), rng.randint(1, 6)) for _ in range(8)
    ))
