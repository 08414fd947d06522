"""Shared fixtures and independent reference implementations.

The reference determinant (Leibniz sum), reference Pfaffian (sum over
pairings weighted by chord-crossing parity) and the crossing-target
builder live here so every test file checks the library against something
it does not share code with.
"""

from fractions import Fraction
from itertools import permutations
from random import Random

import pytest

import kasteleyn as K


def leibniz_det(m: K.RatMatrix) -> Fraction:
    n = m.shape[0]
    total = Fraction(0)
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = Fraction(sign)
        for i in range(n):
            term *= m[i, perm[i]]
        total += term
    return total


def _pairings(items):
    if not items:
        yield []
        return
    first = items[0]
    for idx in range(1, len(items)):
        rest = items[1:idx] + items[idx + 1:]
        for tail in _pairings(rest):
            yield [(first, items[idx])] + tail


def reference_pfaffian(x: K.SkewMatrix) -> Fraction:
    """Sum over perfect pairings with chord-crossing parity signs."""
    n = x.dimension
    if n == 0:
        return Fraction(1)
    if n % 2:
        return Fraction(0)
    total = Fraction(0)
    for pairing in _pairings(list(range(n))):
        crossings = 0
        for a in range(len(pairing)):
            for b in range(a + 1, len(pairing)):
                (i1, j1), (i2, j2) = pairing[a], pairing[b]
                lo1, hi1 = min(i1, j1), max(i1, j1)
                lo2, hi2 = min(i2, j2), max(i2, j2)
                if lo1 < lo2 < hi1 < hi2 or lo2 < lo1 < hi2 < hi1:
                    crossings += 1
        term = Fraction(-1 if crossings % 2 else 1)
        for i, j in pairing:
            term *= x[min(i, j), max(i, j)]
        total += term
    return total


def random_skew(rng: Random, n: int, span: int = 4) -> K.SkewMatrix:
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = Fraction(rng.randrange(-span, span + 1))
            rows[i][j] = v
            rows[j][i] = -v
    return K.skew(rows)


def random_weights(g: K.GraphWithBoundary, seed: int) -> dict:
    rng = Random(f"weights:{seed}")
    return {
        e: Fraction(rng.randrange(1, 17), rng.randrange(1, 17)) for e in g.sorted_edges
    }


def crossing_target(g: K.GraphWithBoundary, c, seed: int):
    """Swap two free vertex positions and jitter until the drawing crosses.

    Returns an immersion that is deliberately not an embedding.  Boundary
    vertices keep their circle positions and free vertices stay strictly
    inside the disc, so the result is still a valid transport target.
    """
    rng = Random(f"cross:{seed}")
    movable = [v for v in g.vertices if v not in g.boundary_set]
    if len(movable) < 2:
        raise RuntimeError("need at least two movable vertices")

    def inside(p):
        return p[0] * p[0] + p[1] * p[1] < 1

    for _ in range(400):
        i, j = rng.sample(range(len(movable)), 2)
        cand = dict(c)
        cand[movable[i]], cand[movable[j]] = cand[movable[j]], cand[movable[i]]
        for v in movable:
            p = cand[v]
            cand[v] = (
                p[0] + Fraction(rng.randrange(-64, 65), 4096),
                p[1] + Fraction(rng.randrange(-64, 65), 4096),
            )
        if g.boundary and not all(inside(cand[v]) for v in movable):
            continue
        if K.is_immersion(g, cand) and not K.is_embedding(g, cand):
            return cand
    raise RuntimeError("no crossing target found")


@pytest.fixture
def fan():
    """Two blacks fanning to four boundary whites; k=2, n=4, N=0."""
    g = K.make_graph(
        ["b1", "b2", "a", "b", "c", "d"],
        {"b1": "black", "b2": "black", "a": "white", "b": "white",
         "c": "white", "d": "white"},
        [("b1", "a"), ("b1", "b"), ("b2", "b"), ("b2", "c"), ("b2", "d")],
        boundary=["a", "b", "c", "d"],
    )
    c = {
        "a": (Fraction(1), Fraction(0)),
        "b": (Fraction(0), Fraction(1)),
        "c": (Fraction(-1), Fraction(0)),
        "d": (Fraction(0), Fraction(-1)),
        "b1": (Fraction(1, 4), Fraction(1, 4)),
        "b2": (Fraction(-1, 4), Fraction(-1, 8)),
    }
    return g, c


@pytest.fixture
def boundary_cycle():
    """General 4-cycle with every vertex on the boundary circle."""
    g = K.make_graph(
        ["v1", "v2", "v3", "v4"],
        {},
        [("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v1")],
        boundary=["v1", "v2", "v3", "v4"],
    )
    c = {
        "v1": (Fraction(1), Fraction(0)),
        "v2": (Fraction(0), Fraction(1)),
        "v3": (Fraction(-1), Fraction(0)),
        "v4": (Fraction(0), Fraction(-1)),
    }
    return g, c


@pytest.fixture
def bowtie():
    """Complete bipartite 2x2 drawn with one crossing pair of edges."""
    g = K.make_graph(
        ["b1", "b2", "w1", "w2"],
        {"b1": "black", "b2": "black", "w1": "white", "w2": "white"},
        [("b1", "w1"), ("b1", "w2"), ("b2", "w1"), ("b2", "w2")],
    )
    c = {
        "b1": (Fraction(0), Fraction(0)),
        "b2": (Fraction(1), Fraction(0)),
        "w1": (Fraction(0), Fraction(1)),
        "w2": (Fraction(1), Fraction(1)),
    }
    return g, c


@pytest.fixture
def triangle():
    """Triangle with all three vertices on the boundary."""
    g = K.make_graph(
        ["v1", "v2", "v3"],
        {},
        [("v1", "v2"), ("v2", "v3"), ("v1", "v3")],
        boundary=["v1", "v2", "v3"],
    )
    c = {
        "v1": (Fraction(1), Fraction(0)),
        "v2": (Fraction(-3, 5), Fraction(4, 5)),
        "v3": (Fraction(-3, 5), Fraction(-4, 5)),
    }
    return g, c
