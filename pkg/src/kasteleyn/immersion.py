"""Vertex configurations in the plane and the canonical start drawings.

A configuration maps every vertex to an exact point.  Membership tests
distinguish three nested classes: generic configurations (distinct vertex
images, no two edges overlapping in a segment), immersions (additionally
no vertex on a non-incident closed edge) and embeddings (additionally no
edge crossings).  Disc embeddings pin the boundary on the unit circle in
its circular order with everything else strictly inside.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from random import Random

from .geometry import (
    Point,
    SegmentRelation,
    circle_sort_key,
    inside_unit_circle,
    on_unit_circle,
    orient,
    segment_relation,
    unit_circle_param,
    unit_circle_point,
)
from .graphs import BLACK, WHITE, GraphWithBoundary, Matching

Configuration = dict  # vertex id -> Point

BIPARTITE_CLOSED = "bipartite_closed"
BIPARTITE_BOUNDARY = "bipartite_boundary"
GENERAL_CLOSED = "general_closed"
GENERAL_BOUNDARY = "general_boundary"
MODES = (BIPARTITE_CLOSED, BIPARTITE_BOUNDARY, GENERAL_CLOSED, GENERAL_BOUNDARY)


class DegenerateDrawing(Exception):
    """A crossing count was requested for overlapping or touching edges."""


@dataclass(frozen=True)
class PathPlan:
    """Piecewise-linear deformation: waypoint configurations, pinned ids."""

    waypoints: tuple
    pinned: frozenset

    @property
    def segments(self) -> int:
        return len(self.waypoints) - 1


def _check_total(g: GraphWithBoundary, c: Configuration) -> None:
    missing = [v for v in g.vertices if v not in c]
    if missing:
        raise ValueError(f"configuration misses vertices {missing}")


def _segment(c: Configuration, e) -> tuple[Point, Point]:
    return (c[e[0]], c[e[1]])


def is_generic(g: GraphWithBoundary, c: Configuration) -> bool:
    """Distinct vertex images and no two edges overlapping in a segment."""
    _check_total(g, c)
    pts = [c[v] for v in g.vertices]
    if len(set(pts)) != len(pts):
        return False
    edges = g.sorted_edges
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            s1, s2 = _segment(c, edges[i]), _segment(c, edges[j])
            if orient(s1[0], s1[1], s2[0]) == 0 and orient(s1[0], s1[1], s2[1]) == 0:
                axis = 0 if s1[0][0] != s1[1][0] else 1
                a1, b1 = sorted((s1[0][axis], s1[1][axis]))
                a2, b2 = sorted((s2[0][axis], s2[1][axis]))
                if max(a1, a2) < min(b1, b2):
                    return False
    return True


def is_immersion(g: GraphWithBoundary, c: Configuration) -> bool:
    """Every edge has positive length and no vertex sits on a non-incident edge."""
    _check_total(g, c)
    for u, v in g.sorted_edges:
        if c[u] == c[v]:
            return False
    for u, v in g.sorted_edges:
        a, b = c[u], c[v]
        for w in g.vertices:
            if w in (u, v):
                continue
            p = c[w]
            if orient(a, b, p) != 0:
                continue
            d1 = (p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1])
            d2 = (p[0] - b[0]) * (a[0] - b[0]) + (p[1] - b[1]) * (a[1] - b[1])
            if d1 >= 0 and d2 >= 0:
                return False
    return True


def is_embedding(g: GraphWithBoundary, c: Configuration) -> bool:
    """Crossing-free immersion: a planar straight-line drawing."""
    if not is_immersion(g, c):
        return False
    edges = g.sorted_edges
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            e1, e2 = edges[i], edges[j]
            rel = segment_relation(_segment(c, e1), _segment(c, e2))
            adjacent = bool(set(e1) & set(e2))
            if adjacent:
                if rel is not SegmentRelation.SHARED_ENDPOINT_ONLY:
                    return False
            elif rel is not SegmentRelation.DISJOINT:
                return False
    return True


def boundary_in_ccw_order(g: GraphWithBoundary, c: Configuration) -> bool:
    """Boundary images on the unit circle in the declared circular order."""
    if not g.boundary:
        return True
    for b in g.boundary:
        if not on_unit_circle(c[b]):
            return False
    ccw = sorted(g.boundary, key=lambda b: circle_sort_key(c[b]))
    start = ccw.index(g.boundary[0])
    rotated = ccw[start:] + ccw[:start]
    return tuple(rotated) == g.boundary


def is_disc_embedding(g: GraphWithBoundary, c: Configuration) -> bool:
    """Embedding with the boundary on the unit circle, in order, rest inside."""
    _check_total(g, c)
    if not boundary_in_ccw_order(g, c):
        return False
    for v in g.internal_vertices:
        if not inside_unit_circle(c[v]):
            return False
    return is_embedding(g, c)


def crossing_number(g: GraphWithBoundary, c: Configuration, m: Matching) -> int:
    """Number of pairs of matching edges whose segments cross."""
    edges = sorted(m)
    crossings = 0
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            rel = segment_relation(_segment(c, edges[i]), _segment(c, edges[j]))
            if rel is SegmentRelation.TRANSVERSAL_CROSS:
                crossings += 1
            elif rel is not SegmentRelation.DISJOINT:
                raise DegenerateDrawing(
                    f"edges {edges[i]} and {edges[j]} meet degenerately ({rel.value})"
                )
    return crossings


def matching_sign(g: GraphWithBoundary, c: Configuration, m: Matching) -> int:
    return -1 if crossing_number(g, c, m) % 2 else 1


def scale_to_unit_disc(c: Configuration, margin: Fraction = Fraction(1, 8)) -> Configuration:
    """Affinely squeeze a configuration into the open unit disc."""
    xs = [p[0] for p in c.values()]
    ys = [p[1] for p in c.values()]
    cx = (min(xs) + max(xs)) / 2
    cy = (min(ys) + max(ys)) / 2
    # |p|_2 <= |p|_1, so the L1 radius bounds the euclidean one exactly.
    radius = max(
        (abs(p[0] - cx) + abs(p[1] - cy) for p in c.values()), default=Fraction(0)
    )
    scale = radius * (1 + margin) if radius else Fraction(1)
    return {v: ((p[0] - cx) / scale, (p[1] - cy) / scale) for v, p in c.items()}


def snap_to_circle(p: Point, max_denominator: int = 1 << 12) -> Point:
    """Nearest bounded-denominator rational circle point (half-angle grid)."""
    if p == (Fraction(-1), Fraction(0)):
        return p
    t = Fraction(p[1], 1 + p[0]).limit_denominator(max_denominator)
    return unit_circle_point(t)


def _mode_of(g: GraphWithBoundary, bipartite: bool) -> str:
    if bipartite:
        return BIPARTITE_BOUNDARY if g.boundary else BIPARTITE_CLOSED
    return GENERAL_BOUNDARY if g.boundary else GENERAL_CLOSED


def detect_mode(g: GraphWithBoundary) -> str:
    colored = [v for v in g.vertices if g.color[v] != "plain"]
    if colored and len(colored) != len(g.vertices):
        raise ValueError("graph mixes colored and uncolored vertices")
    return _mode_of(g, bipartite=bool(colored))


def _jitter(rng: Random) -> Fraction:
    return Fraction(rng.randrange(1 << 16), 1 << 16)


def _arc_parameters(p_from: Point, p_to: Point, m: int, rng: Random) -> list[Fraction]:
    """m half-angle parameters strictly inside the ccw arc p_from -> p_to."""
    if m == 0:
        return []
    t_from = unit_circle_param(p_from)
    t_to = unit_circle_param(p_to)
    if t_from is None:
        # Arc starts at (-1, 0): climb towards t_to from below.
        return [t_to - (m + 1) + j + _jitter(rng) / 2 for j in range(1, m + 1)]
    if t_to is None or t_from >= t_to:
        # Arc wraps through (-1, 0): stay on the near side of the wrap.
        return [t_from + j + _jitter(rng) / 2 for j in range(1, m + 1)]
    step = (t_to - t_from) / (m + 1)
    return [t_from + j * step + _jitter(rng) * step / 2 for j in range(1, m + 1)]


def bipartite_vertex_classes(g: GraphWithBoundary) -> tuple[list, list]:
    """Row/column vertex orders: blacks, then internal whites + boundary."""
    blacks = [v for v in g.vertices if g.color[v] == BLACK]
    internal_whites = [
        v for v in g.vertices if g.color[v] == WHITE and v not in g.boundary_set
    ]
    return blacks, internal_whites + list(g.boundary)


def canonical_start(
    g: GraphWithBoundary, mode: str, target: Configuration, seed: int = 0
) -> Configuration:
    """The start drawing at which the all-plus-ones matrix is valid.

    Closed bipartite graphs start on two parallel lines (blacks above
    whites, both in index order); closed general graphs on the unit circle
    in index order.  With a boundary, the boundary vertices are pinned at
    their target circle positions and the free vertices go on the arc
    between the last and first boundary vertex so that the counterclockwise
    order reads: internal whites, boundary, blacks reversed (bipartite),
    or internal vertices then boundary (general).  At such a drawing the
    crossing count of every matching equals the inversion count of its
    determinant term (resp. the crossing parity of its Pfaffian term), so
    signs may start at +1 everywhere.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    rng = Random(f"start:{seed}")
    config: Configuration = {}
    if mode == BIPARTITE_CLOSED:
        blacks = [v for v in g.vertices if g.color[v] == BLACK]
        whites = [v for v in g.vertices if g.color[v] == WHITE]
        for i, v in enumerate(blacks):
            config[v] = (Fraction(i) + _jitter(rng) / 2, Fraction(1))
        for j, v in enumerate(whites):
            config[v] = (Fraction(j) + _jitter(rng) / 2, Fraction(0))
        return config
    if mode == GENERAL_CLOSED:
        for j, v in enumerate(g.vertices):
            config[v] = unit_circle_point(Fraction(j) + _jitter(rng) / 2)
        return config
    if not g.boundary:
        raise ValueError(f"mode {mode!r} needs a nonempty boundary")
    for b in g.boundary:
        if not on_unit_circle(target[b]):
            raise ValueError(f"target boundary vertex {b!r} is not on the unit circle")
        config[b] = target[b]
    if mode == BIPARTITE_BOUNDARY:
        blacks, _ = bipartite_vertex_classes(g)
        internal_whites = [
            v for v in g.vertices if g.color[v] == WHITE and v not in g.boundary_set
        ]
        free = list(reversed(blacks)) + internal_whites
    else:
        free = list(g.internal_vertices)
    params = _arc_parameters(target[g.boundary[-1]], target[g.boundary[0]], len(free), rng)
    for v, t in zip(free, params):
        config[v] = unit_circle_point(t)
    return config
