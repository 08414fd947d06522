"""Boundary measurements as coordinates of a nonnegative Grassmannian point.

Row-reducing the bipartite boundary matrix against its internal columns
leaves a small k x n matrix L whose maximal minors are exactly the
boundary measurements.  Since each measurement is a count (or a sum of
positive weights), every minor is nonnegative: the measurement vector is
a point in the totally nonnegative part of the Grassmannian, and varying
the edge weights sweeps out a whole family of such points.
"""

from fractions import Fraction
from random import Random

import kasteleyn as K

g = K.make_graph(
    ["b1", "b2", "a", "b", "c", "d"],
    {"b1": "black", "b2": "black",
     "a": "white", "b": "white", "c": "white", "d": "white"},
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

matrix = K.kasteleyn_matrix(g, c)
point = K.grassmann_point(g, matrix)
print(f"two blacks fanning out to four boundary whites: k={point.k}, n={point.n}")
print("reduced boundary matrix L:")
for row in point.matrix.entries:
    print("   ", [str(x) for x in row])
print("maximal minors (colex order):")
for labels, value in point.plucker:
    print(f"    {''.join(labels)}: {value}")

report = K.check_plucker_three_term(point, ("a", "b", "c", "d"))
print(f"three-term relation: {report.lhs} = {report.rhs}  ({report.holds})")
kuo = K.check_kuo_bipartite(K.measurement_table(g, matrix), "a", "b", "c", "d")
print(f"condensation identity: {kuo.lhs} = {kuo.rhs}  ({kuo.holds})")

print()
print("random positive weights move the point but keep it nonnegative:")
rng = Random(2)
for trial in range(3):
    w = {e: Fraction(rng.randrange(1, 9), rng.randrange(1, 9)) for e in g.sorted_edges}
    weighted = K.grassmann_point(g, K.kasteleyn_matrix(g, c, weights=w))
    coords = ", ".join(str(v) for _, v in weighted.plucker)
    assert all(v >= 0 for _, v in weighted.plucker)
    print(f"    ({coords})")
