"""Sign transport works for crossing drawings too, not just planar ones.

The transported matrix always computes the crossing-signed sum over
matchings: at a planar drawing every sign is +1 and the determinant is
the count, while at a crossing drawing matchings can cancel.  The square
drawing of the complete bipartite graph on 2+2 vertices is the cleanest
example: its two matchings cross an odd and an even number of times, so
the determinant vanishes.
"""

from fractions import Fraction

import kasteleyn as K

F = Fraction

g = K.make_graph(
    ["b1", "b2", "w1", "w2"],
    {"b1": "black", "b2": "black", "w1": "white", "w2": "white"},
    [("b1", "w1"), ("b1", "w2"), ("b2", "w1"), ("b2", "w2")],
)
crossing = {
    "b1": (F(0), F(0)), "b2": (F(1), F(0)),
    "w1": (F(0), F(1)), "w2": (F(1), F(1)),
}
print("complete bipartite graph on 2+2 vertices, drawn on a square:")
print("  straight matching crosses 0 times, diagonal matching crosses once")
matrix = K.kasteleyn_matrix(g, crossing, require_embedded=False)
print(f"  det = {matrix.measurement(())}, signed sum = {K.signed_sum(g, crossing)}")
assert matrix.measurement(()) == 0

planar = {
    "b1": (F(0), F(0)), "b2": (F(3), F(0)),
    "w1": (F(1), F(1)), "w2": (F(2), F(-1)),
}
assert K.is_embedding(g, planar)
matrix = K.kasteleyn_matrix(g, planar)
print("same graph redrawn without crossings:")
print(f"  det = {matrix.measurement(())}, matchings = {K.oracle_measurement(g)}")

print()
print("a grid dragged into a tangle still satisfies the signed-sum law:")
g, c = K.generate_grid(2, 3)
tangled = dict(c)
tangled["g0x0"], tangled["g1x1"] = tangled["g1x1"], tangled["g0x0"]
assert K.is_immersion(g, tangled) and not K.is_embedding(g, tangled)
matrix = K.kasteleyn_matrix(g, tangled, require_embedded=False)
signed = K.signed_sum(g, tangled)
print(f"  det = {matrix.measurement(())}, signed sum = {signed}, "
      f"plain count = {K.oracle_measurement(g)}")
assert matrix.measurement(()) == signed
