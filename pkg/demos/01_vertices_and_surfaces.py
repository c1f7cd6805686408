"""
From edge pairings to vertices and surfaces
===========================================

Two heptagons, seven glued edge pairs.  We trace the corners, read off the
surface, and try to give the prototile positive angles.
"""

# %%
from surftile import diagram, diagram_to_vertexset, classify_surface, edge_classes
from surftile.geomfilter import angle_feasible

d = diagram(7, 2, [
    (0, 1, 3, 1, +1), (6, 2, 2, 2, +1), (2, 1, 0, 2, -1), (4, 1, 3, 2, +1),
    (6, 1, 4, 2, -1), (1, 1, 1, 2, -1), (5, 1, 5, 2, +1),
])
print(d)

# %% [markdown]
# Every corner sits in exactly one vertex.  A vertex is a cycle of signed
# corners; reversing it and flipping every sign gives the same vertex.

# %%
v = diagram_to_vertexset(d)
for cyc in v.vertices:
    print(len(cyc), " ".join(map(repr, cyc)))

# %%
surf = classify_surface(d)
print(surf.name, "chi =", surf.chi, "orientable" if surf.orientable else "non-orientable")

# %% [markdown]
# Paired edges must have equal length, and since all tiles are congruent the
# length only depends on the label.

# %%
print(edge_classes(d).classes)

# %%
verdict = angle_feasible(v)
print("feasible:", verdict.feasible)
print("angles (full turns):", verdict.witness_strings())
