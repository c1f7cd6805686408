"""
Two tiles with every edge length different
==========================================

If all n lengths differ, each edge must be glued to the same label on the
other tile.  Only the signs remain free, and twisted labels cannot be
neighbours.
"""

# %%
from surftile import admissible_surfaces, two_tile_distinct_family
from surftile.convert import diagram_to_vertexset

# %%
for n in range(7, 13):
    fam = list(two_tile_distinct_family(n))
    names = sorted({s.name for _ks, _d, s in fam})
    print(f"n={n:2d}  members={len(fam):2d}  surfaces={names}")
    assert set(names) == {s.name for s in admissible_surfaces(n)}

# %% [markdown]
# The degree of each vertex is twice the gap between consecutive twisted labels.

# %%
for ks, d, surf in two_tile_distinct_family(9):
    print(ks.indices, surf.name, sorted(diagram_to_vertexset(d).degrees))
