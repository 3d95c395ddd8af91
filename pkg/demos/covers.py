"""
Covers and quotients
====================

The projective-plane 2-graph has a two-sheeted cover with the homology of
a sphere.  Dividing out the deck action gives the original graph back.
"""

from khom.constructors import (GroupSpec, canonical_action, isomorphic,
                               quotient_by_action, skew_product)
from khom.corpus import bundled
from khom.homology import homology_groups
from khom.kgraph import KGraph

P = KGraph(bundled("projective"))
print("projective:", [str(h) for h in homology_groups(P).summary])

Z2 = GroupSpec.cyclic(2)
labels = {e: (0 if e in "bcg" else 1) for e in P.edge}
cover = KGraph(skew_product(P, Z2, labels))
print("cover:     ", [str(h) for h in homology_groups(cover).summary])
print("vertices:  ", len(P.vertices), "->", len(cover.vertices))

q, projection = quotient_by_action(canonical_action(P, Z2, labels))
print("quotient is the projective graph again:", isomorphic(q, P))
