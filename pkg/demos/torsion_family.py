"""
Torsion from a crossed product
==============================

Two parallel edges shifted by an automorphism produce a 2-graph with
Z/n torsion in degree one.  The exact sequence and the mapping cone agree.
"""

from khom.constructors import torsion_base, crossed_product
from khom.homology import crossed_cone, homology_groups, pv_verify
from khom.kgraph import KGraph

for n in range(2, 6):
    sk, shift = torsion_base(n)
    g = KGraph(sk)
    cp = KGraph(crossed_product(g, shift))
    print(f"n = {n}:", ", ".join(str(h) for h in homology_groups(cp).summary))

# every node of the long exact sequence, for n = 3
_, shift = torsion_base(3)
rep = pv_verify(shift.source, shift)
for node in rep.nodes:
    print(f"  {node.label:40s} {'exact' if node.exact else 'NOT exact'}")

# the cone of (alpha^-1 - 1) is isomorphic to the crossed product's complex
print("cone intertwines:", crossed_cone(shift.source, shift).intertwines)
