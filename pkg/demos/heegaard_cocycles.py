"""
Cocycles on a Heegaard-type 2-graph
===================================

The degree functor onto T_2 is a homology isomorphism, and every 2-cocycle
with values in Z/m is cohomologous to one pulled back from T_2.
"""

import itertools
from fractions import Fraction

from khom.cohomology import (Cochain, IntMod, RationalsModOne, cohomologous,
                             cohomology_groups, pullback_cocycle)
from khom.constructors import KGraphMorphism, t_k
from khom.corpus import bundled
from khom.homology import homology_groups, induced_on_homology
from khom.kgraph import KGraph

L = KGraph(bundled("heegaard"))
T2 = KGraph(t_k(2))
degree = KGraphMorphism(L, T2, {v: "v" for v in L.vertices},
                        {e: f"e{L.edge[e].colour}" for e in L.edge})

print("H_*:", [str(h) for h in homology_groups(L).summary])
print("degree functor iso on H_*:", all(h.is_isomorphism() for h in induced_on_homology(degree)))

m = 3
print(f"H^2(Z/{m}) =", cohomology_groups(L, IntMod(m))[2])
pulled = {theta: pullback_cocycle(degree, Cochain(2, IntMod(m), (theta,))) for theta in range(m)}
for vals in itertools.product(range(m), repeat=len(L.cubes(2))):
    phi = Cochain(2, IntMod(m), vals)
    theta = next(t for t, psi in pulled.items() if cohomologous(L, phi, psi) is not None)
    print(f"  {vals} ~ pullback of {theta}")

# rational angles work the same way
phi = pullback_cocycle(degree, Cochain(2, RationalsModOne(), (Fraction(1, 5),)))
print("pullback of 1/5:", [str(v) for v in phi.values])
