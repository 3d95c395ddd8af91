"""Homology of k-graphs: groups, induced maps, cones, exact sequences, trails."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .abelian import (FgAbelianGroup, GroupHom, IntMatrix, PresentedGroup,
                      binary_functor, direct_sum, homology_of_pair, induced_hom,
                      is_exact_at, sparse_invariant_factors)
from .constructors import (KGraphMorphism, _graph, cartesian_product,
                           crossed_product, morphism_check)
from .errors import NotACycle, NotChainMap, NotWellDefined
from .kgraph import Chain, ChainComplex, Cube, KGraph


@dataclass
class HomologyProfile:
  """H_0..H_k, each a presented group whose generators are cycles."""
  groups: list[PresentedGroup]
  complex: ChainComplex
  name: str = ""

  def __getitem__(self, r: int) -> PresentedGroup:
    return self.groups[r] if 0 <= r < len(self.groups) else PresentedGroup.trivial()

  def __len__(self):
    return len(self.groups)

  @property
  def summary(self) -> list[FgAbelianGroup]:
    return [h.group for h in self.groups]

  @property
  def euler(self) -> int:
    return self.complex.euler()

  def representatives(self, r: int) -> list[tuple[int, Chain]]:
    """(order, cycle) per invariant-factor summand of H_r; order 0 means Z."""
    return [(d, Chain(r, tuple(v))) for d, v in self[r].generators()]

  def to_json(self) -> dict:
    return {"graph": self.name, "H": [g.to_json() for g in self.summary], "euler": self.euler}


def complex_homology(cc: ChainComplex) -> list[PresentedGroup]:
  return [homology_of_pair(cc.boundary(r), cc.boundary(r + 1)) for r in range(cc.top + 1)]


def homology_groups(g) -> HomologyProfile:
  g = _graph(g)
  cc = g.complex
  return HomologyProfile(complex_homology(cc), cc, g.name)


@dataclass
class SummaryReport:
  groups: list[FgAbelianGroup]
  max_bits: int
  euler: int


def homology_summary(g_or_cc) -> SummaryReport:
  """Iso classes of H_* via sparse elimination; no representatives.

  Meant for complexes too large for the dense route.
  """
  cc = g_or_cc if isinstance(g_or_cc, ChainComplex) else _graph(g_or_cc).complex
  ranks, torsion, bits = {}, {}, 0
  for r in range(1, cc.top + 1):
    rep = sparse_invariant_factors(cc.sparse(r), cc.rank(r - 1))
    ranks[r], torsion[r] = rep.rank, rep.torsion
    bits = max(bits, rep.max_bits)
  groups = []
  for r in range(cc.top + 1):
    free = cc.rank(r) - ranks.get(r, 0) - ranks.get(r + 1, 0)
    groups.append(FgAbelianGroup(free, tuple(torsion.get(r + 1, ()))))
  return SummaryReport(groups, bits, cc.euler())


def chain_map(m: KGraphMorphism) -> list[IntMatrix]:
  """Matrices of the cube-to-cube chain map, one per degree."""
  A, B = m.source, m.target
  out = []
  for r in range(A.k + 1):
    idx = B.index(r)
    cols = [[0] * len(B.cubes(r)) for _ in A.cubes(r)]
    for j, c in enumerate(A.cubes(r)):
      cols[j][idx[m.cube(c)]] = 1
    out.append(IntMatrix.from_columns(cols, len(B.cubes(r))))
  return out


def induced_on_homology(m: KGraphMorphism, source: HomologyProfile | None = None,
                        target: HomologyProfile | None = None) -> list[GroupHom]:
  rep = morphism_check(m)
  if not rep.ok:
    raise NotWellDefined(str(rep))
  hs = source or homology_groups(m.source)
  ht = target or homology_groups(m.target)
  return [induced_hom(f, hs[r], ht[r]) for r, f in enumerate(chain_map(m))]


# --- mapping cones -----------------------------------------------------------

def check_chain_map(A: ChainComplex, B: ChainComplex, f: Sequence[IntMatrix]) -> None:
  top = max(A.top, B.top)
  fm = lambda r: f[r] if 0 <= r < len(f) else IntMatrix.zeros(B.rank(r), A.rank(r))
  for r in range(top + 1):
    if fm(r).shape != (B.rank(r), A.rank(r)):
      raise NotChainMap(f"degree {r} map has shape {fm(r).shape}")
  for r in range(1, top + 1):
    if B.boundary(r) @ fm(r) != fm(r - 1) @ A.boundary(r):
      raise NotChainMap(f"map does not commute with the boundary in degree {r}")


def mapping_cone(A: ChainComplex, B: ChainComplex, f: Sequence[IntMatrix]) -> ChainComplex:
  """M_r = A_{r-1} + B_r with boundary (a, b) -> (-d a, d b + f a)."""
  check_chain_map(A, B, f)
  top = max(A.top + 1, B.top)
  ranks = [A.rank(r - 1) + B.rank(r) for r in range(top + 1)]
  fm = lambda r: f[r] if 0 <= r < len(f) else IntMatrix.zeros(B.rank(r), A.rank(r))
  columns = {}
  for r in range(1, top + 1):
    off = A.rank(r - 2)  # B_{r-1} sits after A_{r-2} in M_{r-1}
    cols = []
    for j in range(A.rank(r - 1)):
      col = {i: -v for i, v in A.sparse(r - 1)[j].items()} if r >= 2 else {}
      for i, v in enumerate(fm(r - 1).column(j)):
        if v:
          col[off + i] = v
      cols.append(col)
    for j in range(B.rank(r)):
      cols.append({off + i: v for i, v in B.sparse(r)[j].items()})
    columns[r] = cols
  cc = ChainComplex(ranks, columns)
  cc.check()
  return cc


def automorphism_matrices(g: KGraph, alpha: KGraphMorphism) -> list[IntMatrix]:
  return chain_map(KGraphMorphism(g, g, alpha.vmap, alpha.emap))


@dataclass
class CrossedCone:
  """The crossed product, the cone of alpha^-1 - 1, and the chain isomorphism psi."""
  crossed: KGraph
  cone: ChainComplex
  psi: list[IntMatrix]
  intertwines: bool


def _signed_permutation(P: IntMatrix) -> bool:
  if P.rows != P.cols:
    return False
  rows = P.to_lists()
  return all(sorted(map(abs, r)) == [0] * (P.cols - 1) + [1] for r in rows) and \
      all(sorted(map(abs, P.column(j))) == [0] * (P.rows - 1) + [1] for j in range(P.cols))


def _split_crossed(g: KGraph, cp: KGraph, c: Cube):
  """(cube of g, 0) or (cube of g, 1) for a cube of the crossed product."""
  if c.rank and c.colours[-1] == cp.k:
    if c.rank == 1:
      return Cube((), (cp.edge[c.path[0]].range,)), 1
    return g.cube_of(c.path[:-1]), 1
  return c, 0


def crossed_cone(g, alpha: KGraphMorphism) -> CrossedCone:
  g = _graph(g)
  cp = KGraph(crossed_product(g, alpha))
  C = g.complex
  inv = automorphism_matrices(g, alpha.inverse())
  f = [P - IntMatrix.identity(P.rows) for P in inv]
  cone = mapping_cone(C, C, f)
  psi = []
  for r in range(cp.k + 1):
    rows = cone.rank(r)
    cols = []
    for c in cp.cubes(r):
      lam, layer = _split_crossed(g, cp, c)
      col = [0] * rows
      if layer == 0:
        col[C.rank(r - 1) + g.index(r)[lam]] = 1
      else:
        col[g.index(r - 1)[lam]] = (-1) ** (r - 1)
      cols.append(col)
    psi.append(IntMatrix.from_columns(cols, rows))
  D = cp.complex
  ok = all(psi[r - 1] @ D.boundary(r) == cone.boundary(r) @ psi[r]
           for r in range(1, cp.k + 1)) and cone.top <= cp.k
  ok = ok and all(_signed_permutation(P) for P in psi)
  return CrossedCone(cp, cone, psi, ok)


@dataclass
class ExactnessNode:
  label: str
  exact: bool


@dataclass
class PVReport:
  base: HomologyProfile
  crossed: HomologyProfile
  nodes: list[ExactnessNode] = field(default_factory=list)
  maps: list[tuple[str, GroupHom]] = field(default_factory=list)

  @property
  def ok(self) -> bool:
    return all(n.exact for n in self.nodes)


def pv_verify(g, alpha: KGraphMorphism) -> PVReport:
  """Build the long exact sequence of the crossed product and test every node."""
  g = _graph(g)
  cp = KGraph(crossed_product(g, alpha))
  k = g.k
  HA = homology_groups(g)
  HC = homology_groups(cp)
  P = automorphism_matrices(g, alpha)

  def one_minus_alpha(r):
    M = IntMatrix.identity(P[r].rows) - P[r]
    return induced_hom(M, HA[r], HA[r])

  def iota(r):
    cols = []
    idx = cp.index(r)
    for c in g.cubes(r):
      col = [0] * len(cp.cubes(r))
      col[idx[c]] = 1
      cols.append(col)
    return induced_hom(IntMatrix.from_columns(cols, len(cp.cubes(r))), HA[r], HC[r])

  def pi(r):  # H_{r+1}(cp) -> H_r(g)
    cols = []
    idx = g.index(r)
    for c in cp.cubes(r + 1):
      lam, layer = _split_crossed(g, cp, c)
      col = [0] * len(g.cubes(r))
      if layer:
        col[idx[lam]] = (-1) ** r
      cols.append(col)
    return induced_hom(IntMatrix.from_columns(cols, len(g.cubes(r))), HC[r + 1], HA[r])

  zero = PresentedGroup.trivial()
  maps = [(f"0 -> H{k + 1}(cp)", GroupHom.zero(zero, HC[k + 1]))]
  for r in range(k, -1, -1):
    maps.append((f"pi: H{r + 1}(cp) -> H{r}", pi(r)))
    maps.append((f"1-alpha: H{r} -> H{r}", one_minus_alpha(r)))
    maps.append((f"iota: H{r} -> H{r}(cp)", iota(r)))
  maps.append(("H0(cp) -> 0", GroupHom.zero(HC[0], zero)))
  rep = PVReport(HA, HC, maps=maps)
  for (la, a), (lb, b) in zip(maps, maps[1:]):
    rep.nodes.append(ExactnessNode(f"{la} | {lb}", is_exact_at(a, b)))
  return rep


# --- Kunneth -------------------------------------------------------------------

@dataclass
class KunnethReport:
  expected: list[FgAbelianGroup]
  actual: list[FgAbelianGroup]
  tensor_only: list[FgAbelianGroup]
  torsion_free_factor: bool

  @property
  def ok(self) -> bool:
    return self.expected == self.actual

  @property
  def shortcut_ok(self) -> bool:
    """With a torsion-free factor the Tor terms vanish."""
    return not self.torsion_free_factor or self.tensor_only == self.actual


def kunneth_verify(A, B) -> KunnethReport:
  A, B = _graph(A), _graph(B)
  ha = homology_summary(A).groups
  hb = homology_summary(B).groups
  actual = homology_summary(KGraph(cartesian_product(A, B))).groups
  top = A.k + B.k
  tensor, expected = [], []
  for r in range(top + 1):
    t = direct_sum(binary_functor("tensor", ha[p], hb[r - p])
                   for p in range(r + 1) if p < len(ha) and r - p < len(hb))
    tor = direct_sum(binary_functor("tor", ha[p], hb[r - 1 - p])
                     for p in range(r) if p < len(ha) and r - 1 - p < len(hb))
    tensor.append(t)
    expected.append(t + tor)
  free = all(h.is_torsion_free() for h in ha) or all(h.is_torsion_free() for h in hb)
  return KunnethReport(expected, actual, tensor, free)


# --- trails --------------------------------------------------------------------

@dataclass(frozen=True)
class Trail:
  """Undirected edge path; sign +1 walks from range to source, -1 the other way."""
  steps: tuple[tuple[str, int], ...]

  def ends(self, g: KGraph, i: int) -> tuple[str, str]:
    e, m = self.steps[i]
    edge = g.edge[e]
    return (edge.range, edge.source) if m == 1 else (edge.source, edge.range)

  def chain(self, g: KGraph) -> Chain:
    idx = g.index(1)
    coeffs = [0] * len(idx)
    for e, m in self.steps:
      coeffs[idx[g.cube_of((e,))]] += m
    return Chain(1, tuple(coeffs))

  def is_path(self, g: KGraph) -> bool:
    return all(self.ends(g, i)[1] == self.ends(g, i + 1)[0] for i in range(len(self.steps) - 1))

  def is_closed(self, g: KGraph) -> bool:
    return bool(self.steps) and self.is_path(g) and self.ends(g, 0)[0] == self.ends(g, -1)[1]

  def is_simple(self, g: KGraph) -> bool:
    heads = [self.ends(g, i)[1] for i in range(len(self.steps))]
    return len(set(heads)) == len(heads)


def trail_decompose(g, a: Chain | Sequence[int]) -> list[tuple[int, Trail]]:
  """Write a 1-cycle as a positive combination of simple closed trails.

  Walk from the first edge with nonzero coefficient, always continuing along
  the lowest-index edge whose signed coefficient cancels at the current
  vertex, until a vertex repeats; peel off that loop and start again.
  """
  g = _graph(g)
  coeffs = list(a.coeffs if isinstance(a, Chain) else a)
  edges = [c.path[0] for c in g.cubes(1)]
  if len(coeffs) != len(edges):
    raise ValueError("chain length does not match the number of edges")
  if any(g.complex.apply(1, coeffs)):
    raise NotACycle("the chain has nonzero boundary")

  def head(i, p):  # r(f, p)
    e = g.edge[edges[i]]
    return e.range if p == 1 else e.source

  def tail(i, p):  # s(f, p)
    e = g.edge[edges[i]]
    return e.source if p == 1 else e.range

  out = []
  while any(coeffs):
    i = next(j for j, x in enumerate(coeffs) if x)
    p = 1 if coeffs[i] > 0 else -1
    walk = [(i, p)]
    visited = [head(i, p), tail(i, p)]
    while visited[-1] not in visited[:-1]:
      v = visited[-1]
      i = next(j for j, x in enumerate(coeffs) if x and head(j, 1 if x > 0 else -1) == v)
      p = 1 if coeffs[i] > 0 else -1
      walk.append((i, p))
      visited.append(tail(i, p))
    q = visited.index(visited[-1])
    loop = walk[q:]
    m = min(abs(coeffs[j]) for j, _ in loop)
    for j, s in loop:
      coeffs[j] -= m * s
    out.append((m, Trail(tuple((edges[j], s) for j, s in loop))))
  return out


def trail_weight(coeffs: Sequence[int]) -> int:
  """N(a): the sum of absolute coefficients."""
  return sum(abs(x) for x in coeffs)
