"""Building new k-graphs out of old ones, morphisms, and standard examples."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import InfiniteIndex, NotAutomorphism, NotFree, NotFunctorial
from .kgraph import Cube, Edge, KGraph, Skeleton, Square, ValidationReport


def _graph(g) -> KGraph:
  return g if isinstance(g, KGraph) else KGraph(g)


def _fresh(base: str, taken: set[str]) -> str:
  name = base
  while name in taken:
    name += "_"
  taken.add(name)
  return name


def _pair_namer(pairs: Sequence[tuple[str, str]]):
  """Injective naming of pairs by joining with the shortest safe separator."""
  sep = "_"
  while True:
    names = {p: f"{p[0]}{sep}{p[1]}" for p in pairs}
    if len(set(names.values())) == len(names):
      return names
    sep += "_"


# --- groups ------------------------------------------------------------------

@dataclass(frozen=True)
class GroupSpec:
  """A finite group by Cayley table over elements g0..g{n-1}; g0 is the identity."""
  table: tuple[tuple[int, ...], ...]
  label: str = ""

  def __post_init__(self):
    object.__setattr__(self, "table", tuple(tuple(r) for r in self.table))
    n = len(self.table)
    if n == 0 or any(len(r) != n for r in self.table):
      raise ValueError("Cayley table must be square and nonempty")
    t = self.table
    if any(t[0][x] != x or t[x][0] != x for x in range(n)):
      raise ValueError("g0 is not the identity")
    for x in range(n):
      if sorted(t[x]) != list(range(n)):
        raise ValueError("Cayley table rows must be permutations")
    for x, y, z in itertools.product(range(n), repeat=3):
      if t[t[x][y]][z] != t[x][t[y][z]]:
        raise ValueError(f"not associative at g{x}, g{y}, g{z}")

  @property
  def order(self) -> int:
    return len(self.table)

  @property
  def elements(self) -> list[str]:
    return [f"g{i}" for i in range(self.order)]

  def mul(self, x: int, y: int) -> int:
    return self.table[x][y]

  def inv(self, x: int) -> int:
    return self.table[x].index(0)

  def index(self, name: str) -> int:
    if not (name.startswith("g") and name[1:].isdigit()) or int(name[1:]) >= self.order:
      raise ValueError(f"unknown group element {name!r}")
    return int(name[1:])

  @classmethod
  def cyclic(cls, m: int) -> "GroupSpec":
    if m < 1:
      raise ValueError("cyclic group order must be positive")
    return cls([[(x + y) % m for y in range(m)] for x in range(m)], f"z/{m}")

  @classmethod
  def product(cls, *groups: "GroupSpec") -> "GroupSpec":
    """Direct product; element tuples are numbered in lexicographic order."""
    tuples = list(itertools.product(*[range(g.order) for g in groups]))
    where = {t: i for i, t in enumerate(tuples)}
    table = [[where[tuple(g.mul(a, b) for g, a, b in zip(groups, s, t))] for t in tuples]
             for s in tuples]
    return cls(table, "x".join(g.label for g in groups))

  @classmethod
  def parse(cls, spec: str) -> "GroupSpec":
    """``z/2``, ``z/2xz/3`` or ``z/2,z/3``."""
    parts = [p.strip() for p in spec.replace(",", "x").split("x") if p.strip()]
    groups = []
    for p in parts:
      if not p.lower().startswith("z/"):
        raise ValueError(f"bad group spec {p!r}")
      groups.append(cls.cyclic(int(p[2:])))
    if not groups:
      raise ValueError("empty group spec")
    return groups[0] if len(groups) == 1 else cls.product(*groups)


# --- morphisms ---------------------------------------------------------------

@dataclass
class KGraphMorphism:
  """Colour-preserving map of skeletons, given on vertices and edges."""
  source: KGraph
  target: KGraph
  vmap: Mapping[str, str]
  emap: Mapping[str, str]

  def __post_init__(self):
    self.source = _graph(self.source)
    self.target = _graph(self.target)
    self.vmap = dict(self.vmap)
    self.emap = dict(self.emap)

  def cube(self, c: Cube) -> Cube:
    if c.rank == 0:
      return Cube((), (self.vmap[c.vertex],))
    return Cube(c.colours, tuple(self.emap[e] for e in c.path))

  def compose(self, first: "KGraphMorphism") -> "KGraphMorphism":
    """``self`` after ``first``."""
    return KGraphMorphism(first.source, self.target,
                          {v: self.vmap[w] for v, w in first.vmap.items()},
                          {e: self.emap[f] for e, f in first.emap.items()})

  def is_automorphism(self) -> bool:
    return morphism_check(self, automorphism=True).ok

  def inverse(self) -> "KGraphMorphism":
    return KGraphMorphism(self.target, self.source,
                          {w: v for v, w in self.vmap.items()},
                          {f: e for e, f in self.emap.items()})

  @classmethod
  def identity(cls, g) -> "KGraphMorphism":
    g = _graph(g)
    return cls(g, g, {v: v for v in g.vertices}, {e: e for e in g.edge})


GraphAutomorphism = KGraphMorphism


def morphism_check(m: KGraphMorphism, automorphism: bool = False) -> ValidationReport:
  rep = ValidationReport()
  A, B = m.source, m.target
  if A.k != B.k:
    rep.add("rank", f"ranks differ: {A.k} vs {B.k}")
    return rep
  for v in A.vertices:
    if m.vmap.get(v) not in B.skeleton.vertices:
      rep.add("vertex-map", f"vertex {v} has no valid image", v)
  for name, e in A.edge.items():
    f = B.edge.get(m.emap.get(name))
    if f is None:
      rep.add("edge-map", f"edge {name} has no valid image", name)
      continue
    if f.colour != e.colour:
      rep.add("colour", f"edge {name} changes colour", name)
    if f.range != m.vmap.get(e.range) or f.source != m.vmap.get(e.source):
      rep.add("endpoints", f"edge {name} is not sent compatibly with its endpoints", name)
  if not rep.ok:
    return rep
  for sq in A.skeleton.squares:
    img = (m.emap[sq.f1], m.emap[sq.g1])
    if B.swap.get(img) != (m.emap[sq.g2], m.emap[sq.f2]):
      rep.add("square", f"square {sq.f1} {sq.g1} = {sq.g2} {sq.f2} is not preserved", sq)
  if automorphism and rep.ok:
    if len(set(m.vmap.values())) != len(A.vertices) or len(B.vertices) != len(A.vertices):
      rep.add("bijective", "vertex map is not a bijection")
    if len(set(m.emap.values())) != len(A.edge) or len(B.edge) != len(A.edge):
      rep.add("bijective", "edge map is not a bijection")
    if rep.ok:
      inv = morphism_check(m.inverse())
      for v in inv.violations:
        rep.add("inverse", str(v))
  return rep


def find_isomorphism(A, B) -> KGraphMorphism | None:
  """Backtracking search for an isomorphism of skeletons."""
  A, B = _graph(A), _graph(B)
  sa, sb = A.skeleton, B.skeleton
  if (A.k, len(sa.vertices), len(sa.edges), len(sa.squares)) != \
     (B.k, len(sb.vertices), len(sb.edges), len(sb.squares)):
    return None

  def signature(sk):
    sig = {v: [] for v in sk.vertices}
    for e in sk.edges:
      sig[e.range].append((e.colour, "in", e.range == e.source))
      sig[e.source].append((e.colour, "out", e.range == e.source))
    return {v: tuple(sorted(s)) for v, s in sig.items()}

  siga, sigb = signature(sa), signature(sb)
  if sorted(siga.values()) != sorted(sigb.values()):
    return None

  # order A's edges so each one touches an earlier vertex where possible
  order: list[Edge] = []
  seen_v: set[str] = set()
  left = sorted(sa.edges, key=lambda e: e.name)
  while left:
    pick = next((e for e in left if e.range in seen_v or e.source in seen_v), left[0])
    left.remove(pick)
    order.append(pick)
    seen_v.update((pick.range, pick.source))
  squares_of: dict[str, list[Square]] = {}
  for sq in sa.squares:
    for n in (sq.f1, sq.g1, sq.g2, sq.f2):
      squares_of.setdefault(n, []).append(sq)
  b_by_colour: dict[int, list[Edge]] = {}
  for e in sorted(sb.edges, key=lambda e: e.name):
    b_by_colour.setdefault(e.colour, []).append(e)

  vmap: dict[str, str] = {}
  vinv: dict[str, str] = {}
  emap: dict[str, str] = {}
  used: set[str] = set()

  def fits(a, b):
    if vmap.get(a) is not None:
      return vmap[a] == b
    return b not in vinv and siga[a] == sigb[b]

  def squares_ok(name):
    for sq in squares_of.get(name, ()):
      if all(n in emap for n in (sq.f1, sq.g1, sq.g2, sq.f2)):
        if B.swap.get((emap[sq.f1], emap[sq.g1])) != (emap[sq.g2], emap[sq.f2]):
          return False
    return True

  def search(i):
    if i == len(order):
      return True
    e = order[i]
    for f in b_by_colour.get(e.colour, ()):
      if f.name in used or not fits(e.range, f.range):
        continue
      new = []
      if e.range not in vmap:
        vmap[e.range] = f.range
        vinv[f.range] = e.range
        new.append(e.range)
      if not fits(e.source, f.source):
        for v in new:
          del vinv[vmap.pop(v)]
        continue
      if e.source not in vmap:
        vmap[e.source] = f.source
        vinv[f.source] = e.source
        new.append(e.source)
      emap[e.name] = f.name
      used.add(f.name)
      if squares_ok(e.name) and search(i + 1):
        return True
      del emap[e.name]
      used.discard(f.name)
      for v in new:
        del vinv[vmap.pop(v)]
    return False

  if not search(0):
    return None
  rest_a = [v for v in sorted(sa.vertices) if v not in vmap]
  rest_b = [v for v in sorted(sb.vertices) if v not in vinv]
  for a, b in zip(rest_a, rest_b):
    vmap[a] = b
  m = KGraphMorphism(A, B, vmap, emap)
  assert morphism_check(m, automorphism=True).ok
  return m


def isomorphic(A, B) -> bool:
  return find_isomorphism(A, B) is not None


# --- constructions -----------------------------------------------------------

def cartesian_product(A, B) -> Skeleton:
  """Product k1+k2 graph; colours of B are shifted up by k1."""
  A, B = _graph(A), _graph(B)
  sa, sb = A.skeleton, B.skeleton
  vname = _pair_namer([(v, w) for v in sa.vertices for w in sb.vertices])
  ename = _pair_namer([(e.name, w) for e in sa.edges for w in sb.vertices] +
                      [(v, f.name) for v in sa.vertices for f in sb.edges])
  edges = []
  for e in sa.edges:
    for w in sb.vertices:
      edges.append(Edge(ename[e.name, w], e.colour, vname[e.range, w], vname[e.source, w]))
  for v in sa.vertices:
    for f in sb.edges:
      edges.append(Edge(ename[v, f.name], A.k + f.colour, vname[v, f.range], vname[v, f.source]))
  squares = []
  for sq in sa.squares:
    for w in sb.vertices:
      squares.append(Square(*(ename[n, w] for n in (sq.f1, sq.g1, sq.g2, sq.f2))))
  for v in sa.vertices:
    for sq in sb.squares:
      squares.append(Square(*(ename[v, n] for n in (sq.f1, sq.g1, sq.g2, sq.f2))))
  for e in sa.edges:
    for f in sb.edges:
      squares.append(Square(ename[e.name, f.range], ename[e.source, f.name],
                            ename[e.range, f.name], ename[e.name, f.source]))
  return Skeleton(A.k + B.k, [vname[p] for p in vname], edges, squares,
                  f"{A.name or 'A'}x{B.name or 'B'}")


def disjoint_union(A, B, prefixes=("L_", "R_")) -> Skeleton:
  A, B = _graph(A), _graph(B)
  if A.k != B.k:
    raise ValueError("disjoint union needs equal ranks")
  vs, es, qs = [], [], []
  for p, g in zip(prefixes, (A, B)):
    sk = g.skeleton
    vs += [p + v for v in sk.vertices]
    es += [Edge(p + e.name, e.colour, p + e.range, p + e.source) for e in sk.edges]
    qs += [Square(p + q.f1, p + q.g1, p + q.g2, p + q.f2) for q in sk.squares]
  return Skeleton(A.k, vs, es, qs, f"{A.name or 'A'}+{B.name or 'B'}")


def opposite(A) -> Skeleton:
  """Reverse every edge; ``f1 g1 = g2 f2`` becomes ``f2 g2 = g1 f1``."""
  sk = A.skeleton if isinstance(A, KGraph) else A
  return Skeleton(sk.k, sk.vertices,
                  [Edge(e.name, e.colour, e.source, e.range) for e in sk.edges],
                  [Square(q.f2, q.g2, q.g1, q.f1) for q in sk.squares],
                  f"{sk.name}_op" if sk.name else "")


def _skew_names(A: KGraph, G: GroupSpec):
  sk = A.skeleton
  vname = _pair_namer([(v, g) for v in sk.vertices for g in G.elements])
  ename = _pair_namer([(e.name, g) for e in sk.edges for g in G.elements])
  return vname, ename


def check_labelling(A, G: GroupSpec, c: Mapping[str, int]) -> list[Square]:
  """Squares on which the labelling fails to be multiplicative."""
  A = _graph(A)
  bad = []
  for sq in A.skeleton.squares:
    if G.mul(c[sq.f1], c[sq.g1]) != G.mul(c[sq.g2], c[sq.f2]):
      bad.append(sq)
  return bad


def skew_product(A, G: GroupSpec, c: Mapping[str, int]) -> Skeleton:
  """Cover with vertices (v, g); edge (e, g) runs from (s(e), g c(e)) to (r(e), g).

  ``c`` maps edge names to element indices (names ``gI`` are accepted too).
  """
  A = _graph(A)
  c = {e: (G.index(x) if isinstance(x, str) else x) for e, x in c.items()}
  missing = [e for e in A.edge if e not in c]
  if missing:
    raise NotFunctorial(f"edges without a label: {missing}")
  bad = check_labelling(A, G, c)
  if bad:
    q = bad[0]
    raise NotFunctorial(f"labels are not multiplicative on square {q.f1} {q.g1} = {q.g2} {q.f2}")
  vname, ename = _skew_names(A, G)
  els = G.elements
  sk = A.skeleton
  edges = [Edge(ename[e.name, els[g]], e.colour, vname[e.range, els[g]],
                vname[e.source, els[G.mul(g, c[e.name])]])
           for e in sk.edges for g in range(G.order)]
  squares = []
  for q in sk.squares:
    for g in range(G.order):
      h1 = G.mul(g, c[q.f1])
      h2 = G.mul(g, c[q.g2])
      squares.append(Square(ename[q.f1, els[g]], ename[q.g1, els[h1]],
                            ename[q.g2, els[g]], ename[q.f2, els[h2]]))
  return Skeleton(A.k, [vname[v, x] for v in sk.vertices for x in els], edges, squares,
                  f"{A.name or 'A'}_skew")


@dataclass
class FreeAction:
  """A group acting by automorphisms, element index -> automorphism."""
  group: GroupSpec
  graph: KGraph
  maps: dict[int, KGraphMorphism] = field(default_factory=dict)

  def __post_init__(self):
    self.graph = _graph(self.graph)
    self.maps.setdefault(0, KGraphMorphism.identity(self.graph))

  def check(self) -> None:
    """Raise unless this is a free action by automorphisms."""
    G, g = self.group, self.graph
    if set(self.maps) != set(range(G.order)):
      raise NotFree(f"action missing for elements {sorted(set(range(G.order)) - set(self.maps))}")
    for x, m in self.maps.items():
      if not morphism_check(m, automorphism=True).ok:
        raise NotAutomorphism(f"g{x} does not act by an automorphism")
    for x, y in itertools.product(range(G.order), repeat=2):
      comp = self.maps[x].compose(self.maps[y])
      want = self.maps[G.mul(x, y)]
      if comp.vmap != want.vmap or comp.emap != want.emap:
        raise NotFree(f"g{x} g{y} does not act as g{G.mul(x, y)}")
    for x in range(1, G.order):
      m = self.maps[x]
      for v in g.vertices:
        if m.vmap[v] == v:
          raise NotFree(f"g{x} fixes vertex {v}", witness=(f"g{x}", v))
      for e in g.edge:
        if m.emap[e] == e:
          raise NotFree(f"g{x} fixes edge {e}", witness=(f"g{x}", e))

  @classmethod
  def generated(cls, group: GroupSpec, graph, given: Mapping[int, KGraphMorphism]) -> "FreeAction":
    """Close a partial action (e.g. on generators) under composition."""
    graph = _graph(graph)
    maps = {0: KGraphMorphism.identity(graph), **given}
    frontier = list(maps)
    while frontier:
      x = frontier.pop()
      for y in list(maps):
        for a, b in ((x, y), (y, x)):
          z = group.mul(a, b)
          if z not in maps:
            maps[z] = maps[a].compose(maps[b])
            frontier.append(z)
    return cls(group, graph, maps)


def canonical_action(A, G: GroupSpec, c: Mapping[str, int]) -> FreeAction:
  """Left multiplication on the group coordinate of the skew product."""
  A = _graph(A)
  cover = _graph(skew_product(A, G, c))
  vname, ename = _skew_names(A, G)
  els = G.elements
  maps = {}
  for h in range(G.order):
    vm = {vname[v, els[g]]: vname[v, els[G.mul(h, g)]]
          for v in A.skeleton.vertices for g in range(G.order)}
    em = {ename[e, els[g]]: ename[e, els[G.mul(h, g)]]
          for e in A.edge for g in range(G.order)}
    maps[h] = KGraphMorphism(cover, cover, vm, em)
  return FreeAction(G, cover, maps)


def quotient_by_action(action: FreeAction) -> tuple[Skeleton, KGraphMorphism]:
  """Orbit graph of a free action, with the projection onto it."""
  action.check()
  g = action.graph
  sk = g.skeleton
  vrep = {v: min(m.vmap[v] for m in action.maps.values()) for v in sk.vertices}
  erep = {e: min(m.emap[e] for m in action.maps.values()) for e in g.edge}
  vertices = list(dict.fromkeys(vrep[v] for v in sk.vertices))
  edges = []
  for e in sk.edges:
    if erep[e.name] == e.name:
      edges.append(Edge(e.name, e.colour, vrep[e.range], vrep[e.source]))
  squares = list(dict.fromkeys(Square(*(erep[n] for n in (q.f1, q.g1, q.g2, q.f2)))
                               for q in sk.squares))
  quotient = Skeleton(sk.k, vertices, edges, squares, f"{g.name}_quotient")
  proj = KGraphMorphism(g, _graph(quotient), vrep, erep)
  return quotient, proj


def crossed_product(A, alpha: KGraphMorphism) -> Skeleton:
  """Rank k+1 graph: A plus an edge t_v of the new colour for each vertex v.

  t_v has range v and source alpha^-1(v), and for each edge f the square
  f t_{s(f)} = t_{r(f)} alpha^-1(f) holds.  This is the factorisation forced
  by the composition rule (x, m)(y, n) = (x alpha^m(y), m + n).
  """
  A = _graph(A)
  rep = morphism_check(alpha, automorphism=True)
  if alpha.source is not A and alpha.source.skeleton != A.skeleton:
    rep.add("domain", "automorphism belongs to a different graph")
  if not rep.ok or alpha.target.skeleton != A.skeleton:
    raise NotAutomorphism(str(rep) if not rep.ok else "target differs from source")
  inv = alpha.inverse()
  sk = A.skeleton
  taken = set(A.edge)
  loop = {v: _fresh(f"t_{v}", taken) for v in sk.vertices}
  c = A.k + 1
  edges = list(sk.edges) + [Edge(loop[v], c, v, inv.vmap[v]) for v in sk.vertices]
  squares = list(sk.squares) + [
      Square(e.name, loop[e.source], loop[e.range], inv.emap[e.name]) for e in sk.edges]
  return Skeleton(c, sk.vertices, edges, squares, f"{A.name or 'A'}_cross")


def colour_pullback(A, pi: Sequence[int]) -> Skeleton:
  """Rank len(pi) graph whose colour i edges are copies of colour pi[i-1] edges."""
  A = _graph(A)
  pi = list(pi)
  if any(p == 0 for p in pi):
    raise ValueError("colour map sends a colour to 0; degree-zero edges are not supported")
  if any(not 1 <= p <= A.k for p in pi):
    raise ValueError(f"colour map values must lie in 1..{A.k}")
  sk = A.skeleton
  taken: set[str] = set()
  copy = {}
  edges = []
  for i, p in enumerate(pi, start=1):
    for e in sk.edges:
      if e.colour == p:
        copy[e.name, i] = _fresh(f"{e.name}_c{i}", taken)
        edges.append(Edge(copy[e.name, i], i, e.range, e.source))
  squares = []
  for i, j in itertools.combinations(range(1, len(pi) + 1), 2):
    for x in sk.edges:
      if x.colour != pi[i - 1]:
        continue
      for y in A.edges_into(pi[j - 1], x.source):
        if pi[i - 1] == pi[j - 1]:
          p, q = x.name, y
        else:
          p, q = A.exchange(x.name, y)
        squares.append(Square(copy[x.name, i], copy[y, j], copy[p, j], copy[q, i]))
  return Skeleton(len(pi), sk.vertices, edges, squares, f"{A.name or 'A'}_pullback")


# --- standard graphs ---------------------------------------------------------

def t_k(k: int) -> Skeleton:
  """One vertex with k commuting loops."""
  edges = [Edge(f"e{i}", i, "v", "v") for i in range(1, k + 1)]
  squares = [Square(f"e{i}", f"e{j}", f"e{j}", f"e{i}")
             for i, j in itertools.combinations(range(1, k + 1), 2)]
  return Skeleton(k, ["v"], edges, squares, f"T{k}")


def b_n(n: int) -> Skeleton:
  """One vertex with n loops of a single colour."""
  return Skeleton(1, ["v"], [Edge(f"f{i}", 1, "v", "v") for i in range(1, n + 1)], [], f"B{n}")


def cycle(n: int) -> Skeleton:
  vs = [f"v{i}" for i in range(n)]
  return Skeleton(1, vs, [Edge(f"e{i}", 1, vs[i], vs[(i + 1) % n]) for i in range(n)], [],
                  f"C{n}")


def _coord_name(prefix, x):
  return prefix + "_".join(str(a) for a in x)


def omega(m: Sequence[int]) -> Skeleton:
  """Grid graph on prod [0, m_i]; edge from p + e_i to p."""
  k = len(m)
  pts = list(itertools.product(*[range(a + 1) for a in m]))
  vs = [_coord_name("p", p) for p in pts]

  def step(p, i):
    q = list(p)
    q[i] += 1
    return tuple(q)

  edges, squares = [], []
  for p in pts:
    for i in range(k):
      if p[i] < m[i]:
        edges.append(Edge(_coord_name(f"e{i + 1}_", p), i + 1, _coord_name("p", p),
                          _coord_name("p", step(p, i))))
  for p in pts:
    for i, j in itertools.combinations(range(k), 2):
      if p[i] < m[i] and p[j] < m[j]:
        e = lambda x, c: _coord_name(f"e{c + 1}_", x)
        squares.append(Square(e(p, i), e(step(p, i), j), e(p, j), e(step(p, j), i)))
  return Skeleton(k, vs, edges, squares, "Omega" + "x".join(map(str, m)))


def _upper_hermite(H: Sequence[Sequence[int]]) -> list[list[int]]:
  """Column operations making H upper triangular with positive diagonal."""
  k = len(H)
  a = [list(r) for r in H]

  def col_op(i, j, p, q, r, s):
    # (col_i, col_j) <- (p col_i + q col_j, r col_i + s col_j)
    for row in a:
      row[i], row[j] = p * row[i] + q * row[j], r * row[i] + s * row[j]

  for i in range(k - 1, -1, -1):
    for j in range(i):
      x, y = a[i][j], a[i][i]
      if x == 0:
        continue
      # extended gcd so that u*y + v*x = g
      g, u, v = _egcd(y, x)
      col_op(i, j, u, v, -x // g, y // g)
    if a[i][i] == 0:
      raise InfiniteIndex("the subgroup has infinite index")
    if a[i][i] < 0:
      for row in a:
        row[i] = -row[i]
  return a


def _egcd(a, b):
  if b == 0:
    return (abs(a), 1 if a >= 0 else -1, 0)
  g, x, y = _egcd(b, a % b)
  return (g, y, x - (a // b) * y)


def delta_mod(H: Sequence[Sequence[int]]) -> Skeleton:
  """The grid graph on Z^k folded by the subgroup spanned by the columns of H."""
  k = len(H)
  if any(len(r) != k for r in H):
    raise ValueError("H must be square")
  L = _upper_hermite(H) if k else []
  diag = [L[i][i] for i in range(k)]

  def reduce(x):
    x = list(x)
    for i in range(k - 1, -1, -1):
      q = x[i] // diag[i]
      if q:
        for r in range(i + 1):
          x[r] -= q * L[r][i]
    return tuple(x)

  pts = list(itertools.product(*[range(d) for d in diag]))
  name = {p: _coord_name("x", p) if k else "x" for p in pts}

  def step(p, i):
    q = list(p)
    q[i] += 1
    return reduce(q)

  ename = lambda p, i: _coord_name(f"e{i + 1}_", p)
  edges = [Edge(ename(p, i), i + 1, name[p], name[step(p, i)]) for p in pts for i in range(k)]
  squares = [Square(ename(p, i), ename(step(p, i), j), ename(p, j), ename(step(p, j), i))
             for p in pts for i, j in itertools.combinations(range(k), 2)]
  return Skeleton(k, [name[p] for p in pts], edges, squares,
                  "Delta_" + "_".join(",".join(map(str, r)) for r in H))


def torsion_base(n: int) -> tuple[Skeleton, KGraphMorphism]:
  """n parallel edges v -> u with the cyclic shift f_i -> f_{i+1}."""
  sk = Skeleton(1, ["u", "v"], [Edge(f"f{i}", 1, "u", "v") for i in range(n)], [], f"P{n}")
  g = KGraph(sk)
  alpha = KGraphMorphism(g, g, {"u": "u", "v": "v"},
                         {f"f{i}": f"f{(i + 1) % n}" for i in range(n)})
  return sk, alpha


def torsion_family(n: int) -> Skeleton:
  sk, alpha = torsion_base(n)
  return crossed_product(alpha.source, alpha).renamed(f"torsion{n}")


def standard_graph(kind: str, *args) -> Skeleton:
  """``t_k``, ``b_n``, ``cycle``, ``omega``, ``delta_mod`` or ``torsion_family``."""
  table = {"t_k": t_k, "b_n": b_n, "cycle": cycle, "omega": omega,
           "delta_mod": lambda *a: delta_mod(a[-1]), "torsion_family": torsion_family}
  if kind not in table:
    raise ValueError(f"unknown standard graph {kind!r}")
  return table[kind](*args)
