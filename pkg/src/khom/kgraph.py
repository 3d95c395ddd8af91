"""Finite k-graphs given by skeletons: validation, cubes, faces, chains.

A skeleton is a k-coloured directed graph plus commuting squares.  A square
``f1 g1 = g2 f2`` says the path f1 then g1 (colour i then j, i < j) equals
the path g2 then f2.  Paths compose left to right, the range of a path is
the range of its first edge, and ``s(a) = r(b)`` whenever ``a b`` is a path.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .abelian import IntMatrix
from .errors import (BoundarySquareNonzero, IndexOutOfRange, NotValidated,
                     ValidationFailed)


@dataclass(frozen=True)
class Edge:
  name: str
  colour: int
  range: str
  source: str


@dataclass(frozen=True)
class Square:
  """``f1 g1 = g2 f2``; f-edges share the lower colour."""
  f1: str
  g1: str
  g2: str
  f2: str

  @property
  def ij_path(self) -> tuple[str, str]:
    return (self.f1, self.g1)

  @property
  def ji_path(self) -> tuple[str, str]:
    return (self.g2, self.f2)


@dataclass(frozen=True)
class Skeleton:
  k: int
  vertices: tuple[str, ...]
  edges: tuple[Edge, ...] = ()
  squares: tuple[Square, ...] = ()
  name: str = field(default="", compare=False)

  def __post_init__(self):
    object.__setattr__(self, "vertices", tuple(self.vertices))
    object.__setattr__(self, "edges", tuple(self.edges))
    object.__setattr__(self, "squares", tuple(self.squares))

  def renamed(self, name: str) -> "Skeleton":
    return Skeleton(self.k, self.vertices, self.edges, self.squares, name)


@dataclass(frozen=True)
class Violation:
  kind: str
  detail: str
  witness: tuple = ()

  def __str__(self):
    return f"{self.kind}: {self.detail}"


@dataclass
class ValidationReport:
  violations: list[Violation] = field(default_factory=list)

  @property
  def ok(self) -> bool:
    return not self.violations

  def add(self, kind, detail, *witness):
    self.violations.append(Violation(kind, detail, tuple(witness)))

  def kinds(self) -> set[str]:
    return {v.kind for v in self.violations}

  def __str__(self):
    return "valid" if self.ok else "\n".join(map(str, self.violations))


def validate(sk: Skeleton) -> ValidationReport:
  """List every way the skeleton fails to present a k-graph."""
  rep = ValidationReport()
  if sk.k < 0:
    rep.add("rank", f"negative rank {sk.k}")
  vset = set()
  for v in sk.vertices:
    if v in vset:
      rep.add("duplicate-name", f"vertex {v} declared twice", v)
    vset.add(v)
  edges: dict[str, Edge] = {}
  for e in sk.edges:
    if e.name in edges:
      rep.add("duplicate-name", f"edge {e.name} declared twice", e.name)
    edges[e.name] = e
    if not 1 <= e.colour <= sk.k:
      rep.add("colour", f"edge {e.name} has colour {e.colour} outside 1..{sk.k}", e.name)
    for end in (e.range, e.source):
      if end not in vset:
        rep.add("dangling-endpoint", f"edge {e.name} uses unknown vertex {end}", e.name, end)
  if not rep.ok:
    return rep

  fwd: dict[tuple[str, str], tuple[str, str]] = {}
  bwd: dict[tuple[str, str], tuple[str, str]] = {}
  for sq in sk.squares:
    names = (sq.f1, sq.g1, sq.g2, sq.f2)
    missing = [n for n in names if n not in edges]
    if missing:
      rep.add("unknown-edge", f"square {names} uses unknown edges {missing}", sq)
      continue
    f1, g1, g2, f2 = (edges[n] for n in names)
    if not (f1.colour == f2.colour < g1.colour == g2.colour):
      rep.add("square-colours", f"square {names} has colours "
              f"{f1.colour},{g1.colour} = {g2.colour},{f2.colour}", sq)
      continue
    if not (f1.source == g1.range and g2.source == f2.range
            and f1.range == g2.range and g1.source == f2.source):
      rep.add("square-endpoints", f"square {names} does not close up", sq)
      continue
    if sq.ij_path in fwd:
      rep.add("duplicate-path", f"path {sq.f1} {sq.g1} lies in two squares", sq.ij_path)
    if sq.ji_path in bwd:
      rep.add("duplicate-path", f"path {sq.g2} {sq.f2} lies in two squares", sq.ji_path)
    fwd[sq.ij_path] = sq.ji_path
    bwd[sq.ji_path] = sq.ij_path

  by_range: dict[str, list[Edge]] = {}
  for e in sk.edges:
    by_range.setdefault(e.range, []).append(e)
  for x in sk.edges:
    for y in by_range.get(x.source, ()):
      if x.colour == y.colour:
        continue
      table = fwd if x.colour < y.colour else bwd
      if (x.name, y.name) not in table:
        rep.add("missing-square", f"path {x.name} {y.name} lies in no square", x.name, y.name)
  if not rep.ok or sk.k < 3:
    return rep

  for x in sk.edges:
    for y in by_range.get(x.source, ()):
      if y.colour <= x.colour:
        continue
      for z in by_range.get(y.source, ()):
        if z.colour <= y.colour:
          continue
        a, b, c = x.name, y.name, z.name
        # route one: swap (1,2), (2,3), (1,2)
        y1, x1 = fwd[(a, b)]
        z1, x2 = fwd[(x1, c)]
        z2, y2 = fwd[(y1, z1)]
        # route two: swap (2,3), (1,2), (2,3)
        z3, y3 = fwd[(b, c)]
        z4, x3 = fwd[(a, z3)]
        y4, x4 = fwd[(x3, y3)]
        if (z2, y2, x2) != (z4, y4, x4):
          rep.add("tricolour", f"path {a} {b} {c} reorders to {z2} {y2} {x2} "
                  f"one way and {z4} {y4} {x4} the other", (a, b, c))
  return rep


@dataclass(frozen=True, order=True)
class Cube:
  """An r-cube in canonical form: edges in increasing colour, left to right.

  A 0-cube is a vertex; then ``colours`` is empty and ``path`` holds the
  vertex name alone.
  """
  colours: tuple[int, ...]
  path: tuple[str, ...]

  @property
  def rank(self) -> int:
    return len(self.colours)

  @property
  def vertex(self) -> str | None:
    return self.path[0] if not self.colours else None

  def label(self) -> str:
    return ".".join(self.path)

  def __str__(self):
    return self.label()


@dataclass(frozen=True)
class Chain:
  """Integer combination of r-cubes over the canonical cube order."""
  level: int
  coeffs: tuple[int, ...]

  def __add__(self, other: "Chain") -> "Chain":
    return Chain(self.level, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

  def __sub__(self, other: "Chain") -> "Chain":
    return Chain(self.level, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

  def scale(self, m: int) -> "Chain":
    return Chain(self.level, tuple(m * a for a in self.coeffs))

  def is_zero(self) -> bool:
    return not any(self.coeffs)


class ChainComplex:
  """Free chain complex c_0 <- c_1 <- ... <- c_top with sparse boundaries.

  ``columns[r][j]`` is the boundary of basis element j in degree r, as a
  dict from row index to coefficient.  Optional ``cells`` give names to
  basis elements.
  """

  def __init__(self, ranks: Sequence[int], columns: dict[int, list[dict[int, int]]],
               cells: Sequence[Sequence] | None = None):
    self.ranks = list(ranks)
    self.columns = {r: columns.get(r, [{} for _ in range(self.ranks[r])])
                    for r in range(1, len(self.ranks))}
    self.cells = cells
    self._dense: dict[int, IntMatrix] = {}

  @property
  def top(self) -> int:
    return len(self.ranks) - 1

  def rank(self, r: int) -> int:
    return self.ranks[r] if 0 <= r <= self.top else 0

  def boundary(self, r: int) -> IntMatrix:
    """Dense matrix of the boundary from degree r to degree r-1."""
    if r not in self._dense:
      rows, cols = self.rank(r - 1), self.rank(r)
      m = [[0] * cols for _ in range(rows)]
      if 1 <= r <= self.top:
        for j, col in enumerate(self.columns[r]):
          for i, v in col.items():
            m[i][j] = v
      self._dense[r] = IntMatrix(m, cols)
    return self._dense[r]

  def sparse(self, r: int) -> list[dict[int, int]]:
    if 1 <= r <= self.top:
      return self.columns[r]
    return [{} for _ in range(self.rank(r))]

  def apply(self, r: int, vec: Sequence[int]) -> list[int]:
    out = [0] * self.rank(r - 1)
    for j, a in enumerate(vec):
      if a:
        for i, v in self.sparse(r)[j].items():
          out[i] += a * v
    return out

  def check(self) -> None:
    for r in range(2, self.top + 1):
      for j, col in enumerate(self.columns[r]):
        acc: dict[int, int] = {}
        for i, v in col.items():
          for h, w in self.columns[r - 1][i].items():
            acc[h] = acc.get(h, 0) + v * w
        if any(acc.values()):
          raise BoundarySquareNonzero(f"boundary of boundary nonzero on cell {j} in degree {r}")

  def euler(self) -> int:
    return sum((-1) ** r * c for r, c in enumerate(self.ranks))

  def index(self, r: int) -> dict:
    if self.cells is None:
      raise ValueError("complex has no named cells")
    return {c: i for i, c in enumerate(self.cells[r])}


class KGraph:
  """A skeleton that passed validation, with lookup tables.

  Holding one of these is the validation token: everything downstream takes
  a ``KGraph`` rather than a bare ``Skeleton``.
  """

  def __init__(self, sk: Skeleton):
    report = validate(sk)
    if not report.ok:
      raise ValidationFailed(report)
    self.skeleton = sk
    self.k = sk.k
    self.name = sk.name
    self.edge = {e.name: e for e in sk.edges}
    self.swap: dict[tuple[str, str], tuple[str, str]] = {}
    self.unswap: dict[tuple[str, str], tuple[str, str]] = {}
    for sq in sk.squares:
      self.swap[sq.ij_path] = sq.ji_path
      self.unswap[sq.ji_path] = sq.ij_path
    self._by_colour_range: dict[tuple[int, str], list[str]] = {}
    for e in sorted(sk.edges, key=lambda e: e.name):
      self._by_colour_range.setdefault((e.colour, e.range), []).append(e.name)
    self._cubes: dict[int, list[Cube]] = {}
    self._index: dict[int, dict[Cube, int]] = {}

  def __repr__(self):
    return f"KGraph({self.name or 'unnamed'}, k={self.k})"

  @property
  def vertices(self) -> list[str]:
    return sorted(self.skeleton.vertices)

  def edges_into(self, colour: int, vertex: str) -> list[str]:
    """Edges of a colour whose range is ``vertex``, sorted by name."""
    return self._by_colour_range.get((colour, vertex), [])

  def cubes(self, r: int) -> list[Cube]:
    if r not in self._cubes:
      self._cubes[r] = _enumerate_cubes(self, r)
    return self._cubes[r]

  def index(self, r: int) -> dict[Cube, int]:
    if r not in self._index:
      self._index[r] = {c: i for i, c in enumerate(self.cubes(r))}
    return self._index[r]

  def cube_of(self, path: Sequence[str]) -> Cube:
    """The cube a path of distinct colours represents (a vertex, for a 1-tuple of a vertex)."""
    path = tuple(path)
    if len(path) == 1 and path[0] not in self.edge:
      return Cube((), path)
    colours = [self.edge[e].colour for e in path]
    if len(set(colours)) != len(colours):
      raise IndexOutOfRange("a cube uses each colour at most once")
    if colours != sorted(colours):
      path = reorder(self, path, sorted(colours))
    return Cube(tuple(sorted(colours)), path)

  def range_of(self, c: Cube) -> str:
    return c.vertex if c.rank == 0 else self.edge[c.path[0]].range

  def source_of(self, c: Cube) -> str:
    return c.vertex if c.rank == 0 else self.edge[c.path[-1]].source

  def exchange(self, a: str, b: str) -> tuple[str, str]:
    """The other factorisation of the two-edge path ``a b``."""
    if self.edge[a].colour < self.edge[b].colour:
      return self.swap[(a, b)]
    return self.unswap[(a, b)]

  @cached_property
  def complex(self) -> ChainComplex:
    return _assemble(self)


def _require(g) -> KGraph:
  if not isinstance(g, KGraph):
    raise NotValidated("validate the skeleton first (wrap it in KGraph)")
  return g


def _enumerate_cubes(g: KGraph, r: int) -> list[Cube]:
  if r < 0:
    raise IndexOutOfRange(f"negative cube dimension {r}")
  if r == 0:
    return [Cube((), (v,)) for v in g.vertices]
  out = []
  for colours in itertools.combinations(range(1, g.k + 1), r):
    starts = sorted(e.name for e in g.skeleton.edges if e.colour == colours[0])
    stack = [(e,) for e in reversed(starts)]
    while stack:
      path = stack.pop()
      if len(path) == r:
        out.append(Cube(colours, path))
        continue
      nxt = g.edges_into(colours[len(path)], g.edge[path[-1]].source)
      for e in reversed(nxt):
        stack.append(path + (e,))
  return out


def cubes(g: KGraph, r: int) -> list[Cube]:
  """Canonical r-cubes, ordered by (colour set, edge names)."""
  return list(_require(g).cubes(r))


def face(g: KGraph, c: Cube, j: int, ell: int) -> Cube:
  """Face F_j^ell: slide the j-th edge to the back (ell=0) or front (ell=1) and drop it."""
  g = _require(g)
  r = c.rank
  if not 1 <= j <= r or ell not in (0, 1):
    raise IndexOutOfRange(f"face index ({j}, {ell}) outside a {r}-cube")
  path = list(c.path)
  if ell == 0:
    for p in range(j - 1, r - 1):
      path[p], path[p + 1] = g.swap[(path[p], path[p + 1])]
    gone = path.pop()
    if not path:
      return Cube((), (g.edge[gone].range,))
  else:
    for p in range(j - 1, 0, -1):
      path[p - 1], path[p] = g.swap[(path[p - 1], path[p])]
    gone = path.pop(0)
    if not path:
      return Cube((), (g.edge[gone].source,))
  colours = c.colours[:j - 1] + c.colours[j:]
  return Cube(colours, tuple(path))


def reorder(g: KGraph, path: Sequence[str], order: Sequence[int],
            rng: random.Random | None = None) -> tuple[str, ...]:
  """Refactor a path so its colours appear in ``order``, by adjacent exchanges.

  With ``rng`` the next exchange is picked at random among all available
  ones; the result must not depend on that choice.
  """
  rank = {c: i for i, c in enumerate(order)}
  path = list(path)
  while True:
    bad = [p for p in range(len(path) - 1)
           if rank[g.edge[path[p]].colour] > rank[g.edge[path[p + 1]].colour]]
    if not bad:
      return tuple(path)
    p = rng.choice(bad) if rng else bad[0]
    path[p], path[p + 1] = g.exchange(path[p], path[p + 1])


def segment(g: KGraph, c: Cube, lo: Iterable[int], hi: Iterable[int]) -> Cube:
  """The piece of c between degrees lo and hi (colour sets with lo inside hi)."""
  lo, hi = set(lo), set(hi)
  if not lo <= hi <= set(c.colours):
    raise IndexOutOfRange("segment bounds must be nested inside the cube's colours")
  if c.rank == 0:
    return c
  mid = sorted(hi - lo)
  order = sorted(lo) + mid + sorted(set(c.colours) - hi)
  path = reorder(g, c.path, order)
  a, b = len(lo), len(lo) + len(mid)
  if not mid:
    v = g.edge[path[a - 1]].source if a else g.edge[path[0]].range
    return Cube((), (v,))
  return Cube(tuple(mid), path[a:b])


def _assemble(g: KGraph) -> ChainComplex:
  ranks = [len(g.cubes(r)) for r in range(g.k + 1)]
  columns = {}
  for r in range(1, g.k + 1):
    idx = g.index(r - 1)
    cols = []
    for c in g.cubes(r):
      col: dict[int, int] = {}
      for j in range(1, r + 1):
        for ell in (0, 1):
          i = idx[face(g, c, j, ell)]
          col[i] = col.get(i, 0) + (-1) ** (j + ell)
      cols.append({i: v for i, v in col.items() if v})
    columns[r] = cols
  cc = ChainComplex(ranks, columns, cells=[g.cubes(r) for r in range(g.k + 1)])
  cc.check()
  return cc


def chain_complex(g: KGraph) -> ChainComplex:
  return _require(g).complex


def components(sk: Skeleton | KGraph) -> list[list[str]]:
  """Vertex sets of the connected components, each sorted, in order of least vertex."""
  if isinstance(sk, KGraph):
    sk = sk.skeleton
  parent = {v: v for v in sk.vertices}

  def find(v):
    while parent[v] != v:
      parent[v] = parent[parent[v]]
      v = parent[v]
    return v

  for e in sk.edges:
    a, b = find(e.range), find(e.source)
    if a != b:
      parent[max(a, b)] = min(a, b)
  groups: dict[str, list[str]] = {}
  for v in sorted(sk.vertices):
    groups.setdefault(find(v), []).append(v)
  return sorted(groups.values())
