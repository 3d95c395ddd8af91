"""The cubical set of a k-graph, with degeneracies.

A cubical r-cube is stored as (positions, cube): ``positions`` lists the
coordinates 1..r that the admissible map sends to a colour, in increasing
order, and ``cube`` is the nondegenerate cube those colours trace out.  The
p-th position carries the p-th colour of the cube.  Coordinates outside
``positions`` are degenerate.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Callable

from .abelian import IntMatrix
from .errors import IndexOutOfRange, RMaxExceeded
from .kgraph import Cube, KGraph, segment
from .constructors import _graph


@dataclass(frozen=True)
class CubicalCube:
  r: int
  positions: tuple[int, ...]
  cube: Cube

  @property
  def rank(self) -> int:
    return len(self.positions)

  def is_degenerate(self) -> bool:
    return self.rank < self.r

  def admissible_map(self) -> dict[int, int]:
    """Coordinate -> colour for the coordinates not sent to zero."""
    return dict(zip(self.positions, self.cube.colours))

  def __str__(self):
    return f"[{self.r}; {','.join(map(str, self.positions))}; {self.cube.label()}]"


def default_rmax(g) -> int:
  env = os.environ.get("KHOM_RMAX")
  return int(env) if env else _graph(g).k + 2


def cubical_cubes(g, r: int, r_max: int | None = None) -> list[CubicalCube]:
  """Every r-cube: a choice of t positions and a nondegenerate t-cube, t <= min(r, k)."""
  g = _graph(g)
  limit = default_rmax(g) if r_max is None else r_max
  if r > limit:
    raise RMaxExceeded(f"level {r} is above r_max = {limit}")
  if r < 0:
    raise IndexOutOfRange("negative level")
  out = []
  for t in range(min(r, g.k) + 1):
    for pos in itertools.combinations(range(1, r + 1), t):
      out += [CubicalCube(r, pos, c) for c in g.cubes(t)]
  return out


def nondegenerate(c: Cube) -> CubicalCube:
  return CubicalCube(c.rank, tuple(range(1, c.rank + 1)), c)


def cubical_face(g, phi: CubicalCube, i: int, ell: int) -> CubicalCube:
  """Fix coordinate i at ell."""
  g = _graph(g)
  if not 1 <= i <= phi.r or ell not in (0, 1):
    raise IndexOutOfRange(f"face ({i}, {ell}) on a level {phi.r} cube")
  shift = lambda q: q if q < i else q - 1
  if i not in phi.positions:
    return CubicalCube(phi.r - 1, tuple(shift(q) for q in phi.positions), phi.cube)
  p = phi.positions.index(i)
  colours = set(phi.cube.colours)
  gone = phi.cube.colours[p]
  if ell == 0:
    sub = segment(g, phi.cube, (), colours - {gone})
  else:
    sub = segment(g, phi.cube, {gone}, colours)
  positions = tuple(shift(q) for q in phi.positions if q != i)
  return CubicalCube(phi.r - 1, positions, sub)


def cubical_degeneracy(g, phi: CubicalCube, i: int) -> CubicalCube:
  """Insert a coordinate at slot i that the cube ignores."""
  if not 1 <= i <= phi.r + 1:
    raise IndexOutOfRange(f"degeneracy {i} on a level {phi.r} cube")
  return CubicalCube(phi.r + 1, tuple(q if q < i else q + 1 for q in phi.positions), phi.cube)


def evaluate(g, phi: CubicalCube, m: tuple[int, ...], n: tuple[int, ...]) -> Cube:
  """phi(m, n) for 0/1 vectors m <= n, as the segment between their images."""
  g = _graph(g)
  if any(a > b for a, b in zip(m, n)):
    raise IndexOutOfRange("need m <= n")
  h = phi.admissible_map()
  lo = {h[q] for q in h if m[q - 1]}
  hi = {h[q] for q in h if n[q - 1]}
  return segment(g, phi.cube, lo, hi)


def _pairs(r):
  for n in itertools.product((0, 1), repeat=r):
    for m in itertools.product((0, 1), repeat=r):
      if all(a <= b for a, b in zip(m, n)):
        yield m, n


def agrees_with_definition(g, phi: CubicalCube) -> bool:
  """Faces and degeneracies of phi match precomposition with the model maps."""
  g = _graph(g)
  r = phi.r
  for i in range(1, r + 1):
    for ell in (0, 1):
      face = cubical_face(g, phi, i, ell)
      ins = lambda x: x[:i - 1] + (ell,) + x[i - 1:]
      if any(evaluate(g, face, m, n) != evaluate(g, phi, ins(m), ins(n)) for m, n in _pairs(r - 1)):
        return False
  for i in range(1, r + 2):
    deg = cubical_degeneracy(g, phi, i)
    drop = lambda x: x[:i - 1] + x[i:]
    if any(evaluate(g, deg, m, n) != evaluate(g, phi, drop(m), drop(n)) for m, n in _pairs(r + 1)):
      return False
  return True


@dataclass
class CubicalReport:
  ok: bool
  checked: int
  witness: str | None = None

  def to_json(self):
    return {"ok": self.ok, "checked": self.checked, "witness": self.witness}


FaceFn = Callable[[KGraph, CubicalCube, int, int], CubicalCube]
DegFn = Callable[[KGraph, CubicalCube, int], CubicalCube]


def check_cubical_identities(g, r_max: int | None = None, face: FaceFn = cubical_face,
                             degeneracy: DegFn = cubical_degeneracy) -> CubicalReport:
  """Exhaustively check the face, degeneracy and mixed relations up to r_max.

  The degeneracy relation checked is d_j d_i = d_{i+1} d_j for j <= i.
  ``face`` and ``degeneracy`` can be swapped out to test the checker itself.
  """
  g = _graph(g)
  r_max = default_rmax(g) if r_max is None else r_max
  n = 0

  def fail(msg):
    return CubicalReport(False, n, msg)

  for r in range(r_max + 1):
    for phi in cubical_cubes(g, r, r_max):
      for i in range(1, r + 1):
        for ell in (0, 1):
          f = face(g, phi, i, ell)
          if f.r != r - 1 or len(set(f.cube.colours)) != f.rank:
            return fail(f"face {i},{ell} of {phi} gave {f}")
      # faces: d_i^l d_j^m = d_j^m d_{i+1}^l for j <= i
      for i in range(1, r):
        for j in range(1, i + 1):
          for ell, m in itertools.product((0, 1), repeat=2):
            n += 1
            a = face(g, face(g, phi, j, m), i, ell)
            b = face(g, face(g, phi, i + 1, ell), j, m)
            if a != b:
              return fail(f"face relation i={i} j={j} l={ell} m={m} on {phi}: {a} != {b}")
      # degeneracies, from level r to r + 2
      if r + 2 <= r_max:
        for i in range(1, r + 2):
          for j in range(1, i + 1):
            n += 1
            a = degeneracy(g, degeneracy(g, phi, i), j)
            b = degeneracy(g, degeneracy(g, phi, j), i + 1)
            if a != b:
              return fail(f"degeneracy relation i={i} j={j} on {phi}: {a} != {b}")
      # mixed: face after degeneracy, on level r + 1
      if r + 1 <= r_max:
        for j in range(1, r + 2):
          d = degeneracy(g, phi, j)
          for i in range(1, r + 2):
            for ell in (0, 1):
              n += 1
              a = face(g, d, i, ell)
              if j < i:
                b = degeneracy(g, face(g, phi, i - 1, ell), j)
              elif j == i:
                b = phi
              else:
                b = degeneracy(g, face(g, phi, i, ell), j - 1)
              if a != b:
                return fail(f"mixed relation i={i} j={j} l={ell} on {phi}: {a} != {b}")
  return CubicalReport(True, n)


@dataclass
class NormalizedReport:
  ok: bool
  matrices: dict[int, IntMatrix]
  coverage: dict[int, bool]
  witness: str | None = None

  def to_json(self):
    return {"ok": self.ok, "coverage": {str(r): v for r, v in self.coverage.items()},
            "witness": self.witness}


def normalized_boundary(g, r: int) -> IntMatrix:
  """Boundary of the normalised complex, indexed through the nondegenerate cubes."""
  g = _graph(g)
  idx = g.index(r - 1)
  cols = []
  for c in g.cubes(r):
    col = [0] * len(g.cubes(r - 1))
    phi = nondegenerate(c)
    for i in range(1, r + 1):
      for ell in (0, 1):
        f = cubical_face(g, phi, i, ell)
        if f.is_degenerate():
          raise AssertionError(f"face of the nondegenerate cube {phi} is degenerate")
        col[idx[f.cube]] += (-1) ** (i + ell)
    cols.append(col)
  return IntMatrix.from_columns(cols, len(g.cubes(r - 1)))


def degenerate_coverage(g, r: int) -> bool:
  """Every degenerate r-cube is a degeneracy of some (r-1)-cube, and only those are."""
  g = _graph(g)
  if r == 0:
    return True
  deg = {phi for phi in cubical_cubes(g, r, r) if phi.is_degenerate()}
  images = {cubical_degeneracy(g, psi, i)
            for psi in cubical_cubes(g, r - 1, r) for i in range(1, r + 1)}
  return deg == images


def normalized_complex_iso(g, coverage_up_to: int = 4) -> NormalizedReport:
  g = _graph(g)
  mats = {}
  witness = None
  for r in range(1, g.k + 1):
    mats[r] = normalized_boundary(g, r)
    if mats[r] != g.complex.boundary(r) and witness is None:
      witness = f"boundary matrices differ in degree {r}"
  cov = {r: degenerate_coverage(g, r) for r in range(1, coverage_up_to + 1)}
  if witness is None and not all(cov.values()):
    witness = "degenerate cubes not covered in degree " + str(min(r for r, v in cov.items() if not v))
  return NormalizedReport(witness is None, mats, cov, witness)
