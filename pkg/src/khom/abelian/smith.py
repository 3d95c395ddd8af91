"""Smith normal form over the integers, with unimodular transforms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .matrix import IntMatrix


@dataclass(frozen=True)
class SmithDecomposition:
  """``D = U @ M @ V`` with ``U``, ``V`` unimodular and ``D`` in Smith form.

  The inverses of both transforms are kept as well; they are what turns a
  kernel basis into a coordinate system.
  """
  U: IntMatrix
  D: IntMatrix
  V: IntMatrix
  U_inv: IntMatrix
  V_inv: IntMatrix

  @property
  def diagonal(self) -> list[int]:
    return [self.D[i, i] for i in range(min(self.D.shape))]

  @property
  def invariants(self) -> list[int]:
    """Nonzero diagonal entries, a divisor chain of positive ints."""
    return [d for d in self.diagonal if d]

  @property
  def rank(self) -> int:
    return len(self.invariants)


class _Reducer:
  """Row/column operations on a working copy, mirrored into the transforms."""

  def __init__(self, m: IntMatrix, transforms: bool):
    self.a = m.to_lists()
    self.m, self.n = m.rows, m.cols
    self.track = transforms
    if transforms:
      self.U = _eye(self.m)
      self.Ui = _eye(self.m)
      self.V = _eye(self.n)
      self.Vi = _eye(self.n)

  # row i += c * row j
  def row_add(self, i, j, c):
    ri, rj = self.a[i], self.a[j]
    self.a[i] = [x + c * y for x, y in zip(ri, rj)]
    if self.track:
      self.U[i] = [x + c * y for x, y in zip(self.U[i], self.U[j])]
      for row in self.Ui:
        row[j] -= c * row[i]

  def row_swap(self, i, j):
    if i == j:
      return
    a = self.a
    a[i], a[j] = a[j], a[i]
    if self.track:
      self.U[i], self.U[j] = self.U[j], self.U[i]
      for row in self.Ui:
        row[i], row[j] = row[j], row[i]

  def row_neg(self, i):
    self.a[i] = [-x for x in self.a[i]]
    if self.track:
      self.U[i] = [-x for x in self.U[i]]
      for row in self.Ui:
        row[i] = -row[i]

  # column i += c * column j
  def col_add(self, i, j, c):
    for row in self.a:
      row[i] += c * row[j]
    if self.track:
      for row in self.V:
        row[i] += c * row[j]
      self.Vi[j] = [x - c * y for x, y in zip(self.Vi[j], self.Vi[i])]

  def col_swap(self, i, j):
    if i == j:
      return
    for row in self.a:
      row[i], row[j] = row[j], row[i]
    if self.track:
      for row in self.V:
        row[i], row[j] = row[j], row[i]
      self.Vi[i], self.Vi[j] = self.Vi[j], self.Vi[i]

  def run(self):
    a, m, n = self.a, self.m, self.n
    for t in range(min(m, n)):
      piv = _smallest(a, t, m, n)
      if piv is None:
        break
      self.row_swap(t, piv[0])
      self.col_swap(t, piv[1])
      while True:
        p = a[t][t]
        dirty = False
        for i in range(t + 1, m):
          if a[i][t]:
            q = a[i][t] // p
            if q:
              self.row_add(i, t, -q)
            dirty = dirty or a[i][t] != 0
        for j in range(t + 1, n):
          if a[t][j]:
            q = a[t][j] // p
            if q:
              self.col_add(j, t, -q)
            dirty = dirty or a[t][j] != 0
        if dirty:
          # a remainder smaller than the pivot is left; promote it
          best = None
          for i in range(t + 1, m):
            if a[i][t] and (best is None or abs(a[i][t]) < best[0]):
              best = (abs(a[i][t]), i, None)
          for j in range(t + 1, n):
            if a[t][j] and (best is None or abs(a[t][j]) < best[0]):
              best = (abs(a[t][j]), None, j)
          if best[1] is not None:
            self.row_swap(t, best[1])
          else:
            self.col_swap(t, best[2])
          continue
        bad = _non_multiple(a, t, m, n, p)
        if bad is None:
          break
        self.row_add(t, bad, 1)
      if a[t][t] < 0:
        self.row_neg(t)


def _eye(n):
  return [[int(i == j) for j in range(n)] for i in range(n)]


def _smallest(a, t, m, n):
  best, where = 0, None
  for i in range(t, m):
    row = a[i]
    for j in range(t, n):
      x = row[j]
      if x:
        x = abs(x)
        if where is None or x < best:
          best, where = x, (i, j)
          if x == 1:
            return where
  return where


def _non_multiple(a, t, m, n, p):
  for i in range(t + 1, m):
    row = a[i]
    for j in range(t + 1, n):
      if row[j] % p:
        return i
  return None


def smith_normal_form(M: IntMatrix) -> SmithDecomposition:
  """Smith form by minimal-pivot elimination.

  >>> s = smith_normal_form(IntMatrix([[2, 4], [6, 8]]))
  >>> s.diagonal
  [2, 4]
  >>> s.U @ IntMatrix([[2, 4], [6, 8]]) @ s.V == s.D
  True
  """
  r = _Reducer(M, transforms=True)
  r.run()
  return SmithDecomposition(
      U=IntMatrix(r.U, M.rows), D=IntMatrix(r.a, M.cols), V=IntMatrix(r.V, M.cols),
      U_inv=IntMatrix(r.Ui, M.rows), V_inv=IntMatrix(r.Vi, M.cols))


def invariant_factors(M: IntMatrix) -> list[int]:
  """Nonzero Smith diagonal without building the transforms."""
  r = _Reducer(M, transforms=False)
  r.run()
  return [r.a[i][i] for i in range(min(M.shape)) if r.a[i][i]]


def kernel_basis(M: IntMatrix) -> IntMatrix:
  """Columns form a lattice basis of ``{x : M x = 0}``."""
  s = smith_normal_form(M)
  return s.V.submatrix(range(M.cols), range(s.rank, M.cols))


def solve_integer(M: IntMatrix, b: Sequence[int]) -> list[int] | None:
  """Some integer ``x`` with ``M x = b``, or None if there is none."""
  s = smith_normal_form(M)
  return _solve_with(s, M.cols, b)


def _solve_with(s: SmithDecomposition, ncols: int, b: Sequence[int]):
  c = s.U.apply(b)
  ds = s.invariants
  y = [0] * ncols
  for i, d in enumerate(ds):
    if c[i] % d:
      return None
    y[i] = c[i] // d
  if any(c[len(ds):]):
    return None
  return s.V.apply(y)


class Lattice:
  """Subgroup of Z^n spanned by the columns of a matrix, with a membership test."""

  def __init__(self, span: IntMatrix):
    self.span = span
    self.dim = span.rows
    self._snf = smith_normal_form(span)

  def contains(self, v: Sequence[int]) -> bool:
    return _solve_with(self._snf, self.span.cols, v) is not None

  def coefficients(self, v: Sequence[int]):
    return _solve_with(self._snf, self.span.cols, v)

  def contains_lattice(self, other: "Lattice") -> bool:
    return all(self.contains(other.span.column(j)) for j in range(other.span.cols))

  def __eq__(self, other):
    if not isinstance(other, Lattice):
      return NotImplemented
    return self.dim == other.dim and self.contains_lattice(other) and other.contains_lattice(self)
