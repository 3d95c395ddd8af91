"""Dense integer matrices with exact (arbitrary precision) entries."""

from __future__ import annotations

from typing import Iterable, Sequence


class IntMatrix:
  """An immutable rows x cols matrix of Python ints.

  Zero-sized shapes are allowed, which keeps boundary maps into or out of
  the zero group uniform with everything else.

  >>> m = IntMatrix([[1, 2], [3, 4]])
  >>> (m @ IntMatrix.identity(2)) == m
  True
  >>> IntMatrix.zeros(0, 3).shape
  (0, 3)
  """

  __slots__ = ("rows", "cols", "_data")

  def __init__(self, data: Iterable[Iterable[int]], cols: int | None = None):
    rows = tuple(tuple(int(x) for x in row) for row in data)
    if cols is None:
      if not rows:
        raise ValueError("column count needed for a matrix with no rows")
      cols = len(rows[0])
    for row in rows:
      if len(row) != cols:
        raise ValueError("ragged matrix")
    self.rows = len(rows)
    self.cols = cols
    self._data = rows

  @classmethod
  def zeros(cls, rows: int, cols: int) -> "IntMatrix":
    return cls([[0] * cols for _ in range(rows)], cols)

  @classmethod
  def identity(cls, n: int) -> "IntMatrix":
    return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

  @classmethod
  def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
    return cls([[col[i] for col in columns] for i in range(rows)], len(columns))

  @classmethod
  def diagonal(cls, entries: Sequence[int], rows: int | None = None,
               cols: int | None = None) -> "IntMatrix":
    rows = len(entries) if rows is None else rows
    cols = len(entries) if cols is None else cols
    m = [[0] * cols for _ in range(rows)]
    for i, d in enumerate(entries):
      m[i][i] = d
    return cls(m, cols)

  @property
  def shape(self) -> tuple[int, int]:
    return (self.rows, self.cols)

  def __getitem__(self, ij: tuple[int, int]) -> int:
    i, j = ij
    return self._data[i][j]

  def row(self, i: int) -> tuple[int, ...]:
    return self._data[i]

  def column(self, j: int) -> list[int]:
    return [row[j] for row in self._data]

  def columns(self) -> list[list[int]]:
    return [self.column(j) for j in range(self.cols)]

  def to_lists(self) -> list[list[int]]:
    return [list(row) for row in self._data]

  def transpose(self) -> "IntMatrix":
    return IntMatrix([[row[j] for row in self._data] for j in range(self.cols)],
                     self.rows)

  @property
  def T(self) -> "IntMatrix":
    return self.transpose()

  def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
    if self.cols != other.rows:
      raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
    other_cols = [other.column(j) for j in range(other.cols)]
    return IntMatrix(
        [[sum(a * b for a, b in zip(row, col) if a) for col in other_cols]
         for row in self._data], other.cols)

  def apply(self, vec: Sequence[int]) -> list[int]:
    if len(vec) != self.cols:
      raise ValueError("vector length mismatch")
    nz = [(j, v) for j, v in enumerate(vec) if v]
    return [sum(row[j] * v for j, v in nz) for row in self._data]

  def __add__(self, other: "IntMatrix") -> "IntMatrix":
    if self.shape != other.shape:
      raise ValueError("shape mismatch")
    return IntMatrix([[a + b for a, b in zip(r, s)]
                      for r, s in zip(self._data, other._data)], self.cols)

  def __neg__(self) -> "IntMatrix":
    return IntMatrix([[-a for a in r] for r in self._data], self.cols)

  def __sub__(self, other: "IntMatrix") -> "IntMatrix":
    return self + (-other)

  def scale(self, c: int) -> "IntMatrix":
    return IntMatrix([[c * a for a in r] for r in self._data], self.cols)

  def hstack(self, other: "IntMatrix") -> "IntMatrix":
    if self.rows != other.rows:
      raise ValueError("row count mismatch")
    return IntMatrix([r + s for r, s in zip(self._data, other._data)],
                     self.cols + other.cols)

  def vstack(self, other: "IntMatrix") -> "IntMatrix":
    if self.cols != other.cols:
      raise ValueError("column count mismatch")
    return IntMatrix(self._data + other._data, self.cols)

  def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
    return IntMatrix([[self._data[i][j] for j in cols] for i in rows], len(cols))

  def is_zero(self) -> bool:
    return not any(any(r) for r in self._data)

  def max_abs(self) -> int:
    return max((abs(a) for r in self._data for a in r), default=0)

  def __eq__(self, other: object) -> bool:
    if not isinstance(other, IntMatrix):
      return NotImplemented
    return self.shape == other.shape and self._data == other._data

  def __hash__(self) -> int:
    return hash((self.rows, self.cols, self._data))

  def __repr__(self) -> str:
    return f"IntMatrix({self.to_lists()!r}, cols={self.cols})"


def determinant(m: IntMatrix) -> int:
  """Bareiss fraction-free determinant."""
  n = m.rows
  if n != m.cols:
    raise ValueError("determinant of a non-square matrix")
  if n == 0:
    return 1
  a = m.to_lists()
  sign, prev = 1, 1
  for k in range(n - 1):
    if a[k][k] == 0:
      for i in range(k + 1, n):
        if a[i][k]:
          a[k], a[i] = a[i], a[k]
          sign = -sign
          break
      else:
        return 0
    for i in range(k + 1, n):
      for j in range(k + 1, n):
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
    prev = a[k][k]
  return sign * a[n - 1][n - 1]
