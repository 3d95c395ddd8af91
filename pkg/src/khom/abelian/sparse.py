"""Invariant factors of large sparse integer matrices.

Boundary matrices are mostly +-1 entries with a handful of nonzeros per
column.  Eliminating on unit pivots is an equivalence M ~ [1] + M' that
needs no transforms, so we peel those off first (Markowitz-style choice
keeps fill-in small) and hand the residue, usually tiny, to the dense
Smith reduction.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .matrix import IntMatrix
from .smith import invariant_factors


@dataclass
class SparseReport:
  rank: int
  torsion: list[int]
  unit_pivots: int = 0
  residue_shape: tuple[int, int] = (0, 0)
  max_bits: int = 0
  extra: dict = field(default_factory=dict)


def sparse_invariant_factors(columns: Sequence[Mapping[int, int]], nrows: int) -> SparseReport:
  """Rank and nontrivial invariant factors of the matrix given column-wise.

  ``columns[j]`` maps row index to a nonzero entry.
  """
  rows: dict[int, dict[int, int]] = {}
  cols: dict[int, set[int]] = {}
  max_bits = 0
  for j, col in enumerate(columns):
    live = {i: v for i, v in col.items() if v}
    if not live:
      continue
    cols[j] = set(live)
    for i, v in live.items():
      rows.setdefault(i, {})[j] = v
      max_bits = max(max_bits, abs(v).bit_length())

  heap = [(len(s), j) for j, s in cols.items()]
  heapq.heapify(heap)
  units = 0
  while heap:
    size, j = heapq.heappop(heap)
    if j not in cols or len(cols[j]) != size:
      if j in cols and cols[j]:
        heapq.heappush(heap, (len(cols[j]), j))
      continue
    best = None
    for i in cols[j]:
      if abs(rows[i][j]) == 1 and (best is None or len(rows[i]) < len(rows[best])):
        best = i
    if best is None:
      continue  # revisited if an update touches it
    pivot_row = rows.pop(best)
    p = pivot_row[j]
    touched = set()
    for i in list(cols[j]):
      if i == best:
        continue
      row = rows[i]
      factor = row[j] * p  # row[j] / p for a unit pivot
      for c, v in pivot_row.items():
        nv = row.get(c, 0) - factor * v
        if nv:
          if c not in row:
            cols[c].add(i)
          row[c] = nv
          b = abs(nv).bit_length()
          if b > max_bits:
            max_bits = b
        elif c in row:
          del row[c]
          cols[c].discard(i)
        touched.add(c)
      if not row:
        del rows[i]
    for c in pivot_row:
      cols[c].discard(best)
      touched.add(c)
    del cols[j]
    touched.discard(j)
    units += 1
    for c in touched:
      if c in cols:
        if cols[c]:
          heapq.heappush(heap, (len(cols[c]), c))
        else:
          del cols[c]

  live_rows = sorted(rows)
  live_cols = sorted(c for c, s in cols.items() if s)
  torsion: list[int] = []
  rest = 0
  if live_rows and live_cols:
    ri = {r: k for k, r in enumerate(live_rows)}
    dense = [[0] * len(live_cols) for _ in live_rows]
    for k, c in enumerate(live_cols):
      for r in cols[c]:
        dense[ri[r]][k] = rows[r][c]
    inv = invariant_factors(IntMatrix(dense, len(live_cols)))
    rest = len(inv)
    torsion = [d for d in inv if d > 1]
    max_bits = max([max_bits] + [d.bit_length() for d in inv])
  return SparseReport(rank=units + rest, torsion=torsion, unit_pivots=units,
                      residue_shape=(len(live_rows), len(live_cols)), max_bits=max_bits)
