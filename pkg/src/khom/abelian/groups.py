"""Finitely generated abelian groups, presentations, homomorphisms and exactness."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

from ..errors import CompositionNonzero, NotWellDefined
from .matrix import IntMatrix
from .smith import Lattice, kernel_basis, smith_normal_form


def _divisor_chain(orders: Iterable[int]) -> tuple[int, ...]:
  """Invariant factors of a direct sum of finite cyclic groups."""
  a = sorted(abs(d) for d in orders if abs(d) != 1)
  for i in range(len(a)):
    for j in range(i + 1, len(a)):
      g = gcd(a[i], a[j])
      a[i], a[j] = g, a[i] * a[j] // g
  return tuple(d for d in a if d > 1)


@dataclass(frozen=True)
class FgAbelianGroup:
  """Z^rank + Z/d_1 + ... + Z/d_t in invariant-factor form.

  Two values compare equal exactly when the groups are isomorphic.

  >>> FgAbelianGroup.from_cyclic([0, 6, 4])
  FgAbelianGroup(rank=1, torsion=(2, 12))
  >>> str(FgAbelianGroup(2, (2,)))
  'Z^2 + Z/2'
  """
  rank: int = 0
  torsion: tuple[int, ...] = ()

  def __post_init__(self):
    chain = _divisor_chain(self.torsion)
    if chain != tuple(self.torsion):
      object.__setattr__(self, "torsion", chain)

  @classmethod
  def from_cyclic(cls, orders: Iterable[int]) -> "FgAbelianGroup":
    """Direct sum of cyclic groups Z/d; an order of 0 means Z."""
    orders = list(orders)
    return cls(sum(1 for d in orders if d == 0), tuple(d for d in orders if d))

  @property
  def free_rank(self) -> int:
    return self.rank

  @property
  def cyclic_orders(self) -> list[int]:
    return [0] * self.rank + list(self.torsion)

  def is_trivial(self) -> bool:
    return self.rank == 0 and not self.torsion

  def is_torsion_free(self) -> bool:
    return not self.torsion

  def order(self) -> int | None:
    if self.rank:
      return None
    out = 1
    for d in self.torsion:
      out *= d
    return out

  def __add__(self, other: "FgAbelianGroup") -> "FgAbelianGroup":
    return FgAbelianGroup(self.rank + other.rank, self.torsion + other.torsion)

  def to_json(self) -> dict:
    return {"rank": self.rank, "torsion": list(self.torsion)}

  @classmethod
  def from_json(cls, data: dict) -> "FgAbelianGroup":
    return cls(int(data["rank"]), tuple(data["torsion"]))

  def __str__(self) -> str:
    parts = []
    if self.rank == 1:
      parts.append("Z")
    elif self.rank:
      parts.append(f"Z^{self.rank}")
    run = []
    for d in self.torsion:
      if run and run[-1][0] == d:
        run[-1][1] += 1
      else:
        run.append([d, 1])
    for d, c in run:
      parts.append(f"Z/{d}" if c == 1 else f"(Z/{d})^{c}")
    return " + ".join(parts) or "0"


def direct_sum(groups: Iterable[FgAbelianGroup]) -> FgAbelianGroup:
  out = FgAbelianGroup()
  for g in groups:
    out = out + g
  return out


def _cyclic_pair(kind: str, a: int, b: int) -> int | None:
  """The functor on Z/a and Z/b (0 standing for Z); None means the zero group."""
  if kind == "tensor":
    if a == 0:
      return b
    if b == 0:
      return a
    return gcd(a, b)
  if kind == "tor":
    if a == 0 or b == 0:
      return None
    return gcd(a, b)
  if kind == "hom":
    if a == 0:
      return b
    if b == 0:
      return None
    return gcd(a, b)
  if kind == "ext":
    if a == 0:
      return None
    return a if b == 0 else gcd(a, b)
  raise ValueError(f"unknown functor {kind!r}")


def binary_functor(kind: str, A: FgAbelianGroup, B: FgAbelianGroup) -> FgAbelianGroup:
  """tensor, tor, hom or ext of two groups, summed over cyclic pieces.

  >>> binary_functor("ext", FgAbelianGroup(1, (2,)), FgAbelianGroup(1))
  FgAbelianGroup(rank=0, torsion=(2,))
  """
  orders = []
  for a in A.cyclic_orders:
    for b in B.cyclic_orders:
      c = _cyclic_pair(kind, a, b)
      if c is not None:
        orders.append(c)
  return FgAbelianGroup.from_cyclic(orders)


class PresentedGroup:
  """Z^n modulo the column span of a relation matrix.

  When built from a chain complex it also remembers ``basis`` (cycles of
  the ambient chain group, one column per generator), ``coords`` (a left
  inverse of ``basis`` on the cycle lattice) and the outgoing boundary used
  to recognise cycles.
  """

  def __init__(self, relations: IntMatrix, basis: IntMatrix | None = None,
               coords: IntMatrix | None = None, boundary: IntMatrix | None = None):
    self.relations = relations
    self.generator_count = relations.rows
    self.basis = basis
    self.coords = coords
    self.boundary = boundary
    self.snf = smith_normal_form(relations)

  @classmethod
  def free(cls, n: int) -> "PresentedGroup":
    return cls(IntMatrix.zeros(n, 0))

  @classmethod
  def trivial(cls) -> "PresentedGroup":
    return cls(IntMatrix.zeros(0, 0))

  @cached_property
  def group(self) -> FgAbelianGroup:
    inv = self.snf.invariants
    return FgAbelianGroup(self.generator_count - len(inv), tuple(d for d in inv if d > 1))

  def normal_form(self, x: Sequence[int]) -> tuple[int, ...]:
    y = self.snf.U.apply(x)
    for i, d in enumerate(self.snf.invariants):
      y[i] %= d
    return tuple(y)

  def is_zero(self, x: Sequence[int]) -> bool:
    return not any(self.normal_form(x))

  def equal(self, x: Sequence[int], y: Sequence[int]) -> bool:
    return self.is_zero([a - b for a, b in zip(x, y)])

  def is_cycle(self, v: Sequence[int]) -> bool:
    return self.boundary is None or not any(self.boundary.apply(v))

  def coordinates(self, v: Sequence[int]) -> list[int]:
    """Generator coordinates of an ambient cycle."""
    if self.coords is None:
      return list(v)
    if not self.is_cycle(v):
      raise NotWellDefined("vector is not a cycle")
    return self.coords.apply(v)

  def ambient(self, x: Sequence[int]) -> list[int]:
    return list(x) if self.basis is None else self.basis.apply(x)

  def generators(self) -> list[tuple[int, list[int]]]:
    """(order, representative) for each invariant-factor summand; order 0 means Z."""
    inv = self.snf.invariants
    out = []
    for i in range(self.generator_count):
      d = inv[i] if i < len(inv) else 0
      if d == 1:
        continue
      out.append((d, self.ambient(self.snf.U_inv.column(i))))
    return out

  def __repr__(self) -> str:
    return f"PresentedGroup({self.group})"


class GroupHom:
  """Homomorphism between presented groups given on generators.

  Construction checks that relations go to relations, so holding an
  instance certifies well-definedness.
  """

  def __init__(self, source: PresentedGroup, target: PresentedGroup, matrix: IntMatrix):
    if matrix.shape != (target.generator_count, source.generator_count):
      raise ValueError(f"matrix shape {matrix.shape} does not fit the groups")
    self.source, self.target, self.matrix = source, target, matrix
    image = matrix @ source.relations
    for j in range(image.cols):
      if not target.is_zero(image.column(j)):
        raise NotWellDefined(f"relation {j} is not sent to a relation")

  @classmethod
  def zero(cls, source: PresentedGroup, target: PresentedGroup) -> "GroupHom":
    return cls(source, target, IntMatrix.zeros(target.generator_count, source.generator_count))

  def __call__(self, x: Sequence[int]) -> list[int]:
    return self.matrix.apply(x)

  def compose(self, first: "GroupHom") -> "GroupHom":
    """``self`` after ``first``."""
    return GroupHom(first.source, self.target, self.matrix @ first.matrix)

  def is_injective(self) -> bool:
    return is_exact_at(GroupHom.zero(PresentedGroup.trivial(), self.source), self)

  def is_surjective(self) -> bool:
    return is_exact_at(self, GroupHom.zero(self.target, PresentedGroup.trivial()))

  def is_isomorphism(self) -> bool:
    return self.is_injective() and self.is_surjective()

  def is_identity(self) -> bool:
    n = self.source.generator_count
    return all(self.target.equal(self.matrix.column(j), [int(i == j) for i in range(n)])
               for j in range(n))


def group_from_relations(relations: IntMatrix) -> FgAbelianGroup:
  """Iso class of Z^rows / (column span of ``relations``).

  >>> group_from_relations(IntMatrix([[2, 0], [0, 4]]))
  FgAbelianGroup(rank=0, torsion=(2, 4))
  """
  return PresentedGroup(relations).group


def homology_of_pair(d_out: IntMatrix, d_in: IntMatrix) -> PresentedGroup:
  """ker(d_out) / im(d_in), with cycle representatives kept."""
  if d_out.cols != d_in.rows:
    raise ValueError(f"shapes {d_out.shape} and {d_in.shape} do not compose")
  if not (d_out @ d_in).is_zero():
    raise CompositionNonzero("d_out @ d_in is not zero")
  s = smith_normal_form(d_out)
  n, rho = d_out.cols, s.rank
  basis = s.V.submatrix(range(n), range(rho, n))
  coords = s.V_inv.submatrix(range(rho, n), range(n))
  return PresentedGroup(coords @ d_in, basis=basis, coords=coords, boundary=d_out)


def induced_hom(f: IntMatrix, src: PresentedGroup, tgt: PresentedGroup) -> GroupHom:
  """The map on subquotients induced by an ambient chain-level matrix."""
  images = [f.apply(src.ambient(col)) for col in IntMatrix.identity(src.generator_count).columns()]
  cols = []
  for v in images:
    if not tgt.is_cycle(v):
      raise NotWellDefined("a cycle is sent to a non-cycle")
    cols.append(tgt.coordinates(v))
  return GroupHom(src, tgt, IntMatrix.from_columns(cols, tgt.generator_count))


def _preimage_of_relations(h: GroupHom) -> IntMatrix:
  """Lattice {x : h x lies in the target relations}, as columns."""
  n = h.source.generator_count
  block = h.matrix.hstack(h.target.relations)
  k = kernel_basis(block)
  return k.submatrix(range(n), range(k.cols))


def is_exact_at(g: GroupHom, h: GroupHom) -> bool:
  """True iff im(g) = ker(h) inside the middle group."""
  B = g.target
  if h.source.generator_count != B.generator_count:
    raise ValueError("g and h do not meet at a common group")
  n = B.generator_count
  if n == 0:
    return True
  image = Lattice(g.matrix.hstack(B.relations))
  kernel = Lattice(_preimage_of_relations(h).hstack(B.relations))
  return image == kernel
