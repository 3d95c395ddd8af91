"""Cochains with coefficients in Z, Z/m or Q/Z, and cohomology.

Cochains are value tables over the canonical cube order and the
coboundary is d^r(f) = f o boundary_{r+1}, so its matrix is the transpose
of the boundary matrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .abelian import (FgAbelianGroup, IntMatrix, binary_functor,
                      homology_of_pair, invariant_factors, smith_normal_form)
from .constructors import KGraphMorphism, _graph
from .errors import NotACocycle
from .homology import homology_summary
from .kgraph import KGraph


class CoeffGroup:
  """Coefficient group; values are ints, ints mod m, or Fractions mod 1."""
  name = ""

  def reduce(self, x):
    raise NotImplementedError

  def is_zero(self, x) -> bool:
    return self.reduce(x) == 0

  def as_group(self) -> FgAbelianGroup:
    raise NotImplementedError(f"{self.name} is not finitely generated")

  def format(self, x) -> str:
    return str(self.reduce(x))

  def __eq__(self, other):
    return type(self) is type(other) and self.__dict__ == other.__dict__

  def __hash__(self):
    return hash(self.name)

  def __repr__(self):
    return self.name


class Int(CoeffGroup):
  name = "Z"

  def reduce(self, x):
    if isinstance(x, Fraction):
      if x.denominator != 1:
        raise ValueError(f"{x} is not an integer")
      x = x.numerator
    if isinstance(x, tuple):
      raise ValueError("a residue is not an integer")
    return int(x)

  def as_group(self):
    return FgAbelianGroup(1)


class IntMod(CoeffGroup):
  def __init__(self, m: int):
    if m < 2:
      raise ValueError("modulus must be at least 2")
    self.m = m
    self.name = f"Z/{m}"

  def reduce(self, x):
    if isinstance(x, tuple):
      v, m = x
      if m != self.m:
        raise ValueError(f"residue mod {m} given for Z/{self.m}")
      x = v
    if isinstance(x, Fraction):
      if x.denominator != 1:
        raise ValueError(f"{x} is not an integer")
      x = x.numerator
    return int(x) % self.m

  def as_group(self):
    return FgAbelianGroup(0, (self.m,))

  def format(self, x):
    return f"{self.reduce(x)} mod {self.m}"


class RationalsModOne(CoeffGroup):
  name = "Q/Z"

  def reduce(self, x):
    if isinstance(x, tuple):
      raise ValueError("a residue is not a rational")
    x = Fraction(x)
    return x - (x.numerator // x.denominator)

  def format(self, x):
    v = self.reduce(x)
    return f"{v.numerator}/{v.denominator}"


def parse_coeff(spec: str) -> CoeffGroup:
  """``z``, ``z/M`` or ``q/z``."""
  s = spec.strip().lower()
  if s in ("z", "int"):
    return Int()
  if s in ("q/z", "qz"):
    return RationalsModOne()
  if s.startswith("z/"):
    return IntMod(int(s[2:]))
  raise ValueError(f"unknown coefficient group {spec!r}")


@dataclass(frozen=True)
class Cochain:
  level: int
  coeff: CoeffGroup
  values: tuple

  def __post_init__(self):
    object.__setattr__(self, "values", tuple(self.coeff.reduce(v) for v in self.values))

  def __sub__(self, other: "Cochain") -> "Cochain":
    return Cochain(self.level, self.coeff, tuple(a - b for a, b in zip(self.values, other.values)))

  def __add__(self, other: "Cochain") -> "Cochain":
    return Cochain(self.level, self.coeff, tuple(a + b for a, b in zip(self.values, other.values)))

  def is_zero(self) -> bool:
    return all(self.coeff.is_zero(v) for v in self.values)

  @classmethod
  def zero(cls, g: KGraph, level: int, coeff: CoeffGroup) -> "Cochain":
    return cls(level, coeff, (0,) * len(_graph(g).cubes(level)))


@dataclass(frozen=True)
class CocycleClass:
  cocycle: Cochain
  certificate: Cochain | None = None


def coboundary_matrix(g, r: int) -> IntMatrix:
  """Integer matrix of d^r : C^r -> C^{r+1}."""
  return _graph(g).complex.boundary(r + 1).transpose()


def cochain_complex(g, coeff: CoeffGroup | None = None) -> list[IntMatrix]:
  """Matrices of d^0 .. d^k; entries are integers acting on any coefficients."""
  g = _graph(g)
  return [coboundary_matrix(g, r) for r in range(g.k + 1)]


def coboundary(g, phi: Cochain) -> Cochain:
  g = _graph(g)
  M = coboundary_matrix(g, phi.level)
  vals = [sum((a * v for a, v in zip(row, phi.values) if a), 0) for row in M.to_lists()]
  return Cochain(phi.level + 1, phi.coeff, tuple(vals))


def is_cocycle(g, phi: Cochain) -> bool:
  return coboundary(g, phi).is_zero()


def cohomology_groups(g, coeff: CoeffGroup) -> list[FgAbelianGroup]:
  """H^0..H^k with Z or Z/m coefficients."""
  g = _graph(g)
  d = cochain_complex(g)
  if isinstance(coeff, Int):
    prev = lambda r: d[r - 1] if r else IntMatrix.zeros(len(g.cubes(0)), 0)
    return [homology_of_pair(d[r], prev(r)).group for r in range(g.k + 1)]
  if not isinstance(coeff, IntMod):
    raise ValueError(f"cohomology groups are not computed over {coeff}")
  m = coeff.m
  # A free cochain complex splits into pieces 0 -> Z -d-> Z -> 0 and Z; each
  # piece contributes Z/gcd(d, m) in both of its degrees.
  inv = [invariant_factors(M) for M in d]
  out = []
  for r in range(g.k + 1):
    c = len(g.cubes(r))
    below = inv[r - 1] if r else []
    free = c - len(inv[r]) - len(below)
    orders = [m] * free + [gcd(x, m) for x in inv[r]] + [gcd(x, m) for x in below]
    out.append(FgAbelianGroup.from_cyclic(orders))
  return out


def _prime_factors(n: int) -> list[int]:
  out, p = [], 2
  while p * p <= n:
    if n % p == 0:
      out.append(p)
      while n % p == 0:
        n //= p
    p += 1
  if n > 1:
    out.append(n)
  return out


def group_from_subgroup_counts(m: int, counts) -> FgAbelianGroup:
  """Rebuild a finite group of exponent dividing m from the sizes |G[d]|.

  For a prime p, |G[p^j]| / |G[p^(j-1)]| = p^a_j where a_j counts the cyclic
  p-factors of order at least p^j.
  """
  orders = []
  for p in _prime_factors(m):
    at_least = []
    j, prev = 1, 1
    while m % p ** j == 0:
      size = counts(p ** j)
      ratio, a = size // prev, 0
      while ratio > 1:
        ratio //= p
        a += 1
      at_least.append(a)
      prev = size
      j += 1
    at_least.append(0)
    for j in range(1, len(at_least)):
      orders += [p ** j] * (at_least[j - 1] - at_least[j])
  return FgAbelianGroup(0, tuple(orders))


def _span_mod(gens: list[tuple[int, ...]], m: int, n: int) -> set[tuple[int, ...]]:
  seen = {(0,) * n}
  frontier = [(0,) * n]
  while frontier:
    x = frontier.pop()
    for gv in gens:
      y = tuple((a + b) % m for a, b in zip(x, gv))
      if y not in seen:
        seen.add(y)
        frontier.append(y)
  return seen


def brute_force_cohomology(g, m: int, r: int, limit: int = 2 ** 16) -> FgAbelianGroup | None:
  """H^r(g; Z/m) by listing every cochain; None when there are more than ``limit``."""
  g = _graph(g)
  c = len(g.cubes(r))
  if m ** c > limit:
    return None
  D = coboundary_matrix(g, r).to_lists()
  cocycles = [x for x in itertools.product(range(m), repeat=c)
              if all(sum(a * v for a, v in zip(row, x)) % m == 0 for row in D)]
  if r:
    P = coboundary_matrix(g, r - 1)
    gens = [tuple(v % m for v in P.column(j)) for j in range(P.cols)]
  else:
    gens = []
  bounds = _span_mod(gens, m, c)
  nb = len(bounds)

  def counts(d):
    return sum(1 for x in cocycles if tuple((d * a) % m for a in x) in bounds) // nb

  return group_from_subgroup_counts(m, counts)


def _solve_mod(M: IntMatrix, target: Sequence, coeff: CoeffGroup):
  """Some x with M x = target in the coefficient group, or None."""
  s = smith_normal_form(M)
  c = [sum((a * t for a, t in zip(row, target) if a), 0) for row in s.U.to_lists()]
  ds = s.invariants
  y = [0] * M.cols
  for i, d in enumerate(ds):
    ci = c[i]
    if isinstance(coeff, Int):
      if ci % d:
        return None
      y[i] = ci // d
    elif isinstance(coeff, IntMod):
      m = coeff.m
      h = gcd(d, m)
      if ci % h:
        return None
      mm = m // h
      y[i] = (ci // h) * pow(d // h, -1, mm) % mm if mm > 1 else 0
    else:
      y[i] = Fraction(ci) / d  # Q/Z is divisible
  for ci in c[len(ds):]:
    if not coeff.is_zero(ci):
      return None
  x = [sum((a * v for a, v in zip(row, y) if a), 0) for row in s.V.to_lists()]
  return [coeff.reduce(v) for v in x]


def cohomologous(g, phi: Cochain, psi: Cochain, coeff: CoeffGroup | None = None) -> Cochain | None:
  """A cochain alpha with d(alpha) = phi - psi, or None if the classes differ."""
  g = _graph(g)
  if coeff is not None and phi.coeff != coeff:
    raise ValueError(f"cochains are not {coeff}-valued")
  if phi.level != psi.level or phi.coeff != psi.coeff:
    raise ValueError("cochains must share level and coefficients")
  for x in (phi, psi):
    if not is_cocycle(g, x):
      raise NotACocycle(f"level {x.level} cochain is not a cocycle")
  r = phi.level
  if r == 0:
    return Cochain(0, phi.coeff, ()) if (phi - psi).is_zero() else None
  M = coboundary_matrix(g, r - 1)
  sol = _solve_mod(M, (phi - psi).values, phi.coeff)
  if sol is None:
    return None
  alpha = Cochain(r - 1, phi.coeff, tuple(sol))
  assert (coboundary(g, alpha) - (phi - psi)).is_zero()
  return alpha


def is_coboundary(g, phi: Cochain) -> bool:
  return cohomologous(g, phi, Cochain(phi.level, phi.coeff, (0,) * len(phi.values))) is not None


def pullback_cochain(m: KGraphMorphism, phi: Cochain) -> Cochain:
  """(m* phi)(c) = phi(m(c))."""
  idx = m.target.index(phi.level)
  return Cochain(phi.level, phi.coeff,
                 tuple(phi.values[idx[m.cube(c)]] for c in m.source.cubes(phi.level)))


def pullback_cocycle(m: KGraphMorphism, phi: Cochain) -> Cochain:
  if not is_cocycle(m.target, phi):
    raise NotACocycle("only cocycles are pulled back")
  return pullback_cochain(m, phi)


@dataclass
class UCTReport:
  coeff: CoeffGroup
  direct: list[FgAbelianGroup]
  predicted: list[FgAbelianGroup]

  @property
  def ok(self) -> bool:
    return self.direct == self.predicted


def uct_verify(g, coeff: CoeffGroup) -> UCTReport:
  """Compare H^r with Ext(H_{r-1}, A) + Hom(H_r, A) in every degree."""
  g = _graph(g)
  H = homology_summary(g).groups
  A = coeff.as_group()
  predicted = []
  for r in range(g.k + 1):
    ext = binary_functor("ext", H[r - 1], A) if r else FgAbelianGroup()
    predicted.append(ext + binary_functor("hom", H[r], A))
  return UCTReport(coeff, cohomology_groups(g, coeff), predicted)
