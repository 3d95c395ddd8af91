"""Named regression graphs: the bundled hand-transcribed files plus generated families."""

from __future__ import annotations

from importlib import resources

from .constructors import (b_n, cartesian_product, cycle, delta_mod, t_k,
                           torsion_base, torsion_family)
from .kgraph import Skeleton
from .textio import parse_skeleton

BUNDLED = ("sphere", "torus4", "projective", "klein", "heegaard", "fga3")


def bundled(name: str) -> Skeleton:
  """One of the bundled skeleton files, by stem."""
  if name not in BUNDLED:
    raise KeyError(f"no bundled graph called {name!r}")
  text = resources.files("khom.data").joinpath(f"{name}.kg").read_text(encoding="utf-8")
  return parse_skeleton(text, name=name)


def bundled_path(name: str):
  return resources.files("khom.data").joinpath(f"{name}.kg")


def corpus() -> dict[str, Skeleton]:
  """The graphs every structural check is run over; small enough for exhaustive work."""
  out = {name: bundled(name) for name in BUNDLED}
  for k in range(4):
    out[f"T{k}"] = t_k(k)
  for n in (1, 2, 3):
    out[f"B{n}"] = b_n(n)
  out["cycle3"] = cycle(3)
  out["torsion2"] = torsion_family(2)
  out["torsion3"] = torsion_family(3)
  out["base2"] = torsion_base(2)[0]
  out["delta22"] = delta_mod([[2, 0], [0, 2]])
  out["sphereXB1"] = cartesian_product(bundled("sphere"), b_n(1))
  return {name: sk.renamed(name) for name, sk in out.items()}
