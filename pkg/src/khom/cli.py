"""Command-line interface.

Exit codes: 0 success, 1 validation failure, 2 parse or usage error,
3 a requested verification failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import constructors as C
from .cohomology import (Cochain, RationalsModOne, cohomologous,
                         cohomology_groups, is_cocycle, parse_coeff,
                         pullback_cocycle, uct_verify)
from .corpus import BUNDLED, bundled
from .cubical import check_cubical_identities, default_rmax, normalized_complex_iso
from .errors import (KGraphError, NotACocycle, NotACycle, NotAutomorphism,
                     NotFree, NotValidated, NotWellDefined, ParseError,
                     RMaxExceeded, ValidationFailed)
from .homology import (homology_groups, kunneth_verify, pv_verify, crossed_cone,
                       trail_decompose)
from .kgraph import KGraph, Skeleton, validate
from .textio import (parse_cube_values, parse_map, read_skeleton,
                     serialize_skeleton)

OK, INVALID, PARSE, FAILED = 0, 1, 2, 3


class Verification(Exception):
  """A check ran and came out negative."""


def _load(path: str) -> KGraph:
  return KGraph(read_skeleton(path))


def _emit(text: str) -> None:
  sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _json(data) -> None:
  _emit(json.dumps(data, sort_keys=False))


def _morphism(source: KGraph, target: KGraph, path: str) -> C.KGraphMorphism:
  mf = parse_map(Path(path).read_text(encoding="utf-8"))
  m = C.KGraphMorphism(source, target, mf.vmap, mf.emap)
  rep = C.morphism_check(m)
  if not rep.ok:
    raise ValidationFailed(rep)
  return m


def _automorphism(g: KGraph, path: str) -> C.KGraphMorphism:
  m = _morphism(g, g, path)
  if not m.is_automorphism():
    raise NotAutomorphism(f"{path} is not an automorphism")
  return m


def _cochain(g: KGraph, path: str, level: int, coeff) -> Cochain:
  """Read ``cube KEY = VALUE`` lines; KEY is a cube index or its label."""
  values = parse_cube_values(Path(path).read_text(encoding="utf-8"))
  cubes = g.cubes(level)
  by_label = {c.label(): i for i, c in enumerate(cubes)}
  table = [0] * len(cubes)
  for key, v in values.items():
    if key.isdigit() and int(key) < len(cubes):
      i = int(key)
    elif key in by_label:
      i = by_label[key]
    else:
      raise ParseError(f"{path}: no level {level} cube {key!r}")
    try:
      table[i] = coeff.reduce(v)
    except ValueError as err:
      raise ParseError(f"{path}: {err}") from None
  return Cochain(level, coeff, tuple(table))


def _print_groups(symbol: str, gs) -> None:
  for r, x in enumerate(gs):
    _emit(f"{symbol}{r} = {x}")


def _skeleton_out(sk: Skeleton) -> None:
  KGraph(sk)
  _emit(serialize_skeleton(sk).rstrip("\n"))


# --- subcommands ---------------------------------------------------------------

def cmd_validate(a):
  sk = read_skeleton(a.file)
  rep = validate(sk)
  if not rep.ok:
    for v in rep.violations:
      print(str(v), file=sys.stderr)
    return INVALID
  _emit(f"ok: k={sk.k} vertices={len(sk.vertices)} edges={len(sk.edges)} squares={len(sk.squares)}")
  return OK


def cmd_homology(a):
  prof = homology_groups(_load(a.file))
  if a.json:
    _json(prof.to_json())
  else:
    _print_groups("H_", prof.summary)
    _emit(f"euler = {prof.euler}")
  return OK


def cmd_cohomology(a):
  g = _load(a.file)
  coeff = parse_coeff(a.coeff)
  gs = cohomology_groups(g, coeff)
  if a.json:
    _json({"graph": g.name, "coeff": coeff.name, "H": [x.to_json() for x in gs]})
  else:
    _print_groups("H^", gs)
  return OK


def _gen_spec(spec: str) -> Skeleton:
  """NAME or NAME:ARGS, e.g. ``t_k:2``, ``delta_mod:2,0;0,2`` or a bundled name."""
  name, _, args = spec.partition(":")
  if name in BUNDLED and not args:
    return bundled(name)
  try:
    if name in ("t_k", "b_n", "cycle", "torsion_family"):
      return C.standard_graph(name, int(args))
    if name == "omega":
      return C.omega([int(x) for x in args.split(",")])
    if name == "delta_mod":
      rows = [[int(x) for x in row.split(",")] for row in args.split(";")]
      return C.delta_mod(rows)
  except ValueError as err:
    raise ParseError(f"bad generator arguments {args!r}: {err}") from None
  raise ParseError(f"unknown generator {spec!r}; try t_k:K, b_n:N, cycle:N, omega:M1,M2, "
                   f"delta_mod:ROWS, torsion_family:N or one of {', '.join(BUNDLED)}")


def cmd_gen(a):
  _skeleton_out(_gen_spec(a.spec))
  return OK


def cmd_product(a):
  _skeleton_out(C.cartesian_product(_load(a.a), _load(a.b)))
  return OK


def cmd_disjoint(a):
  _skeleton_out(C.disjoint_union(_load(a.a), _load(a.b)))
  return OK


def cmd_op(a):
  _skeleton_out(C.opposite(_load(a.a)))
  return OK


def _group_and_labels(g: KGraph, group: str, label_path: str):
  G = C.GroupSpec.parse(group)
  mf = parse_map(Path(label_path).read_text(encoding="utf-8"))
  labels = {e: G.index(x) for e, x in mf.labels.items()}
  missing = sorted(set(g.edge) - set(labels))
  if missing:
    raise ParseError(f"{label_path}: no label for edge(s) {', '.join(missing)}")
  return G, labels


def cmd_skew(a):
  g = _load(a.file)
  try:
    G, c = _group_and_labels(g, a.group, a.label)
  except ValueError as err:
    raise ParseError(str(err)) from None
  _skeleton_out(C.skew_product(g, G, c))
  return OK


def cmd_crossed(a):
  g = _load(a.file)
  _skeleton_out(C.crossed_product(g, _automorphism(g, a.auto)))
  return OK


def cmd_quotient(a):
  g = _load(a.file)
  mf = parse_map(Path(a.action).read_text(encoding="utf-8"))
  if mf.group is None:
    raise ParseError(f"{a.action}: missing 'group SPEC' line")
  try:
    G = C.GroupSpec.parse(mf.group)
    given = {G.index(x): C.KGraphMorphism(g, g, blk.vmap, blk.emap) for x, blk in mf.actions.items()}
  except ValueError as err:
    raise ParseError(str(err)) from None
  for x, m in given.items():
    rep = C.morphism_check(m, automorphism=True)
    if not rep.ok:
      raise NotAutomorphism(f"g{x}: {rep}")
  action = C.FreeAction.generated(G, g, given)
  sk, _ = C.quotient_by_action(action)
  _skeleton_out(sk)
  return OK


def cmd_pullback(a):
  g = _load(a.file)
  try:
    pi = [int(x) for x in a.colours.split(",")]
    sk = C.colour_pullback(g, pi)
  except ValueError as err:
    raise ParseError(str(err)) from None
  _skeleton_out(sk)
  return OK


def cmd_kunneth(a):
  A, B = _load(a.a), _load(a.b)
  rep = kunneth_verify(A, B)
  out = {"graph": f"{A.name}x{B.name}", "H": [x.to_json() for x in rep.actual],
         "verdicts": {"kunneth": rep.ok, "torsion_free_shortcut": rep.shortcut_ok}}
  if a.json:
    _json(out)
  else:
    for r, (e, x) in enumerate(zip(rep.expected, rep.actual)):
      _emit(f"H_{r}: predicted {e}, computed {x}")
    _emit(f"kunneth: {'pass' if rep.ok else 'FAIL'}")
  if a.verify and not (rep.ok and rep.shortcut_ok):
    raise Verification("Kunneth prediction does not match the product's homology")
  return OK


def cmd_pv(a):
  g = _load(a.file)
  alpha = _automorphism(g, a.auto)
  rep = pv_verify(g, alpha)
  cone = crossed_cone(g, alpha)
  nodes = [{"node": n.label, "exact": n.exact} for n in rep.nodes]
  if a.json:
    _json({"graph": g.name, "H": [x.to_json() for x in homology_groups(cone.crossed).summary],
           "verdicts": {"exact": rep.ok, "cone": cone.intertwines, "nodes": nodes}})
  else:
    for n in rep.nodes:
      _emit(f"{n.label}: {'exact' if n.exact else 'NOT exact'}")
    _emit(f"mapping cone: {'isomorphic' if cone.intertwines else 'MISMATCH'}")
  if a.verify and not (rep.ok and cone.intertwines):
    raise Verification("exact sequence check failed")
  return OK


def cmd_trails(a):
  g = _load(a.file)
  chain = _cochain(g, a.chain, 1, _IntValues())
  out = trail_decompose(g, chain.values)
  for m, t in out:
    steps = " ".join(e if s == 1 else f"-{e}" for e, s in t.steps)
    _emit(f"{m} x ({steps})")
  return OK


class _IntValues:
  """Integer coefficients for chain files."""
  name = "Z"

  def reduce(self, x):
    if isinstance(x, int):
      return x
    raise ValueError(f"chain coefficient {x!r} is not an integer")


def cmd_cocycle(a):
  g = _load(a.file)
  coeff = parse_coeff(a.coeff)
  if a.action == "check":
    phi = _cochain(g, a.cochains[0], a.level, coeff)
    ok = is_cocycle(g, phi)
    _emit("cocycle" if ok else "not a cocycle")
    return OK if ok else FAILED
  if a.action == "cohomologous":
    if len(a.cochains) != 2:
      raise ParseError("cohomologous needs two cochain files")
    phi, psi = (_cochain(g, p, a.level, coeff) for p in a.cochains)
    alpha = cohomologous(g, phi, psi)
    if alpha is None:
      _emit("not cohomologous")
      return FAILED
    _emit("cohomologous; certificate:")
    for c, v in zip(g.cubes(a.level - 1), alpha.values):
      if not coeff.is_zero(v):
        _emit(f"cube {c.label()} = {coeff.format(v)}")
    return OK
  # pullback: FILE is the source; the cochain lives on --onto
  if not (a.onto and a.map):
    raise ParseError("pullback needs --onto TARGET and --map FILE")
  target = _load(a.onto)
  m = _morphism(g, target, a.map)
  phi = _cochain(target, a.cochains[0], a.level, coeff)
  out = pullback_cocycle(m, phi)
  for c, v in zip(g.cubes(a.level), out.values):
    _emit(f"cube {c.label()} = {coeff.format(v)}")
  return OK


def cmd_uct(a):
  g = _load(a.file)
  coeff = parse_coeff(a.coeff)
  if isinstance(coeff, RationalsModOne):
    raise ParseError("uct needs z or z/M coefficients")
  rep = uct_verify(g, coeff)
  if a.json:
    _json({"graph": g.name, "coeff": coeff.name, "H": [x.to_json() for x in rep.direct],
           "verdicts": {"uct": rep.ok}})
  else:
    for r, (d, p) in enumerate(zip(rep.direct, rep.predicted)):
      _emit(f"H^{r}: computed {d}, predicted {p}")
    _emit(f"uct: {'pass' if rep.ok else 'FAIL'}")
  return OK if rep.ok else FAILED


def cmd_cubical(a):
  g = _load(a.file)
  r_max = a.rmax if a.rmax is not None else default_rmax(g)
  out = {"graph": g.name, "rmax": r_max}
  ok = True
  if a.check:
    rel = check_cubical_identities(g, r_max)
    iso = normalized_complex_iso(g, coverage_up_to=min(4, r_max))
    out["verdicts"] = {"relations": rel.to_json(), "normalized": iso.to_json()}
    ok = rel.ok and iso.ok
  else:
    from .cubical import cubical_cubes
    out["counts"] = [len(cubical_cubes(g, r, r_max)) for r in range(r_max + 1)]
  _json(out)
  return OK if ok else FAILED


# --- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
  p = argparse.ArgumentParser(prog="khom", description="Homology and cohomology of k-graphs.")
  sub = p.add_subparsers(dest="command", required=True)

  def add(name, fn, help_):
    s = sub.add_parser(name, help=help_)
    s.set_defaults(fn=fn)
    return s

  add("validate", cmd_validate, "check a skeleton file").add_argument("file")
  s = add("homology", cmd_homology, "homology groups")
  s.add_argument("file")
  s.add_argument("--json", action="store_true")
  s = add("cohomology", cmd_cohomology, "cohomology groups")
  s.add_argument("file")
  s.add_argument("--coeff", default="z", help="z or z/M")
  s.add_argument("--json", action="store_true")
  add("gen", cmd_gen, "print a standard graph").add_argument("spec")
  for name, fn, help_ in (("product", cmd_product, "cartesian product"),
                          ("disjoint", cmd_disjoint, "disjoint union")):
    s = add(name, fn, help_)
    s.add_argument("a")
    s.add_argument("b")
  add("op", cmd_op, "opposite graph").add_argument("a")
  s = add("skew", cmd_skew, "skew product by a labelling")
  s.add_argument("file")
  s.add_argument("--group", required=True)
  s.add_argument("--label", required=True)
  s = add("crossed", cmd_crossed, "crossed product by an automorphism")
  s.add_argument("file")
  s.add_argument("--auto", required=True)
  s = add("quotient", cmd_quotient, "quotient by a free group action")
  s.add_argument("file")
  s.add_argument("--action", required=True)
  s = add("pullback", cmd_pullback, "pull back along a colour map")
  s.add_argument("file")
  s.add_argument("--colours", required=True, help="comma-separated images of 1..l")
  s = add("kunneth", cmd_kunneth, "compare product homology with the Kunneth formula")
  s.add_argument("a")
  s.add_argument("b")
  s.add_argument("--verify", action="store_true")
  s.add_argument("--json", action="store_true")
  s = add("pv", cmd_pv, "exact sequence of a crossed product")
  s.add_argument("file")
  s.add_argument("--auto", required=True)
  s.add_argument("--verify", action="store_true")
  s.add_argument("--json", action="store_true")
  s = add("trails", cmd_trails, "decompose a 1-cycle into simple closed trails")
  s.add_argument("file")
  s.add_argument("--chain", required=True)
  s = add("cocycle", cmd_cocycle, "cocycle checks, comparison and pullback")
  s.add_argument("file")
  s.add_argument("action", choices=("check", "cohomologous", "pullback"))
  s.add_argument("cochains", nargs="+")
  s.add_argument("--coeff", default="z")
  s.add_argument("--level", type=int, default=2)
  s.add_argument("--onto")
  s.add_argument("--map")
  s = add("uct", cmd_uct, "check the universal coefficient theorem")
  s.add_argument("file")
  s.add_argument("--coeff", default="z")
  s.add_argument("--json", action="store_true")
  s = add("cubical", cmd_cubical, "cubical set counts and identities")
  s.add_argument("file")
  s.add_argument("--check", action="store_true")
  s.add_argument("--rmax", type=int)
  return p


def run_command(argv=None) -> int:
  parser = build_parser()
  try:
    args = parser.parse_args(argv)
  except SystemExit as e:
    return PARSE if e.code else OK
  try:
    return args.fn(args)
  except (ParseError, RMaxExceeded) as err:
    print(f"parse error: {err}", file=sys.stderr)
    return PARSE
  except OSError as err:
    print(f"error: {err}", file=sys.stderr)
    return PARSE
  except ValidationFailed as err:
    for v in err.report.violations:
      print(str(v), file=sys.stderr)
    return INVALID
  except (NotAutomorphism, NotFree, NotValidated, NotWellDefined) as err:
    print(f"invalid: {err}", file=sys.stderr)
    return INVALID
  except (Verification, NotACocycle, NotACycle) as err:
    print(f"verification failed: {err}", file=sys.stderr)
    return FAILED
  except KGraphError as err:
    print(f"error: {err}", file=sys.stderr)
    return FAILED
  except ValueError as err:
    print(f"error: {err}", file=sys.stderr)
    return PARSE


def main() -> None:
  sys.exit(run_command())
