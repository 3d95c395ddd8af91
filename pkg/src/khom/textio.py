"""Text formats: skeleton files, vertex/edge maps, labellings, cochains.

Skeleton files look like::

    kgraph 1
    k 2
    vertex v
    edge a 1 v v
    edge e 2 v v
    square a e = e a

``edge NAME COLOUR RANGE SOURCE``; ``square F1 G1 = G2 F2`` reads f1 g1 = g2 f2
with the f-edges of the lower colour.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DuplicateName, ParseError, UnknownReference
from .kgraph import Edge, Skeleton, Square

NAME = re.compile(r"[A-Za-z0-9_]+\Z")


def _lines(text: str):
  for n, raw in enumerate(text.splitlines(), start=1):
    body = raw.split("#", 1)[0]
    words = body.split()
    if words:
      yield n, raw, words


def _col(raw: str, word: str) -> int:
  return raw.find(word) + 1


def _name(word: str, n: int, raw: str) -> str:
  if not NAME.match(word):
    raise ParseError(f"bad name {word!r}", n, _col(raw, word))
  return word


def _int(word: str, n: int, raw: str) -> int:
  try:
    return int(word)
  except ValueError:
    raise ParseError(f"expected an integer, got {word!r}", n, _col(raw, word)) from None


def parse_skeleton(text: str, name: str = "") -> Skeleton:
  k = None
  header = False
  vertices: list[str] = []
  vseen: set[str] = set()
  edges: dict[str, Edge] = {}
  squares: list[Square] = []
  for n, raw, w in _lines(text):
    head = w[0]
    if not header:
      if w != ["kgraph", "1"]:
        raise ParseError("file must start with 'kgraph 1'", n, 1)
      header = True
      continue
    if head == "k":
      if len(w) != 2:
        raise ParseError("expected 'k N'", n, 1)
      if k is not None:
        raise ParseError("rank declared twice", n, 1)
      k = _int(w[1], n, raw)
      if k < 0:
        raise ParseError("rank must be nonnegative", n, _col(raw, w[1]))
    elif head == "vertex":
      if len(w) != 2:
        raise ParseError("expected 'vertex NAME'", n, 1)
      v = _name(w[1], n, raw)
      if v in vseen:
        raise DuplicateName(f"vertex {v} declared twice", n, _col(raw, v))
      vseen.add(v)
      vertices.append(v)
    elif head == "edge":
      if k is None:
        raise ParseError("'k N' must come before edges", n, 1)
      if len(w) != 5:
        raise ParseError("expected 'edge NAME COLOUR RANGE SOURCE'", n, 1)
      e = _name(w[1], n, raw)
      if e in edges:
        raise DuplicateName(f"edge {e} declared twice", n, _col(raw, e))
      colour = _int(w[2], n, raw)
      if not 1 <= colour <= k:
        raise ParseError(f"colour {colour} outside 1..{k}", n, _col(raw, w[2]))
      for v in w[3:]:
        _name(v, n, raw)
        if v not in vseen:
          raise UnknownReference(f"unknown vertex {v}", n, _col(raw, v))
      edges[e] = Edge(e, colour, w[3], w[4])
    elif head == "square":
      if len(w) != 6 or w[3] != "=":
        raise ParseError("expected 'square F1 G1 = G2 F2'", n, 1)
      names = [w[1], w[2], w[4], w[5]]
      for e in names:
        _name(e, n, raw)
        if e not in edges:
          raise UnknownReference(f"unknown edge {e}", n, _col(raw, e))
      f1, g1, g2, f2 = (edges[e] for e in names)
      if not (f1.colour == f2.colour < g1.colour == g2.colour):
        raise ParseError("square needs colour(F1) = colour(F2) < colour(G1) = colour(G2)",
                         n, _col(raw, w[1]))
      squares.append(Square(*names))
    else:
      raise ParseError(f"unknown directive {head!r}", n, 1)
  if not header:
    raise ParseError("empty file", 1, 1)
  if k is None:
    raise ParseError("missing 'k N' line")
  return Skeleton(k, vertices, list(edges.values()), squares, name)


def serialize_skeleton(sk: Skeleton) -> str:
  out = ["kgraph 1", f"k {sk.k}"]
  out += [f"vertex {v}" for v in sk.vertices]
  out += [f"edge {e.name} {e.colour} {e.range} {e.source}" for e in sk.edges]
  out += [f"square {q.f1} {q.g1} = {q.g2} {q.f2}" for q in sk.squares]
  return "\n".join(out) + "\n"


def read_skeleton(path) -> Skeleton:
  from pathlib import Path
  p = Path(path)
  return parse_skeleton(p.read_text(encoding="utf-8"), name=p.stem)


@dataclass
class MapFile:
  """Contents of a vmap/emap/label/act file."""
  vmap: dict[str, str] = field(default_factory=dict)
  emap: dict[str, str] = field(default_factory=dict)
  labels: dict[str, str] = field(default_factory=dict)
  group: str | None = None
  actions: dict[str, "MapFile"] = field(default_factory=dict)


def parse_map(text: str) -> MapFile:
  """``vmap A B`` / ``emap A B`` / ``label E gI`` lines.

  An action file adds ``group SPEC`` and opens one block per group element
  with ``act gI``; vmap/emap lines after it belong to that element.
  """
  top = MapFile()
  cur = top
  for n, raw, w in _lines(text):
    head = w[0]
    if head in ("vmap", "emap", "label"):
      if len(w) != 3:
        raise ParseError(f"expected '{head} A B'", n, 1)
      a, b = (_name(x, n, raw) for x in w[1:])
      table = {"vmap": cur.vmap, "emap": cur.emap, "label": cur.labels}[head]
      if a in table:
        raise DuplicateName(f"{a} mapped twice", n, _col(raw, a))
      table[a] = b
    elif head == "group":
      top.group = " ".join(w[1:])
    elif head == "act":
      if len(w) != 2:
        raise ParseError("expected 'act gI'", n, 1)
      cur = MapFile()
      if w[1] in top.actions:
        raise DuplicateName(f"element {w[1]} given twice", n, _col(raw, w[1]))
      top.actions[w[1]] = cur
    else:
      raise ParseError(f"unknown directive {head!r}", n, 1)
  return top


def serialize_map(vmap: dict, emap: dict) -> str:
  return "".join([f"vmap {a} {b}\n" for a, b in vmap.items()] +
                 [f"emap {a} {b}\n" for a, b in emap.items()])


_MOD = re.compile(r"(-?\d+)\s+mod\s+(\d+)\Z")
_FRAC = re.compile(r"(-?\d+)/(\d+)\Z")


def parse_value(text: str):
  """``INT``, ``INT mod M`` or ``P/Q``; returns int, (int, modulus) or Fraction."""
  text = text.strip()
  m = _MOD.match(text)
  if m:
    return (int(m.group(1)), int(m.group(2)))
  m = _FRAC.match(text)
  if m:
    if int(m.group(2)) == 0:
      raise ParseError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), int(m.group(2)))
  try:
    return int(text)
  except ValueError:
    raise ParseError(f"bad value {text!r}") from None


def parse_cube_values(text: str) -> dict[str, object]:
  """``cube <index-or-name> = <value>`` lines, keyed by the raw cube token."""
  out: dict[str, object] = {}
  for n, raw, w in _lines(text):
    if w[0] != "cube" or "=" not in w:
      raise ParseError("expected 'cube KEY = VALUE'", n, 1)
    eq = w.index("=")
    if eq != 2:
      raise ParseError("expected a single cube key before '='", n, 1)
    key = w[1]
    if key in out:
      raise DuplicateName(f"cube {key} given twice", n, _col(raw, key))
    try:
      out[key] = parse_value(" ".join(w[3:]))
    except ParseError as err:
      raise ParseError(str(err), n, _col(raw, w[3]) if len(w) > 3 else 1) from None
  return out
