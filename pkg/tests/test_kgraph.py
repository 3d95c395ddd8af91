import itertools
import random
from math import comb

import pytest

from khom.constructors import b_n, disjoint_union, t_k
from khom.errors import IndexOutOfRange, NotValidated, ValidationFailed
from khom.kgraph import (Cube, Edge, KGraph, Skeleton, Square, chain_complex,
                         components, cubes, face, reorder, segment, validate)

from oracles import hexagon_ok, one_vertex_grid


def T2_text_skeleton():
  return Skeleton(2, ["v"], [Edge("a", 1, "v", "v"), Edge("e", 2, "v", "v")],
                  [Square("a", "e", "e", "a")])


def test_t2_valid_and_square_required():
  assert validate(T2_text_skeleton()).ok
  sk = T2_text_skeleton()
  broken = Skeleton(2, sk.vertices, sk.edges, [])
  assert "missing-square" in validate(broken).kinds()
  with pytest.raises(ValidationFailed):
    KGraph(broken)


def test_dangling_and_bad_squares_reported():
  sk = Skeleton(1, ["u"], [Edge("a", 1, "u", "w")], [])
  assert "dangling-endpoint" in validate(sk).kinds()
  sk = Skeleton(2, ["u", "v"], [Edge("a", 1, "u", "v"), Edge("e", 2, "v", "v"),
                                Edge("f", 2, "u", "u")],
                [Square("a", "e", "e", "a")])
  assert "square-endpoints" in validate(sk).kinds()


def test_duplicate_path_reported():
  sk = Skeleton(2, ["v"], [Edge("a", 1, "v", "v"), Edge("e", 2, "v", "v"), Edge("f", 2, "v", "v")],
                [Square("a", "e", "e", "a"), Square("a", "e", "f", "a"), Square("a", "f", "f", "a")])
  assert "duplicate-path" in validate(sk).kinds()


def test_tricolour_violation_matches_route_oracle():
  rng = random.Random(11)
  good, bad = one_vertex_grid(3, 2), one_vertex_grid(3, 2, twist=True)
  assert validate(good).ok and hexagon_ok(good, rng, 12)
  assert "tricolour" in validate(bad).kinds()
  assert not hexagon_ok(bad, rng, 12)


def test_cubes_need_validation_token():
  with pytest.raises(NotValidated):
    cubes(t_k(2), 1)


def test_cube_counts():
  g3 = KGraph(t_k(3))
  assert len(cubes(g3, 2)) == 3
  for k in range(5):
    g = KGraph(t_k(k))
    assert [len(g.cubes(r)) for r in range(k + 1)] == [comb(k, r) for r in range(k + 1)]
    assert g.cubes(k + 1) == []
  g = KGraph(b_n(3))
  assert [c.path[0] for c in g.cubes(1)] == ["f1", "f2", "f3"]


def test_edge_faces(sphere):
  for c in sphere.cubes(1):
    e = sphere.edge[c.path[0]]
    assert face(sphere, c, 1, 1).vertex == e.source
    assert face(sphere, c, 1, 0).vertex == e.range


def test_sphere_square_faces(sphere):
  alpha = sphere.cube_of(("c", "e"))
  assert alpha == sphere.cube_of(("g", "a"))
  assert face(sphere, alpha, 2, 0).path == ("c",)
  assert face(sphere, alpha, 1, 0).path == ("g",)
  assert face(sphere, alpha, 1, 1).path == ("e",)
  assert face(sphere, alpha, 2, 1).path == ("a",)
  with pytest.raises(IndexOutOfRange):
    face(sphere, alpha, 3, 0)


def test_tk_faces_coincide():
  g = KGraph(t_k(3))
  for r in range(1, 4):
    for c in g.cubes(r):
      for j in range(1, r + 1):
        assert face(g, c, j, 0) == face(g, c, j, 1)


def test_chain_complex_examples(sphere):
  cc = chain_complex(KGraph(t_k(2)))
  assert cc.boundary(1).is_zero() and cc.boundary(2).is_zero()
  point = chain_complex(KGraph(t_k(0)))
  assert point.top == 0 and point.rank(0) == 1
  # a square f1 g1 = g2 f2 has boundary g1 + f1 - f2 - g2
  cc = sphere.complex
  idx = sphere.index(1)
  for q in sphere.skeleton.squares:
    col = cc.boundary(2).column(sphere.index(2)[sphere.cube_of((q.f1, q.g1))])
    want = [0] * len(idx)
    for name, sign in ((q.g1, 1), (q.f1, 1), (q.f2, -1), (q.g2, -1)):
      want[idx[sphere.cube_of((name,))]] += sign
    assert col == want


def test_face_relations_everywhere(graphs):
  for g in graphs.values():
    for r in range(2, g.k + 1):
      for c in g.cubes(r):
        for i, j in itertools.combinations(range(1, r + 1), 2):
          for ell, m in itertools.product((0, 1), repeat=2):
            assert face(g, face(g, c, j, m), i, ell) == face(g, face(g, c, i, ell), j - 1, m)


def test_boundary_squares_to_zero(graphs):
  for g in graphs.values():
    cc = g.complex
    for r in range(1, g.k):
      assert (cc.boundary(r) @ cc.boundary(r + 1)).is_zero()


def test_faces_independent_of_swap_order(graphs):
  rng = random.Random(5)
  for g in graphs.values():
    for r in range(2, g.k + 1):
      for c in g.cubes(r):
        for j in range(1, r + 1):
          gone = c.colours[j - 1]
          rest = [x for x in c.colours if x != gone]
          front = tuple(reorder(g, c.path, [gone] + rest, rng))
          back = tuple(reorder(g, c.path, rest + [gone], rng))
          assert face(g, c, j, 1).path == front[1:]
          assert face(g, c, j, 0).path == back[:-1]


def test_segment_whole_and_empty(sphere):
  c = sphere.cube_of(("c", "e"))
  assert segment(sphere, c, (), (1, 2)) == c
  assert segment(sphere, c, (), ()).vertex == sphere.range_of(c)
  assert segment(sphere, c, (1, 2), (1, 2)).vertex == sphere.source_of(c)


def test_components():
  assert len(components(t_k(3))) == 1
  two = disjoint_union(b_n(1), b_n(1))
  assert len(components(two)) == 2


def test_sphere_connected(sphere):
  assert len(components(sphere.skeleton)) == 1


def test_cube_label_and_order():
  g = KGraph(t_k(2))
  assert [c.label() for c in g.cubes(1)] == ["e1", "e2"]
  assert g.cubes(0) == [Cube((), ("v",))]
