from math import comb

import pytest

from khom.constructors import t_k
from khom.cubical import (CubicalCube, agrees_with_definition, check_cubical_identities,
                          cubical_cubes, cubical_degeneracy, cubical_face,
                          degenerate_coverage, nondegenerate, normalized_boundary,
                          normalized_complex_iso)
from khom.errors import IndexOutOfRange, RMaxExceeded
from khom.kgraph import KGraph, face


def test_single_loop_level_one():
  g = KGraph(t_k(1))
  cubes = cubical_cubes(g, 1)
  assert len(cubes) == 2
  assert sorted(c.is_degenerate() for c in cubes) == [False, True]


def test_level_zero_is_vertices(graphs):
  for g in graphs.values():
    assert [c.cube for c in cubical_cubes(g, 0)] == g.cubes(0)


def test_count_formula(graphs):
  for g in graphs.values():
    for r in range(g.k + 3):
      want = sum(comb(r, t) * len(g.cubes(t)) for t in range(min(r, g.k) + 1))
      assert len(cubical_cubes(g, r)) == want


def test_nondegenerate_part_matches_cubes(sphere):
  for r in range(3):
    nd = [c.cube for c in cubical_cubes(sphere, r) if not c.is_degenerate()]
    assert nd == sphere.cubes(r)


def test_rmax_limit(sphere, monkeypatch):
  with pytest.raises(RMaxExceeded):
    cubical_cubes(sphere, 5)
  assert len(cubical_cubes(sphere, 5, r_max=5)) > 0
  monkeypatch.setenv("KHOM_RMAX", "2")
  with pytest.raises(RMaxExceeded):
    cubical_cubes(sphere, 3)


def test_index_checks(sphere):
  phi = nondegenerate(sphere.cubes(2)[0])
  with pytest.raises(IndexOutOfRange):
    cubical_face(sphere, phi, 3, 0)
  with pytest.raises(IndexOutOfRange):
    cubical_face(sphere, phi, 1, 2)
  with pytest.raises(IndexOutOfRange):
    cubical_degeneracy(sphere, phi, 4)


def test_face_undoes_degeneracy(graphs):
  for g in graphs.values():
    for r in range(g.k + 1):
      for phi in cubical_cubes(g, r):
        for i in range(1, r + 2):
          d = cubical_degeneracy(g, phi, i)
          assert d.is_degenerate()
          for ell in (0, 1):
            assert cubical_face(g, d, i, ell) == phi


def test_faces_of_nondegenerate_cubes(sphere):
  for c in sphere.cubes(2):
    phi = nondegenerate(c)
    for j in (1, 2):
      for ell in (0, 1):
        f = cubical_face(sphere, phi, j, ell)
        assert not f.is_degenerate() and f.cube == face(sphere, c, j, ell)


def test_semantics_match_precomposition(graphs):
  for name in ("sphere", "klein", "T3", "delta22"):
    g = graphs[name]
    for r in range(g.k + 2):
      for phi in cubical_cubes(g, r):
        assert agrees_with_definition(g, phi)


def test_degeneracy_relation():
  g = KGraph(t_k(2))
  for phi in cubical_cubes(g, 2):
    for i in range(1, 4):
      for j in range(1, i + 1):
        a = cubical_degeneracy(g, cubical_degeneracy(g, phi, i), j)
        b = cubical_degeneracy(g, cubical_degeneracy(g, phi, j), i + 1)
        assert a == b


def test_printed_degeneracy_relation_fails():
  # f_2 f_1 and f_3 f_1 put the new coordinates in different slots
  g = KGraph(t_k(1))
  phi = nondegenerate(g.cubes(1)[0])
  a = cubical_degeneracy(g, cubical_degeneracy(g, phi, 1), 2)
  b = cubical_degeneracy(g, cubical_degeneracy(g, phi, 1), 3)
  assert a != b


@pytest.mark.parametrize("name", ["T2", "sphere"])
def test_identities_to_level_four(graphs, name):
  rep = check_cubical_identities(graphs[name], r_max=4)
  assert rep.ok and rep.checked > 0


def test_identities_on_corpus(graphs):
  for g in graphs.values():
    rep = check_cubical_identities(g)
    assert rep.ok, (g.name, rep.witness)


def test_corrupted_face_is_caught(sphere):
  def bad_face(g, phi, i, ell):
    f = cubical_face(g, phi, i, ell)
    if phi.r == 2 and not phi.is_degenerate() and i == 1 and ell == 0:
      return CubicalCube(f.r, f.positions, face(g, phi.cube, 1, 1))
    return f

  rep = check_cubical_identities(sphere, r_max=3, face=bad_face)
  assert not rep.ok and rep.witness
  assert rep.to_json()["ok"] is False


def test_normalized_iso(graphs):
  for g in graphs.values():
    rep = normalized_complex_iso(g)
    assert rep.ok, (g.name, rep.witness)
    for r, M in rep.matrices.items():
      assert M == g.complex.boundary(r)


def test_point_is_trivial():
  g = KGraph(t_k(0))
  rep = normalized_complex_iso(g)
  assert rep.ok and rep.matrices == {}


def test_degenerate_coverage(klein):
  assert all(degenerate_coverage(klein, r) for r in range(5))


def test_normalized_boundary_sign(sphere):
  M = normalized_boundary(sphere, 1)
  for j, c in enumerate(sphere.cubes(1)):
    col = M.column(j)
    assert sum(col) == 0 and sum(map(abs, col)) in (0, 2)
