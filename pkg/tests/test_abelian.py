import random

import pytest
from hypothesis import given, settings, strategies as st

from khom.abelian import (FgAbelianGroup, GroupHom, IntMatrix, Lattice,
                          PresentedGroup, binary_functor, determinant,
                          group_from_relations, homology_of_pair, induced_hom,
                          invariant_factors, is_exact_at, kernel_basis,
                          smith_normal_form, solve_integer,
                          sparse_invariant_factors)
from khom.errors import CompositionNonzero, NotWellDefined

from oracles import (brute_hom_profile, brute_tensor_order, invariants_from_minors,
                     order_profile, permutation_det)

small_matrices = st.integers(0, 5).flatmap(
    lambda m: st.integers(0, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n),
                           min_size=m, max_size=m).map(lambda rows: IntMatrix(rows, n))))


def _is_divisor_chain(ds):
  return all(d > 0 for d in ds) and all(b % a == 0 for a, b in zip(ds, ds[1:]))


# --- smith normal form ---------------------------------------------------------

def test_snf_identity():
  s = smith_normal_form(IntMatrix.identity(2))
  assert s.D == IntMatrix.identity(2)
  assert s.U == IntMatrix.identity(2) and s.V == IntMatrix.identity(2)


def test_snf_two_by_two():
  s = smith_normal_form(IntMatrix([[2, 4], [6, 8]]))
  assert s.diagonal == [2, 4]
  assert invariants_from_minors([[2, 4], [6, 8]]) == [2, 4]


def test_snf_zero_and_empty():
  assert smith_normal_form(IntMatrix.zeros(3, 2)).D.is_zero()
  s = smith_normal_form(IntMatrix.zeros(0, 4))
  assert s.V.shape == (4, 4) and s.invariants == []


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_snf_decomposition_laws(M):
  s = smith_normal_form(M)
  assert s.U @ M @ s.V == s.D
  assert s.U @ s.U_inv == IntMatrix.identity(M.rows)
  assert s.V @ s.V_inv == IntMatrix.identity(M.cols)
  assert abs(determinant(s.U)) == 1 and abs(determinant(s.V)) == 1
  d = s.diagonal
  t = s.rank
  assert _is_divisor_chain(d[:t]) and not any(d[t:])
  assert all(s.D[i, j] == 0 for i in range(M.rows) for j in range(M.cols) if i != j)


@settings(max_examples=80, deadline=None)
@given(small_matrices)
def test_snf_matches_minor_oracle(M):
  assert invariant_factors(M) == invariants_from_minors(M.to_lists())


@settings(max_examples=80, deadline=None)
@given(small_matrices)
def test_sparse_route_agrees(M):
  rep = sparse_invariant_factors([{i: v for i, v in enumerate(M.column(j)) if v}
                                  for j in range(M.cols)], M.rows)
  inv = invariant_factors(M)
  assert rep.rank == len(inv)
  assert list(rep.torsion) == [d for d in inv if d > 1]


def test_snf_deterministic():
  M = IntMatrix([[3, 5, 7], [2, 4, 6], [1, 1, 1]])
  a, b = smith_normal_form(M), smith_normal_form(M)
  assert a == b


def test_determinant_against_leibniz():
  rng = random.Random(3)
  for _ in range(40):
    n = rng.randint(1, 5)
    rows = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)]
    assert determinant(IntMatrix(rows)) == permutation_det(rows)


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_kernel_basis_spans_kernel(M):
  K = kernel_basis(M)
  assert (M @ K).is_zero()
  assert K.cols == M.cols - len(invariant_factors(M))
  # the kernel is saturated: anything in it with an integer multiple is in it
  if K.cols:
    v = [sum(K[i, j] for j in range(K.cols)) for i in range(K.rows)]
    assert Lattice(K).contains(v)


def test_solve_integer():
  M = IntMatrix([[2, 0], [0, 3]])
  assert solve_integer(M, [4, 9]) == [2, 3]
  assert solve_integer(M, [1, 0]) is None


# --- groups --------------------------------------------------------------------

def test_group_from_relations_examples():
  for n in range(2, 7):
    assert group_from_relations(IntMatrix([[n]])) == FgAbelianGroup(0, (n,))
  assert group_from_relations(IntMatrix.zeros(2, 0)) == FgAbelianGroup(2)
  assert group_from_relations(IntMatrix.diagonal([2, 4])) == FgAbelianGroup(0, (2, 4))


@settings(max_examples=60, deadline=None)
@given(small_matrices, st.randoms(use_true_random=False))
def test_group_from_relations_invariant_under_signed_permutations(M, rnd):
  rows = M.to_lists()
  rnd.shuffle(rows)
  rows = [[-x for x in r] if rnd.random() < 0.5 else r for r in rows]
  cols = list(range(M.cols))
  rnd.shuffle(cols)
  N = IntMatrix([[r[c] for c in cols] for r in rows], M.cols)
  assert group_from_relations(N) == group_from_relations(M)


def test_group_normal_form_and_printing():
  g = FgAbelianGroup.from_cyclic([0, 6, 4])
  assert g == FgAbelianGroup(1, (2, 12))
  assert str(FgAbelianGroup(2, (2,))) == "Z^2 + Z/2"
  assert str(FgAbelianGroup(0, (2, 2))) == "(Z/2)^2"
  assert str(FgAbelianGroup()) == "0"
  assert FgAbelianGroup.from_json(g.to_json()) == g
  assert FgAbelianGroup(0, (2, 3)) == FgAbelianGroup(0, (6,))


def test_binary_functor_examples():
  Z2, Z3 = FgAbelianGroup(0, (2,)), FgAbelianGroup(0, (3,))
  assert binary_functor("tor", Z2, Z2) == Z2
  assert binary_functor("tensor", FgAbelianGroup(2), Z3) == FgAbelianGroup(0, (3, 3))
  assert binary_functor("ext", FgAbelianGroup(1, (2,)), FgAbelianGroup(1)) == Z2
  assert binary_functor("hom", Z2, FgAbelianGroup(1)).is_trivial()
  assert binary_functor("ext", FgAbelianGroup(1), Z3).is_trivial()
  assert binary_functor("ext", Z2, Z3).is_trivial()


def _profile(g: FgAbelianGroup):
  return order_profile(tuple(g.torsion))


FINITE = [(2,), (3,), (4,), (2, 2), (6,), (2, 4), (8,), (3, 3), (2, 6)]


@pytest.mark.parametrize("a", FINITE)
@pytest.mark.parametrize("b", FINITE)
def test_hom_against_brute_force(a, b):
  A, B = FgAbelianGroup(0, a), FgAbelianGroup(0, b)
  assert _profile(binary_functor("hom", A, B)) == brute_hom_profile(a, b)


@pytest.mark.parametrize("a,b", [((2,), (2,)), ((2,), (4,)), ((4,), (6,)), ((2, 2), (2,)),
                                 ((3,), (2,)), ((2,), (2, 2)), ((4,), (4,)), ((6,), (3,))])
def test_tensor_against_brute_force(a, b):
  A, B = FgAbelianGroup(0, a), FgAbelianGroup(0, b)
  orders = brute_tensor_order(a, b)
  assert FgAbelianGroup.from_cyclic(orders) == binary_functor("tensor", A, B)


# --- presented groups and maps ---------------------------------------------------

def test_homology_of_pair_basics():
  assert homology_of_pair(IntMatrix.zeros(1, 3), IntMatrix.zeros(3, 0)).group == FgAbelianGroup(3)
  assert homology_of_pair(IntMatrix.zeros(0, 1), IntMatrix([[5]])).group == FgAbelianGroup(0, (5,))
  with pytest.raises(CompositionNonzero):
    homology_of_pair(IntMatrix([[1]]), IntMatrix([[1]]))


def test_klein_level_one(klein):
  cc = klein.complex
  H1 = homology_of_pair(cc.boundary(1), cc.boundary(2))
  assert H1.group == FgAbelianGroup(1, (2,))
  for order, rep in H1.generators():
    assert H1.is_cycle(rep)
    x = H1.coordinates(rep)
    assert not H1.is_zero(x)
    if order:
      assert H1.is_zero([order * c for c in x])


def test_induced_identity_and_well_definedness():
  G = homology_of_pair(IntMatrix.zeros(0, 2), IntMatrix([[2], [0]]))
  h = induced_hom(IntMatrix.identity(2), G, G)
  assert h.is_identity() and h.is_isomorphism()
  Z = PresentedGroup.free(1)
  with pytest.raises(NotWellDefined):
    # Z/2 -> Z sending the generator to 1 is not well defined
    induced_hom(IntMatrix([[1, 0]]), G, Z)


def test_exactness_on_small_sequences():
  Z, zero = PresentedGroup.free(1), PresentedGroup.trivial()
  assert is_exact_at(GroupHom.zero(Z, zero), GroupHom.zero(zero, Z))
  times2 = induced_hom(IntMatrix([[2]]), Z, Z)
  mod2 = homology_of_pair(IntMatrix.zeros(0, 1), IntMatrix([[2]]))
  onto = induced_hom(IntMatrix([[1]]), Z, mod2)
  assert is_exact_at(times2, onto)
  times4 = induced_hom(IntMatrix([[4]]), Z, Z)
  # same rank, wrong torsion: Im(4) is not ker(Z -> Z/2)
  assert not is_exact_at(times4, onto)
