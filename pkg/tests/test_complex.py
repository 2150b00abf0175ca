import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from topocalc import spaces
from topocalc.complex import (CubicalComplex, ElementaryCube, Filtration, Simplex,
                              SimplicialComplex, boundary_matrices, chain_boundary,
                              euler_characteristic, make_filtration)
from topocalc.errors import MonotonicityError, ValidationError

from conftest import S
from oracles import random_complex


def test_simplex_sorted_and_validated():
    assert tuple(Simplex([2, 0, 1])) == (0, 1, 2)
    for bad in ([], [1, 1], [-1, 2]):
        with pytest.raises(ValidationError):
            Simplex(bad)


def test_simplex_faces_and_signs():
    s = S(0, 1, 2)
    assert s.faces() == [S(1, 2), S(0, 2), S(0, 1)]
    assert s.boundary() == [(S(1, 2), 1), (S(0, 2), -1), (S(0, 1), 1)]
    assert sorted(s.all_faces()) == sorted([S(0), S(1), S(2), S(0, 1), S(0, 2), S(1, 2), s])


def test_swapping_vertices_negates_boundary():
    # odd permutation of the vertex list flips every coefficient
    def signed_boundary(vs):
        return {tuple(sorted(vs[:i] + vs[i + 1:])): (-1) ** i * _perm_sign(vs[:i] + vs[i + 1:])
                for i in range(len(vs))}

    base = signed_boundary([0, 1, 2, 3])
    swapped = signed_boundary([1, 0, 2, 3])
    assert all(swapped[k] == -base[k] for k in base)


def _perm_sign(vs):
    inv = sum(1 for i, j in itertools.combinations(range(len(vs)), 2) if vs[i] > vs[j])
    return -1 if inv % 2 else 1


def test_cube_boundary_sign_convention():
    sq = ElementaryCube([(0, 1), (0, 1)])
    assert sq.dim == 2
    assert sq.boundary() == [
        (ElementaryCube([(1, 1), (0, 1)]), 1), (ElementaryCube([(0, 0), (0, 1)]), -1),
        (ElementaryCube([(0, 1), (1, 1)]), -1), (ElementaryCube([(0, 1), (0, 0)]), 1)]
    with pytest.raises(ValidationError):
        ElementaryCube([(0, 2)])


@pytest.mark.parametrize("cell", [S(0, 1, 2, 3), S(0, 1, 2, 3, 4),
                                  ElementaryCube([(0, 1), (0, 1), (0, 1)]),
                                  ElementaryCube([(0, 1), 3, (2, 3)])])
def test_boundary_of_boundary_is_zero(cell):
    assert chain_boundary(chain_boundary({cell: 1})) == {}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_matrix_boundary_squares_to_zero(seed):
    cx = random_complex(random.Random(seed), max_cells=30)
    view = boundary_matrices(cx)
    for k in range(2, cx.dim + 1):
        assert (view.matrix(k - 1) @ view.matrix(k)).is_zero()


def test_cubical_grid_boundaries_compose_to_zero():
    cx = CubicalComplex()
    cx.insert_closed(ElementaryCube([(0, 1), (0, 1), (0, 1)]))
    view = boundary_matrices(cx)
    assert view.counts() == [8, 12, 6, 1]
    for k in (2, 3):
        assert (view.matrix(k - 1) @ view.matrix(k)).is_zero()


def test_complex_closure_and_counts():
    cx = spaces.triangle()
    assert cx.counts() == [3, 3, 1]
    assert euler_characteristic(cx) == 1
    assert S(0, 2) in cx and S(0, 3) not in cx
    assert cx.cofaces(S(0, 1)) == [S(0, 1, 2)]
    assert cx.skeleton(1) == spaces.circle()


def test_euler_values():
    assert euler_characteristic(spaces.sphere()) == 2
    assert euler_characteristic(spaces.torus9()) == 0
    two = spaces.triangle().disjoint_union(spaces.triangle())
    assert euler_characteristic(two) == 2


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_euler_inclusion_exclusion(seed):
    rng = random.Random(seed)
    a, b = random_complex(rng), random_complex(rng)
    chi = euler_characteristic
    assert chi(a.union(b)) == chi(a) + chi(b) - chi(a.intersection(b))


def test_filtration_tie_break_is_dim_then_lex():
    f = make_filtration(spaces.triangle(), lambda c: 0)
    assert f.cells == (S(0), S(1), S(2), S(0, 1), S(0, 2), S(1, 2), S(0, 1, 2))


def test_filtration_strata():
    f = make_filtration(spaces.triangle(), lambda c: c.dim)
    assert f.values == (0, 0, 0, 1, 1, 1, 2)
    assert f.sublevel(0.5) == 3 and f.sublevel(1) == 6


def test_monotonicity_violation_names_pair():
    vals = {S(0): 1, S(1): 0, S(0, 1): 0}
    with pytest.raises(MonotonicityError) as info:
        Filtration.from_values(vals)
    assert info.value.face == S(0) and info.value.coface == S(0, 1)


def test_filtration_prefixes_are_closed():
    rng = random.Random(5)
    cx = random_complex(rng, 30)
    vals = {}
    for c in sorted(cx, key=lambda c: c.dim):
        vals[c] = max((vals[f] for f in c.faces()), default=0) + rng.random()
    f = Filtration.from_values(vals)
    f.validate()
    for i in range(len(f) + 1):
        prefix = f.complex(i)
        assert all(face in prefix for c in prefix for face in c.faces())


def test_missing_value_rejected():
    with pytest.raises(ValidationError):
        make_filtration(spaces.circle(), {S(0): 0})
