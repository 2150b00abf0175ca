import random

import pytest
from hypothesis import given, settings, strategies as st

from topocalc import spaces
from topocalc.complex import SimplicialComplex, boundary_matrices
from topocalc.errors import ValidationError
from topocalc.homology import (Cochain, HomologyGroup, coboundary, cohomology_gf2,
                               cup_product_gf2, euler_poincare, homology_gf2, homology_z,
                               is_coboundary, mayer_vietoris_check)

from conftest import S, fixture_complex
from oracles import betti_gf2, random_complex

TABLE = {
    "sphere": ((1, 0, 1), ((), (), ())),
    "torus9": ((1, 2, 1), ((), (), ())),
    "torus7": ((1, 2, 1), ((), (), ())),
    "rp2": ((1, 0, 0), ((), (2,), ())),
    "circle": ((1, 1), ((), ())),
    "triangle": ((1, 0, 0), ((), (), ())),
    "wedge": ((1, 2, 1), ((), (), ())),
}


@pytest.mark.parametrize("name", sorted(TABLE))
def test_integral_homology_table(name):
    h = homology_z(spaces.CANONICAL[name]())
    assert (h.betti, h.torsion) == TABLE[name]


def test_torus_fixture_matches_canonical_and_triangulation_independent():
    assert homology_z(fixture_complex("torus9.cplx")) == homology_z(spaces.torus9())
    assert homology_z(spaces.torus7()) == homology_z(spaces.torus9())


def test_homology_json_schema():
    doc = homology_z(spaces.rp2()).to_json()
    assert doc == {"dims": [{"k": 0, "betti": 1, "torsion": []},
                            {"k": 1, "betti": 0, "torsion": [2]},
                            {"k": 2, "betti": 0, "torsion": []}], "euler": 1}


def test_homology_group_rejects_bad_torsion():
    with pytest.raises(ValidationError):
        HomologyGroup(0, (2, 3))
    with pytest.raises(ValidationError):
        HomologyGroup(0, (1,))


def test_gf2_examples():
    assert homology_gf2(spaces.triangle()) == (1, 0, 0)
    assert homology_gf2(spaces.rp2()) == (1, 1, 1)
    assert homology_gf2(spaces.from_facets([(0,), (1,)])) == (2,)


def test_euler_poincare_examples():
    assert euler_poincare(spaces.torus9()) == (0, 0)
    assert euler_poincare(spaces.sphere()) == (2, 2)
    assert euler_poincare(spaces.rp2()) == (1, 1)


def test_corpus_gf2_matches_dense_oracle(corpus_complexes):
    for name, cx in corpus_complexes.items():
        assert homology_gf2(cx) == betti_gf2(cx), name


def test_z_betti_bounded_by_gf2(corpus_complexes):
    for name, cx in corpus_complexes.items():
        hz, h2 = homology_z(cx), homology_gf2(cx)
        for k in range(len(h2)):
            even = any(t % 2 == 0 for t in hz.torsion[k]) or \
                (k > 0 and any(t % 2 == 0 for t in hz.torsion[k - 1]))
            assert hz.betti[k] <= h2[k]
            assert (hz.betti[k] == h2[k]) == (not even), name


def test_disjoint_union_concatenates():
    a, b = spaces.rp2(), spaces.circle()
    h = homology_z(a.disjoint_union(b))
    assert h.betti == (2, 1, 0) and h.torsion == ((), (2,), ())


# --------------------------------------------------------------------------
# cohomology and cup products

def test_cohomology_examples():
    assert cohomology_gf2(boundary_matrices(spaces.triangle()), 1).betti == 0
    basis = cohomology_gf2(boundary_matrices(spaces.circle()), 1)
    assert basis.betti == 1
    assert bin(basis.representatives[0].bits).count("1") in (1, 3)
    assert cohomology_gf2(boundary_matrices(spaces.torus9()), 1).betti == 2


def test_hollow_triangle_any_single_edge_represents_generator():
    cx = spaces.circle()
    view = boundary_matrices(cx)
    gen = cohomology_gf2(view, 1).representatives[0]
    for e in cx.cells(1):
        single = Cochain.from_cells(cx, 1, [e])
        assert is_coboundary(view, single + gen)


def test_cohomology_betti_equals_homology(corpus_complexes):
    for name, cx in corpus_complexes.items():
        view = boundary_matrices(cx)
        h = homology_gf2(view)
        for k in range(cx.dim + 1):
            basis = cohomology_gf2(view, k)
            assert basis.betti == h[k], name
            for phi in basis.representatives:
                assert not coboundary(view, phi)


def _products(cx):
    view = boundary_matrices(cx)
    h1 = cohomology_gf2(view, 1).representatives
    return [not is_coboundary(view, cup_product_gf2(cx, a, b)) for a in h1 for b in h1]


def test_cup_product_separates_torus_from_wedge():
    assert any(_products(spaces.torus9()))
    assert any(_products(spaces.torus7()))
    assert not any(_products(spaces.wedge()))
    assert homology_gf2(spaces.torus9()) == homology_gf2(spaces.wedge())


def test_cup_with_zero_is_zero():
    cx = spaces.torus9()
    phi = Cochain(1, 0b1011)
    assert not cup_product_gf2(cx, phi, Cochain(1, 0))


def _random_cochain(rng, cx, k):
    return Cochain(k, rng.getrandbits(max(1, len(cx.cells(k)))) & ((1 << len(cx.cells(k))) - 1))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_leibniz_rule(seed):
    rng = random.Random(seed)
    cx = random_complex(rng, max_cells=30, n_vertices=5)
    view = boundary_matrices(cx)
    for k in range(0, cx.dim + 1):
        for l in range(0, cx.dim - k):
            phi, psi = _random_cochain(rng, cx, k), _random_cochain(rng, cx, l)
            lhs = coboundary(view, cup_product_gf2(cx, phi, psi))
            rhs = (cup_product_gf2(cx, coboundary(view, phi), psi)
                   + cup_product_gf2(cx, phi, coboundary(view, psi)))
            assert lhs == rhs


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_cup_commutes_up_to_coboundary(seed):
    rng = random.Random(seed)
    cx = random_complex(rng, max_cells=30, n_vertices=5)
    view = boundary_matrices(cx)
    for k in range(1, cx.dim):
        for l in range(1, cx.dim - k + 1):
            for phi in cohomology_gf2(view, k).representatives:
                for psi in cohomology_gf2(view, l).representatives:
                    diff = cup_product_gf2(cx, phi, psi) + cup_product_gf2(cx, psi, phi)
                    assert is_coboundary(view, diff)


# --------------------------------------------------------------------------
# Mayer-Vietoris worked decompositions

def test_mv_disjoint_triangles():
    X = spaces.triangle()
    Y = spaces.from_facets([(3, 4, 5)])
    rep = mayer_vietoris_check(X, Y)
    assert rep.ok
    assert rep.rows[0].beta_union == 2
    assert all(r.rank_n_k == 0 for r in rep.rows)


def test_mv_hollow_triangle_arcs():
    X = spaces.from_facets([(0, 1), (1, 2)])
    Y = spaces.from_facets([(0, 2)])
    rep = mayer_vietoris_check(X, Y)
    assert rep.ok
    assert (rep.rows[1].beta_union, rep.rows[0].rank_n_k, rep.rows[1].rank_n_km1) == (1, 1, 1)
    assert rep.rows[0].beta_intersection == 2


def test_mv_torus_strips():
    X, Y = fixture_complex("torus9_x.cplx"), fixture_complex("torus9_y.cplx")
    rep = mayer_vietoris_check(X, Y)
    assert rep.ok
    assert [r.beta_union for r in rep.rows] == [1, 2, 1]
    assert rep.rows[1].rank_n_k == 1


def test_mv_rejects_non_subcomplex():
    X = spaces.triangle()
    with pytest.raises(ValidationError):
        mayer_vietoris_check(X, spaces.circle(), parent=spaces.circle())
