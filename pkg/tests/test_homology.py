import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ldtop import fixtures
from ldtop.complex import FiniteComplex, closure, constant_exhaustion, euler_characteristic, open_star
from ldtop.errors import NotSimplicial, NotSubcomplex, PreconditionViolated
from ldtop.homology import (ChainComplex, FgAbGroup, betti_numbers, boundary_matrix,
                            colimit_homology, excision_check, homology, homology_basis,
                            induced_map, long_exact_sequence, relative_homology)
from fuzz import random_complex, random_excision_triple, random_subcomplex
from oracles import oracle_homology

EXPECTED = {
    "point": [(1, [])],
    "circle": [(1, []), (1, [])],
    "disk": [(1, []), (0, []), (0, [])],
    "sphere": [(1, []), (0, []), (1, [])],
    "torus": [(1, []), (2, []), (1, [])],
    "rp2": [(1, []), (0, [2]), (0, [])],
    "klein": [(1, []), (1, [2]), (0, [])],
}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_fixture_homology(name):
    K = fixtures.COMPLEXES[name]()
    for n, (rank, tors) in enumerate(EXPECTED[name]):
        assert homology(K, n) == FgAbGroup(rank, tuple(tors))
        assert oracle_homology(K.maximal(), n) == (rank, tors)


def test_high_dimension_is_zero():
    assert homology(fixtures.point(), 3).is_trivial()


complexes = st.integers(0, 10_000).map(lambda seed: random_complex(random.Random(seed), max_vertices=8))


@settings(max_examples=60, deadline=None)
@given(complexes)
def test_boundary_squared_zero(K):
    for n in range(1, K.dim + 1):
        assert (boundary_matrix(K, n) @ boundary_matrix(K, n + 1)).is_zero()


@settings(max_examples=60, deadline=None)
@given(complexes)
def test_euler_equals_betti(K):
    b = betti_numbers(K)
    assert euler_characteristic(K) == sum((-1) ** n * r for n, r in enumerate(b))


@settings(max_examples=40, deadline=None)
@given(complexes)
def test_against_oracle(K):
    for n in range(K.dim + 1):
        g = homology(K, n)
        assert (g.rank, list(g.torsion)) == oracle_homology(K.maximal(), n)


def test_input_order_does_not_matter():
    K = fixtures.torus()
    rev = closure(list(reversed(K.maximal())))
    assert [homology(K, n) for n in range(3)] == [homology(rev, n) for n in range(3)]


def test_basis_generators_are_cycles():
    K = fixtures.torus()
    hb = homology_basis(K, 1)
    cc = ChainComplex(K)
    for v in hb.to_json()["generators"]:
        chain = {tuple(s): c for c, s in v}
        assert all(x == 0 for x in cc.boundary(1).apply(cc.vector(1, chain)))


def test_relative_homology_disk_rel_boundary():
    D = fixtures.disk()
    S = fixtures.circle()
    assert relative_homology(D, S, 2) == FgAbGroup(1)
    with pytest.raises(NotSubcomplex):
        relative_homology(S, D, 1)


def test_functoriality():
    K = fixtures.circle()
    ident = {v: v for v in K.vertices}
    m = induced_map(K, K, ident, 1)
    assert m.matrix.tolist() == [[1]]
    # fold the circle onto an edge and back in
    f = {0: 0, 1: 1, 2: 1}
    g = {0: 0, 1: 1}
    edge = closure([(0, 1)])
    fg = induced_map(edge, K, g, 0).compose(induced_map(K, edge, f, 0))
    assert fg.matrix.tolist() == induced_map(K, K, {0: 0, 1: 1, 2: 1}, 0).matrix.tolist()
    assert fg.is_isomorphism()
    with pytest.raises(NotSimplicial):
        induced_map(edge, K, {0: 0, 1: 5}, 0)


def test_double_cover_map_is_times_two():
    src, tgt, f = fixtures.MAPS["circle-double"]
    K, L = fixtures.COMPLEXES[src](), fixtures.COMPLEXES[tgt]()
    m = induced_map(K, L, f, 1)
    assert [abs(x) for row in m.matrix.tolist() for x in row] == [2]


def test_colimit_constant_tail_is_last_stage():
    X = constant_exhaustion(fixtures.torus(), 3)
    ch = colimit_homology(X, 1, 2)
    assert ch.group == homology(fixtures.torus(), 1) and ch.stable and ch.stable_from == 0


def test_colimit_line_and_chain():
    ch = colimit_homology(fixtures.line_exhaustion(), 0, 5)
    assert ch.group == FgAbGroup(1) and ch.stable_from is not None and ch.stable_from <= 2
    ch = colimit_homology(fixtures.circle_chain_exhaustion(), 1, 5)
    assert [g.rank for g in ch.stage_groups] == list(range(6))
    assert all(m.is_injective() for m in ch.maps)


def test_les_fixtures():
    D, S = fixtures.disk(), fixtures.circle()
    les = long_exact_sequence(D, S)
    assert les.exact
    d2 = les.maps[("d", 2)]
    assert d2.is_isomorphism() and d2.source == FgAbGroup(1) == d2.target
    assert long_exact_sequence(*fixtures.cylinder()).exact


def test_les_fuzz():
    rng = random.Random(7)
    for _ in range(25):
        K = random_complex(rng, max_vertices=10)
        assert long_exact_sequence(K, random_subcomplex(rng, K)).exact


def test_excision_fixture_and_fuzz():
    K, collar, circle = fixtures.collared_disk()
    U = set().union(*(open_star(K, v) for v in circle.of_dim(0)))
    assert excision_check(K, collar, U)
    with pytest.raises(PreconditionViolated):
        excision_check(K, collar, circle.simplices)  # not open
    rng = random.Random(8)
    for _ in range(20):
        assert excision_check(*random_excision_triple(rng, True))
        with pytest.raises(PreconditionViolated):
            excision_check(*random_excision_triple(rng, False))


def test_empty_complex():
    E = FiniteComplex(frozenset())
    assert homology(E, 0).is_trivial()
