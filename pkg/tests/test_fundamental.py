import random

import pytest

from ldtop import fixtures
from ldtop.complex import closure
from ldtop.errors import Disconnected
from ldtop.fundamental import (EQUIVALENCE, NOT_EQUIVALENCE, UNDETERMINED, abelianization,
                               edge_path_presentation, hurewicz_h1_check, pi1_is_trivial,
                               pi2_via_hurewicz, spanning_tree, whitehead_check)
from ldtop.groups import todd_coxeter
from ldtop.homology import FgAbGroup, homology
from fuzz import random_connected_complex


@pytest.mark.parametrize("name", ["point", "interval", "circle", "disk", "sphere", "torus",
                                  "rp2", "klein", "wedge2", "cylinder", "two-circles"])
def test_generator_count_and_hurewicz(name):
    K = fixtures.COMPLEXES[name]()
    v0 = min(K.vertices)
    P, _ = edge_path_presentation(K, v0)
    assert P.ngens == len(K.edges()) - (len(K.vertices) - 1)
    assert hurewicz_h1_check(K, v0).agree


def test_spanning_tree_words():
    K = fixtures.circle()
    T = spanning_tree(K, 0)
    assert T.path_from_root(0) == [0]
    loop = T.path_word([0, 1, 2, 0])
    assert len(loop) == 1


def test_rp2_group_is_z2():
    K = fixtures.projective_plane()
    P, _ = edge_path_presentation(K, 0)
    assert todd_coxeter(P, []).index == 2
    assert abelianization(P) == FgAbGroup(0, (2,))


def test_triviality_certificates():
    assert pi1_is_trivial(fixtures.disk(), 0)
    assert pi1_is_trivial(fixtures.sphere(), 0)
    assert not pi1_is_trivial(fixtures.circle(), 0)
    assert not pi1_is_trivial(fixtures.torus(), 0, budget=500)


def test_pi2_sphere():
    S = fixtures.sphere()
    assert pi2_via_hurewicz(S, 0) == homology(S, 2) == FgAbGroup(1)
    assert pi2_via_hurewicz(fixtures.torus(), 0, budget=500) == UNDETERMINED
    with pytest.raises(Disconnected):
        pi2_via_hurewicz(fixtures.circle_and_point()[0], 0)


def test_whitehead_fixtures():
    verdicts = {}
    for name, (src, tgt, f) in fixtures.MAPS.items():
        K, L = fixtures.COMPLEXES[src](), fixtures.COMPLEXES[tgt]()
        verdicts[name] = whitehead_check(K, L, f, min(K.vertices), budget=2000)
    assert verdicts["disk-to-point"].verdict == EQUIVALENCE
    assert verdicts["circle-double"].verdict == NOT_EQUIVALENCE
    assert verdicts["circle-double"].failed_degree == 1
    assert verdicts["torus-identity"].verdict == UNDETERMINED


def test_whitehead_identity_on_simply_connected():
    S = fixtures.sphere()
    assert whitehead_check(S, S, {v: v for v in S.vertices}, 0).verdict == EQUIVALENCE


def test_hurewicz_fuzz():
    rng = random.Random(11)
    for _ in range(30):
        K = random_connected_complex(rng)
        assert hurewicz_h1_check(K, min(K.vertices)).agree


def test_disconnected_whitehead():
    K = closure([(0,), (1,)])
    with pytest.raises(Disconnected):
        whitehead_check(K, K, {0: 0, 1: 1}, 0)
