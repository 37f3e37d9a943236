import random

import pytest

from ldtop import fixtures
from ldtop.complex import euler_characteristic
from ldtop.covering import (deck_count, finite_cover, is_connected, lazy_cover, verify_covering,
                            verify_subgroup_image)
from ldtop.errors import WordProblemUnresolved
from ldtop.fundamental import edge_path_presentation
from ldtop.groups import todd_coxeter
from ldtop.homology import FgAbGroup, homology
from fuzz import random_connected_complex


def words(K, v0, texts):
    P, _ = edge_path_presentation(K, v0)
    return [P.parse_word(t) for t in texts]


def test_circle_double_cover():
    K = fixtures.circle()
    L = words(K, 0, ["a a"])
    C = finite_cover(K, 0, L)
    assert C.sheet_count == 2
    assert euler_characteristic(C.complex) == 2 * euler_characteristic(K)
    assert verify_covering(C) and verify_subgroup_image(C, L)
    assert deck_count(C).to_json() == {"normal": True, "order": 2}
    assert not verify_subgroup_image(C, words(K, 0, ["a a a"]))


def test_identity_cover():
    K = fixtures.torus()
    P, _ = edge_path_presentation(K, 0)
    C = finite_cover(K, 0, [(g,) for g in range(1, P.ngens + 1)])
    assert C.sheet_count == 1 and deck_count(C).order == 1


@pytest.mark.parametrize("gens,normal,deck", [
    (["a a a", "b A", "a b A A", "a a b"], True, 3),
    (["a", "b a B B", "b b a B", "b b b"], False, 1),
])
def test_wedge_index_three(gens, normal, deck):
    K = fixtures.wedge_of_circles(2)
    L = words(K, 0, gens)
    C = finite_cover(K, 0, L)
    assert C.sheet_count == 3
    assert euler_characteristic(C.complex) == -3
    # Nielsen-Schreier: 1 + d(r - 1)
    assert homology(C.complex, 1) == FgAbGroup(1 + 3 * (2 - 1))
    assert verify_covering(C) and verify_subgroup_image(C, L)
    assert is_connected(C.complex)
    assert deck_count(C).normal is normal and deck_count(C).order == deck


def test_unique_path_lifting():
    K = fixtures.wedge_of_circles(2)
    C = finite_cover(K, 0, words(K, 0, ["a a a", "b A", "a b A A", "a a b"]))
    rng = random.Random(0)
    nb = K.neighbours()
    for _ in range(50):
        path = [0]
        for _ in range(rng.randint(1, 8)):
            path.append(rng.choice(nb[path[-1]]))
        for start in [v for v in C.complex.vertices if C.projection[v] == 0]:
            lift = C.lift_path(path, start)
            assert [C.projection[v] for v in lift] == path
            assert all(tuple(sorted((a, b))) in C.complex.simplices
                       for a, b in zip(lift, lift[1:]) if a != b)


def test_covers_of_fuzzed_complexes():
    rng = random.Random(5)
    done = 0
    while done < 15:
        K = random_connected_complex(rng, max_vertices=7, max_dim=2, max_facets=6)
        v0 = min(K.vertices)
        P, _ = edge_path_presentation(K, v0)
        if P.ngens == 0:
            continue
        L = [tuple(rng.choice([1, -1]) * rng.randint(1, P.ngens) for _ in range(rng.randint(1, 3)))
             for _ in range(rng.randint(1, 3))]
        T = todd_coxeter(P, L, budget=300)
        if not T.complete or T.index > 6:
            continue
        C = finite_cover(K, v0, L, table=T)
        assert verify_covering(C) and verify_subgroup_image(C, L)
        assert euler_characteristic(C.complex) == C.sheet_count * euler_characteristic(K)
        assert is_connected(C.complex)
        done += 1


def test_lazy_universal_cover_of_circle():
    K = fixtures.circle()
    C = lazy_cover(K, 0, [], "free", radius=10)
    E = C.complex
    assert homology(E, 1).is_trivial() and is_connected(E)
    assert all(len(nb) <= 2 for nb in E.neighbours().values())
    assert verify_covering(C)


def test_lazy_universal_cover_of_torus():
    K = fixtures.torus()
    C = lazy_cover(K, 0, [], "abelian", radius=4)
    assert verify_covering(C)
    assert homology(C.interior(), 1).is_trivial()


def test_lazy_matches_finite_when_table_given():
    K = fixtures.circle()
    L = words(K, 0, ["a a a"])
    T = todd_coxeter(edge_path_presentation(K, 0)[0], L)
    lazy = lazy_cover(K, 0, L, T, radius=6)
    fin = finite_cover(K, 0, L, table=T)
    assert set(lazy.labels.values()) == set(fin.labels.values())


def test_auto_rewriting_can_fail():
    K = fixtures.torus()
    with pytest.raises(WordProblemUnresolved):
        lazy_cover(K, 0, [], "auto", radius=3, budget=50)
