import pytest

from ldtop.groups import (Presentation, cyclic_reduce, free_reduce, inverse, multiply, simplify,
                          todd_coxeter)
from ldtop.errors import ParseError


def P(text):
    return Presentation.from_text(text)


def test_word_helpers():
    assert free_reduce([1, 2, -2, -1, 3]) == (3,)
    assert cyclic_reduce([-1, 2, 1]) == (2,)
    assert inverse((1, -2)) == (2, -1)
    assert multiply((1, 2), (-2, 3)) == (1, 3)


def test_text_round_trip():
    G = P("GEN a b\nREL a a\nREL a b A B\n")
    assert Presentation.from_text(G.to_text()) == G
    assert G.parse_word("a B") == (1, -2)
    with pytest.raises(ParseError):
        G.parse_word("c")


@pytest.mark.parametrize("text,subgroup,index", [
    ("GEN a\nREL a a a a\n", ["a a"], 2),
    ("GEN a\nREL a a a a\n", [], 4),
    ("GEN a b\nREL a a\nREL b b b\nREL a b a b\n", [], 6),   # S_3
    ("GEN a b\nREL a a\nREL b b\nREL a b a b\n", ["a"], 2),   # Klein four
    ("GEN a b\nREL a b A B\n", ["a", "b"], 1),
])
def test_todd_coxeter_index(text, subgroup, index):
    G = P(text)
    T = todd_coxeter(G, [G.parse_word(w) for w in subgroup])
    assert T.complete and T.index == index


def test_whole_group_has_index_one():
    G = P("GEN a b\nREL a a a\nREL b b\n")
    T = todd_coxeter(G, [(1,), (2,)])
    assert T.index == 1


def test_budget_exhaustion_on_infinite_group():
    G = P("GEN a b\nREL a b A B\n")
    T = todd_coxeter(G, [], budget=200)
    assert not T.complete and T.index is None and T.status == "budget-exceeded"


def test_table_is_a_permutation_action():
    G = P("GEN a b\nREL a a\nREL b b b\nREL a b a b\n")
    T = todd_coxeter(G, [])
    for g in (1, 2):
        assert sorted(T.permutation(g)) == list(range(6))
    for r in G.relators:
        assert all(T.act(c, r) == c for c in range(6))


def test_simplify_keeps_abelianization():
    from ldtop.fundamental import abelianization
    G = P("GEN a b c\nREL c\nREL a b A B\nREL a C\n")
    Q = simplify(G)
    assert abelianization(Q) == abelianization(G)
    assert Q.ngens <= 1
