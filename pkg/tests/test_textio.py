import pytest

from ldtop import fixtures
from ldtop.complex import Exhaustion, closure
from ldtop.errors import MissingFace, ParseError
from ldtop.textio import (read_complex_text, read_glue_text, write_complex_text,
                          write_exhaustion_text)
from ldtop.complex import glue_complexes


@pytest.mark.parametrize("name", sorted(fixtures.COMPLEXES))
def test_complex_round_trip(name):
    K = fixtures.COMPLEXES[name]()
    assert read_complex_text(write_complex_text(K)) == K


@pytest.mark.parametrize("name", sorted(fixtures.EXHAUSTIONS))
def test_exhaustion_round_trip(name):
    X = fixtures.EXHAUSTIONS[name]()
    Y = read_complex_text(write_exhaustion_text(X))
    assert isinstance(Y, Exhaustion)
    assert [K.simplices for K in X.stages] == [K.simplices for K in Y.stages]
    assert X.stability_table() == Y.stability_table()


def test_staged_file_and_defaults():
    X = read_complex_text("STAGES 3\nS 0 1 @0\nS 1 2 @1\nSTAB 0 @0\n")
    assert len(X) == 3 and X.birth((2,)) == 1
    assert X.stability((1,)) == 2          # unlisted: last stage


def test_closure_and_strict_mode():
    assert read_complex_text("S 0 1 2\n") == closure([(0, 1, 2)])
    with pytest.raises(MissingFace):
        read_complex_text("S 0 1\n", strict=True)


@pytest.mark.parametrize("bad", ["S 0 0\n", "Q 1\n", "S a b\n", "S 0 @x\n", "STAB 0\n", "STAGES\n"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        read_complex_text(bad)


def test_glue_text():
    spec = read_glue_text("PART circle\nPART\nS 0 1\nS 1 2\nS 0 2\nGLUE 0 1 0:0 1:1\n",
                          lambda name: fixtures.COMPLEXES[name]())
    K = glue_complexes(spec)
    assert len(K.vertices) == 4
    with pytest.raises(ParseError):
        read_glue_text("GLUE 0 1\n", lambda name: None)
