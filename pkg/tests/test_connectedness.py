import random

import pytest

from ldtop.connectedness import (NotDefinable, Schema, SemilinearSet, Term, certify_monotone,
                                 definability_of_union, e_witness_check, eventual_cmp,
                                 example_5_4, ld_connected, nested_intervals, op_connected,
                                 ps_witness_check, stage_set, witness_search)
from ldtop.errors import NonMonotone, ParseError
from ldtop.field import EPS
from fuzz import random_schema_text


def test_example_5_4_stage():
    S = example_5_4()
    assert str(stage_set(S, 2)) == "(-2, -1/2) U (1/2, 2)"
    assert str(stage_set(S, 3)) == "(-3, -1/3) U (1/3, 3)"


def test_example_5_4_verdicts():
    S = example_5_4()
    v = ld_connected(S)
    assert not v.connected and len(v.components) == 2
    assert op_connected(S) is False
    ps = witness_search(S, "PS", 1)
    assert str(ps.witness) == "(0, +inf)"
    for k in (1, 2, 3):
        assert witness_search(S, "E", k).witness is None
    assert witness_search(S, "E", 3).to_json() == {"none": 3}


def test_example_5_4_obstruction():
    S = example_5_4()
    d = definability_of_union(S, 1)
    assert isinstance(d, NotDefinable) and d.point == EPS
    for text in ["(0, +inf)", "(2*eps, 5)", "(1/2, +inf)"]:
        U = SemilinearSet.parse(text)
        x = d.refute(U)
        # x lies in exactly one of U and the positive component
        assert U.contains(x) != any(stage_set(S, n).contains(x) and x > 0 for n in range(2, 200))


def test_definable_when_stabilized():
    S = Schema.from_text("STAGE n>=1: (-n, n)\nSTAGE n>=3: (-3, 3)")
    assert str(definability_of_union(S, 0)) == "(-3, 3)"
    d = definability_of_union(Schema.from_text("STAGE n>=1: (1/n, 1)"), 0)
    assert isinstance(d, NotDefinable) and d.point == EPS


def test_monotonicity_is_enforced():
    with pytest.raises(NonMonotone):
        certify_monotone(Schema.from_text("STAGE n>=1: (n, n + 1)"))


def test_nested_is_connected_without_witness():
    S = nested_intervals()
    assert ld_connected(S).connected and op_connected(S)
    assert not ps_witness_check(S, SemilinearSet.parse("(0, +inf)"))
    assert witness_search(S, "PS", 2).witness is None


def test_e_witness_must_lie_inside():
    S = example_5_4()
    assert ps_witness_check(S, SemilinearSet.parse("(0, +inf)"))
    assert not e_witness_check(S, SemilinearSet.parse("(0, +inf)"))
    assert not e_witness_check(S, SemilinearSet.parse("(1/5, 5)"))


def test_term_comparison():
    assert eventual_cmp(Term.parse("n"), Term.parse("1000")) > 0
    assert eventual_cmp(Term.parse("1/n"), Term.parse("eps")) > 0
    # n ranges over standard integers, so eps*n stays infinitesimal
    assert eventual_cmp(Term.parse("eps*n"), Term.parse("1/eps")) < 0


def test_text_round_trip_and_idempotence():
    rng = random.Random(9)
    for _ in range(60):
        S = Schema.from_text(random_schema_text(rng))
        T = Schema.from_text(S.to_text())
        assert T.to_text() == S.to_text()
        for n in (S.n0, S.n0 + 3):
            U = stage_set(S, n)
            assert SemilinearSet.parse(str(U)) == U
            assert SemilinearSet(U.intervals) == U


def test_parse_errors():
    with pytest.raises(ParseError):
        Schema.from_text("STAGE n>=1: (0, 1")
    with pytest.raises(ParseError):
        SemilinearSet.parse("(0, banana)")


def test_fuzz_agreement_and_chain():
    rng = random.Random(10)
    for _ in range(60):
        S = Schema.from_text(random_schema_text(rng))
        ld = ld_connected(S).connected
        assert op_connected(S) == ld
        ps = witness_search(S, "PS", 1)
        e = witness_search(S, "E", 1)
        if ps.witness is not None:
            assert not ld
        if e.witness is not None:
            assert ps_witness_check(S, e.witness)
