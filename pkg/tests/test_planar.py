from ldtop.connectedness import ld_connected, op_connected, witness_search
from ldtop.field import EPS, ONE, ZERO, QEps
from ldtop.planar import (HalfPlane, PlanarSchema, Polygon, Segment, TranslateFamily, example_5_3,
                          has_integer, planar_components, planar_ps_check, planar_stage_set,
                          polygon_inside_union, segments_meet)


def pt(x, y):
    return (QEps.of(x), QEps.of(y))


def test_stage_zero_is_two_zigzags():
    S = example_5_3()
    st = planar_stage_set(S, 0)
    assert len(st) == 4
    assert len(planar_stage_set(S, 2)) == 20


def test_two_components_not_op():
    S = example_5_3()
    v = ld_connected(S)
    assert not v.connected and len(v.components) == 2
    assert op_connected(S) is False
    assert len(planar_components(S)) == 2


def test_no_ps_witness_at_small_bounds():
    S = example_5_3()
    for k in (1, 2):
        assert witness_search(S, "PS", k).witness is None


def test_lower_half_plane_cuts_both_components():
    S = example_5_3()
    # y < -1/4 meets both zigzags, so it is not clopen in the union
    U = Polygon((HalfPlane(ZERO, ONE, QEps(-1) / 4, True),))
    assert not planar_ps_check(S, U)


def test_gapped_family_is_disconnected_everywhere():
    seg = (Segment(pt(0, 0), pt(1, 0)),)
    S = PlanarSchema((TranslateFamily(seg, pt(0, 0), pt(2, 0)),))
    assert not ld_connected(S).connected and op_connected(S) is False


def test_touching_family_is_connected():
    seg = (Segment(pt(0, 0), pt(1, 0)),)
    S = PlanarSchema((TranslateFamily(seg, pt(0, 0), pt(1, 0)),))
    assert ld_connected(S).connected and op_connected(S)
    assert witness_search(S, "PS", 2).witness is None


def test_segments_meet():
    a = Segment(pt(0, 0), pt(2, 2))
    assert segments_meet(a, Segment(pt(0, 2), pt(2, 0)))
    assert not segments_meet(a, Segment(pt(0, 1), pt(1, 2)))
    assert segments_meet(a, Segment(pt(2, 2), pt(3, 0)))


def test_has_integer():
    assert has_integer((QEps(1) / 2, True, QEps(3) / 2, True))
    assert not has_integer((EPS, True, ONE - EPS, False))
    assert has_integer((-ONE / EPS, True, ONE / EPS, True), 2, 1)
    assert not has_integer((ZERO, True, ONE, True), 0, 0)


def test_polygon_inside_union():
    seg = (Segment(pt(0, 0), pt(1, 0)),)
    S = PlanarSchema((TranslateFamily(seg, pt(0, 0), pt(1, 0)),))
    # the flat strip 0 <= y <= 0 with 0 <= x <= 1 is a segment of the union
    U = Polygon((HalfPlane(ZERO, ONE, ZERO), HalfPlane(ZERO, -ONE, ZERO),
                 HalfPlane(ONE, ZERO, ONE), HalfPlane(-ONE, ZERO, ZERO)))
    assert polygon_inside_union(S, U)
