import json

import pytest
from hypothesis import given, strategies as st

from dehncol.diagram import (
    SPECIFIED_REGION_FRAMES,
    PDCode,
    PDSyntaxError,
    PDValidationError,
    TopologyError,
    corners_from,
    crossing_corners,
    extract_topology,
    parse_pd_code,
)
from conftest import topo_of
from oracles import EXTRA_DIAGRAMS, all_small_pd_codes

TREFOIL = "X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)"


def test_parse_text_and_json_agree():
    a = parse_pd_code(TREFOIL)
    b = parse_pd_code('{"pd": [[1,4,2,5],[3,6,4,1],[5,2,6,3]]}')
    c = parse_pd_code("[[1,4,2,5],[3,6,4,1],[5,2,6,3]]")
    d = parse_pd_code("X[1,4,2,5] X[3,6,4,1]  X[5,2,6,3]")
    assert a == b == c == d
    assert a.crossings[0] == (1, 4, 2, 5)
    assert parse_pd_code(a.to_text()) == a
    assert parse_pd_code(json.dumps(a.to_json())) == a


def test_labels_need_not_be_consecutive():
    pd = parse_pd_code("X(10,40,20,50);X(30,60,40,10);X(50,20,60,30)")
    assert extract_topology(pd).n_regions == 5


@pytest.mark.parametrize(
    "text",
    ["X(1,2,3)", "X(1,2,3,4,5)", "X(1,a,2,3)", "Y(1,2,3,4)", "X(0,1,1,0)", "X(1,2,3,4", "[[1,2,3]]", '{"x": 1}', "[1,2"],
)
def test_syntax_errors(text):
    with pytest.raises(PDSyntaxError):
        parse_pd_code(text)


def test_empty_input():
    with pytest.raises(PDSyntaxError):
        parse_pd_code("   ")
    assert len(parse_pd_code("", allow_empty=True)) == 0


def test_label_multiplicity():
    with pytest.raises(PDValidationError):
        parse_pd_code("X(1,2,3,4);X(1,2,3,5)")
    with pytest.raises(PDValidationError):
        parse_pd_code("X(1,1,1,2)")


def test_links_rejected():
    with pytest.raises(PDValidationError, match="components"):
        parse_pd_code("X(1,3,2,4);X(3,1,4,2)")


def test_nonplanar_rotation_rejected():
    # trefoil with the first crossing's rotation scrambled
    with pytest.raises(TopologyError):
        extract_topology(parse_pd_code("X(1,5,2,4);X(3,6,4,1);X(5,2,6,3)"))


def test_region_counts(topos):
    assert {n: t.n_regions for n, t in topos.items()} == {"unknot": 2, "trefoil": 5, "4_1": 6, "5_1": 7, "5_2": 7}


def _check_topology(t):
    c = t.n_crossings
    assert t.n_regions == c + 2
    # every (crossing, corner) pair lands in a region, and every region is used
    used = {r for q in t.quadrants for r in q}
    assert used == set(t.regions) or c == 0
    for q0, q1, q2, q3 in t.quadrants:
        # opposite quadrants share a shade, adjacent ones differ
        assert t.shading[q0] == t.shading[q2] != t.shading[q1] == t.shading[q3]
    for left, right in t.edge_sides.values():
        assert t.shading[left] != t.shading[right]
    # face sizes sum to 4c
    assert sum(1 for q in t.quadrants for _ in q) == 4 * c


def test_topology_invariants_builtin(topos):
    for t in topos.values():
        _check_topology(t)


def test_topology_invariants_all_small_codes():
    for t in all_small_pd_codes(2):
        _check_topology(t)


def test_corners_convention(topos):
    for t in topos.values():
        for k, (a, b, c, d) in enumerate(t.quadrants):
            assert crossing_corners(t, k).as_tuple() == (a, d, b, c)


def test_corners_against_edge_sides(topos):
    # x1, x2 flank the incoming under edge; x1, x3 flank the next edge end
    for t in topos.values():
        for k, x in enumerate(t.pd.crossings):
            cc = crossing_corners(t, k)
            assert {cc.x1, cc.x2} == set(t.edge_sides[x[0]])
            assert {cc.x1, cc.x3} == set(t.edge_sides[x[1]])
            assert t.shading[cc.x1] == t.shading[cc.x4] != t.shading[cc.x2] == t.shading[cc.x3]


def test_corners_cover_every_region_5_2(topos):
    t = topos["5_2"]
    seen = {r for k in range(t.n_crossings) for r in crossing_corners(t, k).as_tuple()}
    assert seen == set(t.regions)


def test_unknown_crossing(topos):
    with pytest.raises(IndexError):
        crossing_corners(topos["trefoil"], 3)


def test_unknot_special_case(topos):
    t = topos["unknot"]
    assert t.n_regions == 2 and t.quadrants == () and t.shading == (0, 1)


def test_specified_frames_are_rotations():
    # each frame is a rotation of the base frame; x1,x4 opposite, x2,x3 opposite
    for q, (idx, sign) in SPECIFIED_REGION_FRAMES.items():
        x1, x2, x3, x4 = idx
        assert x1 == q
        assert (x1 - x4) % 4 == 2 and (x2 - x3) % 4 == 2
        assert sign in (1, -1)


@given(st.sampled_from(sorted(EXTRA_DIAGRAMS)), st.integers(0, 3))
def test_corners_from_frames_extra(name, q):
    t = topo_of(EXTRA_DIAGRAMS[name])
    for k in range(t.n_crossings):
        corners, _ = corners_from(t, k, q)
        assert sorted(corners) == sorted(t.quadrants[k])


def test_pdcode_validates_on_construction():
    with pytest.raises(PDValidationError):
        PDCode(((1, 2, 3, 4),))
