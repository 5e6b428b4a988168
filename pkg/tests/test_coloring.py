import pytest
from hypothesis import given, strategies as st

from dehncol.coloring import (
    BudgetExceeded,
    ColorPalette,
    NotColorable,
    affine_orbit_min,
    apply_affine,
    build_constraints,
    classify_coloring,
    coloring_affine_classes,
    coloring_counts,
    constraint_rank,
    enumerate_colorings,
    is_odd_prime,
    is_trivial_by_crossings,
    is_trivial_by_shading,
    min_colors_over_diagram,
    satisfies_constraints,
    solve_coloring_space,
)
from conftest import topo_of
from oracles import EXTRA_DIAGRAMS, brute_colorings, shading_trivial


def test_is_odd_prime():
    assert [n for n in range(40) if is_odd_prime(n)] == [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
    assert not is_odd_prime(2) and not is_odd_prime(9)


def test_rejects_composite(topos):
    with pytest.raises(ValueError):
        solve_coloring_space(topos["trefoil"], 9)


@pytest.mark.parametrize(
    "knot,p,total,nontrivial",
    [
        ("trefoil", 3, 27, 18),
        ("trefoil", 5, 25, 0),
        ("4_1", 5, 125, 100),
        ("5_1", 5, 125, 100),
        ("5_2", 7, 343, 294),
        ("5_2", 5, 25, 0),
        ("unknot", 7, 49, 0),
    ],
)
def test_counts(topos, knot, p, total, nontrivial):
    counts = coloring_counts(solve_coloring_space(topos[knot], p))
    assert counts == {"total": total, "trivial": p * p, "nontrivial": nontrivial}


def test_enumeration_matches_brute_force(topos):
    for t in topos.values():
        for p in (3, 5, 7):
            got = list(enumerate_colorings(solve_coloring_space(t, p)))
            assert len(got) == len(set(got))
            assert set(got) == brute_colorings(t, p)


def test_enumeration_blocks_partition(topos):
    space = solve_coloring_space(topos["5_2"], 7)
    whole = set(enumerate_colorings(space))
    parts = [set(enumerate_colorings(space, block=(i, 3))) for i in range(3)]
    assert set().union(*parts) == whole and sum(map(len, parts)) == len(whole)


def test_triviality_characterizations_agree(topos):
    for t in topos.values():
        for p in (3, 5, 7):
            for col in enumerate_colorings(solve_coloring_space(t, p)):
                assert is_trivial_by_crossings(t, col) == is_trivial_by_shading(t, col) == shading_trivial(t, col)
                classify_coloring(t, col)


def test_constraints_and_rank(topos):
    t = topos["trefoil"]
    for row in build_constraints(t, 7):
        assert sorted(x for x in row if x) == [1, 1, 6, 6]
    # dimension = regions - rank
    for name, tt in topos.items():
        for p in (3, 5, 7):
            assert solve_coloring_space(tt, p).dimension == tt.n_regions - constraint_rank(tt, p)


@given(st.sampled_from(sorted(EXTRA_DIAGRAMS)), st.sampled_from([3, 5, 7]))
def test_extra_diagrams_against_oracle(name, p):
    t = topo_of(EXTRA_DIAGRAMS[name])
    got = set(enumerate_colorings(solve_coloring_space(t, p)))
    assert got == brute_colorings(t, p)
    assert sum(1 for c in got if shading_trivial(t, c)) == p * p


def test_budget(topos):
    space = solve_coloring_space(topos["5_2"], 7)
    with pytest.raises(BudgetExceeded):
        list(enumerate_colorings(space, budget=100))


def test_budget_env(topos, monkeypatch):
    monkeypatch.setenv("DEHNCOL_BUDGET", "10")
    with pytest.raises(BudgetExceeded):
        list(enumerate_colorings(solve_coloring_space(topos["trefoil"], 3)))


@given(st.integers(1, 6), st.integers(0, 6))
def test_affine_action_preserves_colorings(s, t):
    from dehncol.tables import lookup
    from dehncol.diagram import extract_topology

    topo = extract_topology(lookup("5_2").pd)
    p = 7
    for col in list(enumerate_colorings(solve_coloring_space(topo, p)))[::17]:
        moved = apply_affine(col, s, t, p)
        assert satisfies_constraints(topo, moved, p)
        assert is_trivial_by_crossings(topo, moved) == is_trivial_by_crossings(topo, col)


def test_apply_affine_rejects_nonunit():
    with pytest.raises(ValueError):
        apply_affine((0, 1), 7, 0, 7)


def test_affine_classes(topos):
    # nontrivial colorings have trivial stabilizer, so orbits have size p(p-1)
    for knot, p in (("trefoil", 3), ("4_1", 5), ("5_1", 5), ("5_2", 7)):
        space = solve_coloring_space(topos[knot], p)
        classes = coloring_affine_classes(space)
        assert all(len(c) == p * (p - 1) for c in classes)
        assert sum(map(len, classes)) == coloring_counts(space)["nontrivial"]
        reps = [c[0] for c in classes]
        assert reps == sorted(reps)
        for c in classes:
            assert affine_orbit_min(c[-1], p) == c[0]


def test_min_colors(topos):
    assert min_colors_over_diagram(solve_coloring_space(topos["5_2"], 7))[0] == 5
    assert min_colors_over_diagram(solve_coloring_space(topos["trefoil"], 3))[0] == 3
    with pytest.raises(NotColorable):
        min_colors_over_diagram(solve_coloring_space(topos["trefoil"], 5))


def test_palette_validation():
    with pytest.raises(ValueError):
        ColorPalette(5, ())
    with pytest.raises(ValueError):
        ColorPalette(5, (0, 5))
    assert len(ColorPalette(5, (0, 1))) == 2
