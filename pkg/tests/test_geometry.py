from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from shapely.geometry import box
from shapely.ops import unary_union

from oracles import shapely_region
from riesz_forge import geometry as g
from riesz_forge.errors import InvalidDomain, NonUniformCovering, OverlapError

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=12)


# --- types ---------------------------------------------------------------


def test_interval_requires_left_below_right():
    with pytest.raises(InvalidDomain):
        g.Interval(1, 1)
    assert g.Interval("1/4", "3/4").length == Fraction(1, 2)


def test_multi_interval_sorted_and_disjoint():
    mi = g.MultiInterval((g.Interval(2, 3), g.Interval(0, 1)))
    assert mi.left_endpoints == [0, 2]
    assert mi.measure == 2
    with pytest.raises(InvalidDomain):
        g.MultiInterval((g.Interval(0, 2), g.Interval(1, 3)))


def test_cells_reject_degenerate_shapes():
    with pytest.raises(InvalidDomain):
        g.tri((0, 0), (0, 1))
    with pytest.raises(InvalidDomain):
        g.rect(0, 0, 0, 1)
    with pytest.raises(InvalidDomain):
        g.SignedCell(g.Interval(0, 1), weight=2)


def test_lattice_rejects_singular_basis():
    with pytest.raises(ValueError):
        g.Lattice(((1, 2), (2, 4)))


# --- measure -------------------------------------------------------------


def test_measure_examples():
    assert g.measure(g.rhombus(1, 1)) == 2
    assert g.measure(g.unit_square()) == 1
    assert g.measure(g.octagon()) == 14


def test_octagon_measure_against_monte_carlo_and_shapely():
    o = g.octagon()
    assert shapely_region(o).area == pytest.approx(14, abs=1e-12)
    rng = np.random.default_rng(7)
    pts = 4 * rng.random((400_000, 2))
    est = 16 * o.indicator(pts).mean()
    assert est == pytest.approx(14, abs=0.05)


@pytest.mark.parametrize("name", ["octagon", "figure3", "rhombus"])
def test_measures_match_shapely(name):
    d = {"octagon": g.octagon(), "figure3": g.figure3_domain(), "rhombus": g.rhombus(3, Fraction(1, 2))}[name]
    assert shapely_region(d).area == pytest.approx(float(d.measure), abs=1e-12)


def test_figure3_domain_vertices():
    # R_2 is the band with vertices (0,1/4),(0,1/2),(1/2,1),(1,1/2),(1,1/4),(1/2,3/4)
    from shapely.geometry import Polygon
    r2 = Polygon([(0, .25), (0, .5), (.5, 1), (1, .5), (1, .25), (.5, .75)])
    expected = r2.union(box(0, 0, 1, .25))
    assert shapely_region(g.figure3_domain()).symmetric_difference(expected).area < 1e-12
    assert g.figure3_domain().measure == Fraction(1, 2)


def test_octagon_indicator_is_zero_one():
    assert g.octagon().validate(samples=100_000, seed=3)
    assert g.figure3_domain().validate(samples=100_000, seed=4)


def test_exact_membership_on_boundaries():
    o = g.octagon()
    assert o.contains((2, 2))
    assert not o.contains((0, 0))
    assert o.contains((1, 0))        # corner triangles are half-open on the hypotenuse side
    assert not o.contains(("1/2", "1/4"))


# --- transform -----------------------------------------------------------


@given(rho=st.sampled_from([Fraction(1, 3), Fraction(1, 2), 1, 2, 5]), vx=rationals, vy=rationals,
       which=st.sampled_from(["octagon", "figure3", "rhombus", "square"]))
def test_transform_scales_measure(rho, vx, vy, which):
    d = {"octagon": g.octagon(), "figure3": g.figure3_domain(),
         "rhombus": g.rhombus(1, 2), "square": g.unit_square()}[which]
    assert g.transform(d, rho, (vx, vy)).measure == Fraction(rho) ** 2 * d.measure


def test_transform_examples():
    assert g.transform(g.unit_square(), 2).measure == 4
    d = g.figure3_domain()
    assert g.transform(d, 1, (0, 0)) == d
    n = 4
    dil = g.transform(g.dyadic_approximant(2).domain(), n)
    assert all(c.shape.x.length == 1 and c.shape.y.length == 1 for c in dil.cells)


@pytest.mark.parametrize("rho", [0, -1])
def test_transform_rejects_nonpositive_dilation(rho):
    with pytest.raises(ValueError):
        g.transform(g.unit_square(), rho)


def test_one_dimensional_transform():
    d = g.interval_domain(0, 1)
    assert g.transform(d, Fraction(1, 3), (5,)).measure == Fraction(1, 3)


# --- cut and translate ---------------------------------------------------


def test_corner_triangles_reassemble_into_rhombus():
    moved = g.cut_translate(g.octagon_corners(), g.OCTAGON_CORNER_SHIFTS)
    assert g.symm_diff_exact(moved, g.rhombus(1, 1)) == 0
    assert shapely_region(moved).symmetric_difference(shapely_region(g.rhombus(1, 1))).area < 1e-12
    assert moved.measure == 2


def test_cut_translate_identity():
    d = g.figure3_domain()
    assert g.cut_translate([d], [(0, 0)]).cells == d.cells


def test_cut_translate_overlap_errors():
    a, b = g.square(1), g.square(1, (1, 0))
    with pytest.raises(OverlapError):
        g.cut_translate([a, b], [(0, 0), (-1, 0)])      # overlap after shifting
    with pytest.raises(OverlapError):
        g.cut_translate([a, g.square(1, ("1/2", 0))], [(0, 0), (5, 0)])  # overlap before


@given(k=st.integers(1, 4), data=st.data())
def test_cut_translate_preserves_measure(k, data):
    parts = [g.square(Fraction(1, 2), (2 * i, 0)) for i in range(k)]
    shifts = [(0, 3 * i + data.draw(st.integers(0, 2))) for i in range(k)]
    assert g.cut_translate(parts, shifts).measure == sum(p.measure for p in parts)


# --- symmetric difference ------------------------------------------------


def test_symm_diff_examples():
    d = g.figure3_domain()
    assert g.symm_diff_measure(d, d).value == 0
    est = g.symm_diff_measure(g.unit_square(), g.translate(g.unit_square(), (1, 0)), grid=256)
    assert abs(est.value - 2) <= est.error_bound
    assert g.symm_diff_exact(g.unit_square(), g.translate(g.unit_square(), (1, 0))) == 2


def _shapely_symm(N):
    s = 1 / 2 ** N
    dn = unary_union([box(float(x), float(y), float(x) + s, float(y) + s)
                      for x, y in g.dyadic_approximant(N).squares])
    return dn.symmetric_difference(shapely_region(g.figure3_domain())).area


@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_symm_diff_exact_matches_shapely_and_sampling(N):
    d, dn = g.figure3_domain(), g.dyadic_approximant(N).domain()
    exact = g.symm_diff_exact(d, dn)
    assert float(exact) == pytest.approx(_shapely_symm(N), abs=1e-12)
    est = g.symm_diff_measure(d, dn, grid=512)
    assert abs(est.value - float(exact)) <= est.error_bound


def test_symm_diff_decreasing_in_level():
    d = g.figure3_domain()
    exact = [g.symm_diff_exact(d, g.dyadic_approximant(N).domain()) for N in (2, 3, 4, 5)]
    sampled = [g.symm_diff_measure(d, g.dyadic_approximant(N).domain()).value for N in (2, 3, 4, 5)]
    assert all(a > b for a, b in zip(exact, exact[1:]))
    assert all(a > b for a, b in zip(sampled, sampled[1:]))


# --- tiling --------------------------------------------------------------


def test_tiling_examples():
    assert g.tiling_level(g.figure3_domain(), g.figure3_lattice()) == 2
    assert g.tiling_level(g.rhombus(1, 1), g.rhombus_lattice(1, 1), window=2) == 1
    assert g.tiling_level(g.unit_square(), g.Lattice(((1, 0), (0, 1)))) == 1


@pytest.mark.parametrize("a,b", [(1, 2), (3, Fraction(1, 2))])
def test_rhombus_tiles_at_level_one(a, b):
    lat = g.rhombus_lattice(a, b)
    window = max(2 * Fraction(a), 2 * Fraction(b))
    assert g.tiling_level(g.rhombus(a, b), lat, window=window, grid=384) == 1


@given(k=st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
def test_tiling_invariant_under_lattice_translation(k):
    lat = g.figure3_lattice()
    d = g.translate(g.figure3_domain(), lat.vector(k))
    assert g.tiling_level(d, lat, grid=128) == 2


def test_tiling_non_uniform_covering():
    with pytest.raises(NonUniformCovering):
        g.tiling_level(g.unit_square(), g.Lattice(((2, 0), (0, 1))), window=2)


def test_tiling_default_window_covers_period_cell():
    # the gaps of 2Z x Z lie outside [0,1)^2; the sample window must reach them
    with pytest.raises(NonUniformCovering):
        g.tiling_level(g.unit_square(), g.Lattice(((2, 0), (0, 1))))
    with pytest.raises(NonUniformCovering):
        g.tiling_level(g.unit_square(), g.Lattice(((1, 0), (1, 2))))
    assert g.tiling_level(g.square(2), g.Lattice(((1, 0), (1, 2)))) == 2


def test_tiling_grid_too_coarse():
    with pytest.raises(ValueError):
        g.tiling_level(g.figure3_domain(), g.figure3_lattice(), grid=8)


def test_tiling_one_dimensional():
    assert g.tiling_level(g.interval_domain(0, 3), g.Lattice(((1,),))) == 3


# --- dyadic approximants -------------------------------------------------


def test_dyadic_level_two_enumeration():
    a = g.dyadic_approximant(2)
    assert len(a.lower) == 4 and len(a.upper) == 4
    q = Fraction(1, 4)
    # direct enumeration of both displayed families at N=2
    upper = {(Fraction(k, 4), q + Fraction(k + l + 1, 4)) for k in range(2) for l in range(1)}
    upper |= {(Fraction(1, 2) + Fraction(k, 4), Fraction(4 - 2 - k - l, 4)) for k in range(2) for l in range(1)}
    assert set(a.upper) == upper
    assert set(a.lower) == {(Fraction(k, 4), 0) for k in range(4)}
    assert a.domain().measure == Fraction(1, 2)


@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_dyadic_invariants(N):
    a = g.dyadic_approximant(N)
    assert len(a.lower) == 2 ** (2 * N - 2) and len(a.upper) == 2 ** (2 * N - 2)
    assert len(set(a.squares)) == len(a.squares)
    assert a.side == Fraction(1, 2 ** N)
    assert a.domain().measure == Fraction(1, 2)
    assert g.symm_diff_exact(a.lower_domain(), g.figure3_r1()) == 0


def test_dyadic_squares_pairwise_disjoint_exact():
    d = g.dyadic_approximant(3).domain()
    cells = d.cells
    for i in range(len(cells)):
        for j in range(i + 1, len(cells)):
            a = g.SignedDomain((cells[i],))
            b = g.SignedDomain((cells[j],))
            assert g.intersection_measure(a, b) == 0


def test_dyadic_rejects_low_level():
    with pytest.raises(ValueError):
        g.dyadic_approximant(1)


@pytest.mark.parametrize("N", [2, 3, 4])
def test_upper_squares_not_nested(N):
    # the staircase squares straddle the slanted band, so refinement is not inclusion
    coarse = g.dyadic_approximant(N).upper_domain()
    fine = g.dyadic_approximant(N + 1).upper_domain()
    assert g.intersection_measure(coarse, fine) < coarse.measure
