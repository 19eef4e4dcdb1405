from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import brute_lattice_points, brute_shifted_family
from riesz_forge import geometry as g
from riesz_forge import spectra as s
from riesz_forge.errors import DuplicateOffsets, NotASubset

F = Fraction


# --- shifted families ----------------------------------------------------


def test_shifted_family_half_integers():
    f = s.shifted_family([0, F(1, 2)], 1)
    pts = f.truncate(2).point_set()
    assert pts == {(F(k, 2),) for k in range(-4, 5)}


def test_shifted_family_is_rhombus_basis():
    f = s.shifted_family([(0, 0), (F(1, 2), F(1, 2))], 2)
    assert f.truncate(3).point_set() == s.rhombus_spectrum(1, 1).truncate(3).point_set()


@pytest.mark.parametrize("offsets", [[0, 0], [0, 1], [F(1, 3), F(-2, 3)]])
def test_shifted_family_duplicate_offsets(offsets):
    with pytest.raises(DuplicateOffsets):
        s.shifted_family(offsets, 1)


def test_shifted_family_against_enumeration():
    offs = [(0, 0), (F(1, 4), F(3, 4)), (F(1, 2), 0)]
    assert s.shifted_family(offs, 2).truncate(F(5, 2)).point_set() == brute_shifted_family(offs, F(5, 2))


# --- truncation ----------------------------------------------------------


def test_truncate_examples():
    assert len(s.truncate(s.integer_grid(2), 1)) == 9
    t = s.truncate(s.grid(F(1, 4)), 1)
    assert len(t) == 81
    assert t.point_set() == {(F(n, 4), F(m, 4)) for n in range(-4, 5) for m in range(-4, 5)}


def test_rhombus_basis_truncation_count():
    # the text's "9 + 4 = 13" undercounts: the half-integer coset has 4 x 4 points at radius 3/2
    oracle = brute_shifted_family([(0, 0), (F(1, 2), F(1, 2))], F(3, 2))
    t = s.truncate(s.rhombus_spectrum(1, 1), F(3, 2))
    assert len(oracle) == 25
    assert t.point_set() == oracle


def test_truncation_order_is_deterministic():
    f = s.octagon_spectrum()
    a, b = s.truncate(f, 2), s.truncate(f, 2)
    assert a.frequencies == b.frequencies
    norms = [max(abs(c) for c in p) for p in a.frequencies]
    assert norms == sorted(norms)


@given(r1=st.fractions(F(1, 4), 3, max_denominator=8), r2=st.fractions(F(1, 4), 3, max_denominator=8))
def test_truncate_monotone(r1, r2):
    lo, hi = sorted((r1, r2))
    f = s.octagon_spectrum()
    assert s.truncate(f, lo).point_set() <= s.truncate(f, hi).point_set()


def test_truncation_rejects_duplicates():
    with pytest.raises(ValueError):
        s.TruncatedSpectrum(((F(0),), (F(0),)), F(1))


# --- set difference ------------------------------------------------------


def test_octagon_spectrum_residues_against_brute_force():
    f = s.octagon_spectrum()
    removed = brute_shifted_family([(0, 0), (F(1, 2), F(1, 2))], 10)
    for n in range(-40, 41):
        for m in range(-40, 41):
            p = (F(n, 4), F(m, 4))
            expect_removed = (n % 4 == 0 and m % 4 == 0) or (n % 4 == 2 and m % 4 == 2)
            assert f.contains(p) == (not expect_removed)
            assert (p in removed) == expect_removed


def test_octagon_spectrum_count_at_radius_two():
    assert len(s.truncate(s.octagon_spectrum(), 2)) == 289 - 41 == 248


def test_set_difference_with_empty_set():
    f = s.grid(F(1, 4))
    out = s.set_difference(f, s.FrequencySet(2, ()))
    assert out.truncate(3).point_set() == f.truncate(3).point_set()


def test_set_difference_not_a_subset():
    with pytest.raises(NotASubset):
        s.set_difference(s.integer_grid(2), s.rhombus_spectrum(1, 1))


@pytest.mark.parametrize("radius", [1, F(5, 2), 4, 10])
def test_set_difference_reunion(radius):
    f1, f2 = s.grid(F(1, 4)), s.rhombus_spectrum(1, 1)
    diff = s.set_difference(f1, f2)
    a = diff.truncate(radius).point_set()
    b = f2.truncate(radius).point_set()
    assert not a & b
    assert a | b == f1.truncate(radius).point_set()


def test_union_and_dilate():
    u = s.union(s.shifted_family([0], 1), s.shifted_family([F(1, 2)], 1))
    assert u.truncate(1).point_set() == {(F(k, 2),) for k in range(-2, 3)}
    d = s.dilate(s.integer_grid(1), 3)
    assert d.truncate(6).point_set() == {(F(3 * k),) for k in range(-2, 3)}


# --- lattices ------------------------------------------------------------


def test_dual_lattice_examples():
    z2 = g.Lattice(((1, 0), (0, 1)))
    assert s.same_lattice(s.dual_lattice(z2), z2)
    assert s.same_lattice(s.dual_lattice(g.Lattice(((2, 0), (0, 2)))),
                          g.Lattice(((F(1, 2), 0), (0, F(1, 2)))))
    dual = s.dual_lattice(g.rhombus_lattice(1, 1))
    assert dual.contains((1, 0)) and dual.contains((0, 1)) and dual.contains((F(1, 2), F(1, 2)))
    assert not dual.contains((F(1, 2), 0))


lattice_entries = st.fractions(-4, 4, max_denominator=6)


@given(a=lattice_entries, b=lattice_entries, c=lattice_entries, d=lattice_entries)
def test_dual_lattice_properties(a, b, c, d):
    if a * d - b * c == 0:
        return
    lat = g.Lattice(((a, b), (c, d)))
    dual = s.dual_lattice(lat)
    assert s.same_lattice(s.dual_lattice(dual), lat)
    for gen in lat.basis:
        for gs in dual.basis:
            assert (gen[0] * gs[0] + gen[1] * gs[1]).denominator == 1


@pytest.mark.parametrize("a,b", [(1, 1), (1, 2), (3, F(1, 2))])
def test_rhombus_spectrum_is_dual_lattice(a, b):
    dual = s.dual_lattice(g.rhombus_lattice(a, b))
    radius = 4
    as_set = s.lattice_to_frequency_set(dual).truncate(radius).point_set()
    oracle = brute_lattice_points(dual.basis, -radius, radius, reach=40)
    assert as_set == oracle
    assert s.rhombus_spectrum(a, b).truncate(radius).point_set() == oracle


# --- level-N families ----------------------------------------------------


def test_level_offsets_two():
    assert s.level_offsets(2) == [0, F(1, 4), F(1, 2), F(3, 4), F(1, 16), F(5, 16), F(9, 16), F(13, 16)]


def test_main_spectrum_level_two_branches():
    f = s.main_spectrum(2)
    got = sorted((b.offset, b.scale) for b in f.branches)
    # hand expansion: lift (δ_j + n, ω_j + m) with ω_j = 4 δ_j mod 1, then dilate by 4
    deltas = [0, F(1, 4), F(1, 2), F(3, 4), F(1, 16), F(5, 16), F(9, 16), F(13, 16)]
    want = sorted(((4 * d, 4 * ((4 * d) % 1)), (F(4), F(4))) for d in deltas)
    assert got == want


def test_main_spectrum_errors_and_determinism():
    with pytest.raises(ValueError):
        s.main_spectrum(1)
    assert s.truncate(s.main_spectrum(3), 10).frequencies == s.truncate(s.main_spectrum(3), 10).frequencies


@pytest.mark.parametrize("N", [2, 3])
def test_main_spectrum_nesting_is_reported_false(N):
    # the level-N family is not a subset of the level-(N+1) family
    assert not s.subset_on_truncation(s.main_spectrum(N), s.main_spectrum(N + 1), 8)


def test_theorem_display_differs_from_pipeline():
    cmp = s.compare_on_truncation(s.main_spectrum(2), s.theorem_display_spectrum(2), 8)
    assert cmp["only_first"] > 0 and cmp["only_second"] > 0
