import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from riesz_forge import chains, geometry as g, gram
from riesz_forge import spectra as s

LO, HI = (2 - math.sqrt(2)) / 4, (2 + math.sqrt(2)) / 4


# --- complement chain ----------------------------------------------------


def test_octagon_chain_values():
    rec = chains.complement_chain(16, 16, 2, 2)
    assert [r.step for r in rec] == [1, 2, 3, 4, 5, 6]
    assert (rec[1].lower, rec[1].upper) == (14, 14)
    assert (rec[2].lower, rec[2].upper) == (2, 14)
    assert rec[2].system == "C'" and rec[2].domain == "D'"
    assert rec[3].lower is None and rec[3].upper == 14
    assert all(r.applicable for r in rec)
    assert all("guaranteed" in r.note or r.step != 2 for r in rec)


def test_bessel_only_specialisation():
    rec = chains.complement_chain(1, 1, 0, 0.3)
    assert rec[1].lower == pytest.approx(0.7) and rec[1].upper == 1
    assert not rec[2].applicable       # B_1 = 1 is not below A = 1


def test_degenerate_complement_halts():
    rec = chains.complement_chain(1, 1, 1, 1)
    assert rec[1].lower == 0
    assert not rec[0].applicable and not rec[2].applicable
    assert "vacuous" in rec[1].note


@pytest.mark.parametrize("args", [(1, 1, 0.5, 0.2), (0, 1, 0, 0), (2, 1, 0, 0), (1, 1, -0.1, 0)])
def test_chain_rejects_bad_inputs(args):
    with pytest.raises(ValueError):
        chains.complement_chain(*args)


positive = st.floats(0.01, 20, allow_nan=False)


@given(A=positive, dB=st.floats(0, 10), alpha=st.floats(0, 10), dbeta=st.floats(0, 10))
def test_chain_monotone_uppers(A, dB, alpha, dbeta):
    rec = chains.complement_chain(A, A + dB, alpha, alpha + dbeta)
    app = [r for r in rec if r.applicable and r.step >= 2]
    uppers = [r.upper for r in app]
    assert all(a >= b for a, b in zip(uppers, uppers[1:]))


@given(A=positive, dB=st.floats(0, 10), alpha=st.floats(0, 30), dbeta=st.floats(0, 10))
def test_remark_inequality(A, dB, alpha, dbeta):
    B = A + dB
    assume(alpha > B - A > 0)
    rec = chains.complement_chain(A, B, alpha, alpha + dbeta)
    for r in rec[2:]:
        if r.applicable and r.lower is not None:
            assert r.lower >= alpha - (B - A) - 1e-9


def test_sufficient_condition_examples():
    assert chains.sufficient_condition(16, 16, 2)
    assert not chains.sufficient_condition(1, 1, 1)
    assert chains.sufficient_condition(1, 1.5, 0.4)
    with pytest.raises(ValueError):
        chains.sufficient_condition(0, 1, 0.1)


@pytest.mark.xfail(strict=True, reason="B + beta < 2A does not force B_1 < A when alpha < B - A; "
                                       "counterexample A=1, B=1.5, alpha=0, beta=0.4")
def test_sufficient_condition_implies_applicability_literal():
    rec = chains.complement_chain(1, 1.5, 0, 0.4)
    assert chains.sufficient_condition(1, 1.5, 0.4)
    assert all(r.applicable for r in rec[:5])


@given(A=positive, dB=st.floats(0, 10), alpha=st.floats(0, 10), dbeta=st.floats(0, 10))
def test_sufficient_condition_with_alpha_clause(A, dB, alpha, dbeta):
    B, beta = A + dB, alpha + dbeta
    if chains.sufficient_condition(A, B, beta) and B - alpha < A:
        assert all(r.applicable for r in chains.complement_chain(A, B, alpha, beta)[:5])


# --- octagon -------------------------------------------------------------


def test_octagon_inputs_derived_from_geometry():
    i = chains.octagon_inputs()
    assert (i.A, i.B, i.alpha, i.beta) == (16, 16, 2, 2)
    # the square's orthogonal bound is its area, confirmed by a Gram section
    est = gram.section_bounds(g.square(4), s.grid(Fraction(1, 4)), 1)
    assert est.lower == pytest.approx(16, abs=1e-10) and est.upper == pytest.approx(16, abs=1e-10)
    # B(1,1) on the four corner triangles has the rhombus bound
    corners = g.union(g.octagon_corners())
    est = gram.section_bounds(corners, s.rhombus_spectrum(1, 1), 2)
    assert est.lower == pytest.approx(2, abs=1e-10) and est.upper == pytest.approx(2, abs=1e-10)


def test_octagon_construction():
    spec, bounds = chains.octagon_construction()
    assert (bounds.lower, bounds.upper) == (2, 14)
    assert bounds.provenance == "complement-chain"
    assert len(s.truncate(spec, 2)) == 248


def test_octagon_sections_lower_bound_and_nesting(octagon_rows):
    assert [r["section_size"] for r in octagon_rows] == [68, 248, 540]
    assert all(r["lower_ok"] for r in octagon_rows)
    assert all(r["nested"] for r in octagon_rows)


@pytest.mark.xfail(strict=True, reason="finite sections reach lambda_max = 16 > 14: the step-3 upper "
                                       "bound B_2 <= B_1 does not follow; see the decisions ledger")
@pytest.mark.parametrize("radius", [1, 2, 3, 4])
def test_octagon_chain_bounds_contain_sections(radius):
    _, bounds = chains.octagon_construction()
    est = gram.section_bounds(g.octagon(), s.octagon_spectrum(), radius)
    assert bounds.lower - 1e-6 <= est.lower and est.upper <= bounds.upper + 1e-6


@pytest.mark.parametrize("radius", [1, 2, 3, 4])
def test_octagon_lower_bound_holds_on_sections(radius):
    est = gram.section_bounds(g.octagon(), s.octagon_spectrum(), radius)
    assert est.lower >= 2 - 1e-6
    assert est.upper <= 16 + 1e-6     # Bessel bound inherited from the square


# --- uniformity ----------------------------------------------------------


def test_uniformity_levels_two_to_four():
    rep = chains.uniformity_study([2, 3, 4])
    assert rep.verdict and not rep.failing
    assert rep.alpha == pytest.approx(LO, abs=1e-9) and rep.beta == pytest.approx(HI, abs=1e-9)
    assert [r.symm_diff_exact for r in rep.rows] == [0.25, 0.125, 0.0625]
    assert all(r.measure_ok for r in rep.rows)
    # nesting is reported separately and does not hold
    assert not rep.nesting_verified and not rep.lemma_applicable


def test_uniformity_single_level():
    rep = chains.uniformity_study([2])
    assert rep.verdict and len(rep.rows) == 1


def test_uniformity_doctored_bounds():
    rep = chains.uniformity_study([2, 3], overrides={3: (LO - 0.01, HI)})
    assert not rep.verdict
    assert any(f.startswith("N=3") for f in rep.failing)


def test_uniformity_parallel_matches_serial():
    a = chains.uniformity_study([2, 3], jobs=2)
    b = chains.uniformity_study([2, 3], jobs=1)
    assert a == b


@pytest.mark.parametrize("levels", [[], [3, 2], [2, 2]])
def test_uniformity_rejects_bad_levels(levels):
    with pytest.raises(ValueError):
        chains.uniformity_study(levels)
