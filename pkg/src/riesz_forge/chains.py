"""Bound propagation between complementary systems and domains.

Setting: ``N`` is a Riesz basis of ``L²(Ω)`` with bounds ``(A, B)``,
``C ⊂ N`` with complement ``C'``, and ``D ⊂ Ω`` with complement ``D'``.
Starting from frame bounds ``(α, β)`` of ``C`` on ``D`` the chain gives
guaranteed bounds for ``C'`` on ``D``, ``C'`` on ``D'``, ``C`` on ``D'`` and
``C`` on ``D``.  Every number reported is the guaranteed extreme value of the
corresponding inequality, not an optimal bound.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import geometry, gram, nonconvex, spectra
from .estimates import BoundsEstimate

TOL = 1e-9


@dataclass(frozen=True)
class ChainRecord:
    step: int
    system: str          # "C" or "C'"
    domain: str          # "D" or "D'"
    lower: Optional[float]
    upper: Optional[float]
    applicable: bool
    note: str = ""

    def as_dict(self) -> dict:
        return {"step": self.step, "system": self.system, "domain": self.domain,
                "lower": self.lower, "upper": self.upper,
                "applicable": self.applicable, "note": self.note}


def complement_chain(A: float, B: float, alpha: float, beta: float) -> list[ChainRecord]:
    """Records for steps 1-6; applicability propagates along the chain."""
    if not (0 <= alpha <= beta):
        raise ValueError("need 0 <= alpha <= beta")
    if not (0 < A <= B):
        raise ValueError("need 0 < A <= B")
    ok1 = beta < A
    rec = [ChainRecord(1, "C", "D", alpha, beta, ok1,
                       "requires beta < A" + ("" if ok1 else " (fails)"))]

    a1, b1 = A - beta, B - alpha
    note = "guaranteed, not optimal"
    if a1 <= 0:
        note += "; lower bound A - beta is vacuous"
    rec.append(ChainRecord(2, "C'", "D", a1, b1, ok1, note))

    ok3 = ok1 and b1 < A
    a2, b2 = A - b1, b1
    rec.append(ChainRecord(3, "C'", "D'", a2, b2, ok3,
                           "Riesz sequence; requires B_1 < A" + ("" if b1 < A else " (fails)")))

    b3 = b2
    rec.append(ChainRecord(4, "C'", "D'", None, b3, ok3, "Bessel bound only"))

    ok5 = ok3 and b3 < A
    a4, b4 = A - b3, b3
    rec.append(ChainRecord(5, "C", "D'", a4, b4, ok5,
                           "frame; requires B_3 < A" + ("" if b3 < A else " (fails)")))

    ok6 = ok5 and b4 < A
    a5, b5 = A - b4, b4
    rec.append(ChainRecord(6, "C", "D", a5, b5, ok6,
                           "Riesz sequence; requires B_4 < A" + ("" if b4 < A else " (fails)")))
    return rec


def sufficient_condition(A: float, B: float, beta: float) -> bool:
    """``B + β < 2A``."""
    if min(A, B) <= 0 or beta < 0:
        raise ValueError("inputs must be positive")
    return B + beta < 2 * A


# ---------------------------------------------------------------------------
# octagon
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OctagonInputs:
    A: Fraction      # bound of (Z/4)^2 on [0,4]^2
    B: Fraction
    alpha: Fraction  # bound of B(1,1) on the corner triangles
    beta: Fraction


def octagon_inputs() -> OctagonInputs:
    """Chain inputs derived from the geometry rather than typed in.

    The square ``[0,4]^2`` tiles with ``4Z^2``, so ``(Z/4)^2`` is orthogonal
    with bound equal to its area.  The corner triangles reassemble into the
    rhombus ``R_{1,1}`` (checked exactly), on which ``B(1,1)`` is orthogonal
    with bound equal to its area.
    """
    square = geometry.square(4)
    moved = geometry.cut_translate(geometry.octagon_corners(), geometry.OCTAGON_CORNER_SHIFTS)
    if geometry.symm_diff_exact(moved, geometry.rhombus(1, 1)) != 0:
        raise AssertionError("corner triangles do not reassemble into the rhombus")
    return OctagonInputs(square.measure, square.measure, moved.measure, moved.measure)


def octagon_chain() -> list[ChainRecord]:
    i = octagon_inputs()
    return complement_chain(float(i.A), float(i.B), float(i.alpha), float(i.beta))


def octagon_construction() -> tuple[spectra.FrequencySet, BoundsEstimate]:
    """``(Z/4)^2 \\ B(1,1)`` on the octagon with the chain's step-3 bounds."""
    step3 = octagon_chain()[2]
    if not step3.applicable:
        raise AssertionError("chain does not reach the Riesz-sequence step")
    bounds = BoundsEstimate(step3.lower, step3.upper, "complement-chain",
                            notes=("guaranteed, not optimal",))
    return spectra.octagon_spectrum(), bounds


def octagon_sections(radii: Sequence, cap: Optional[int] = None, timing: bool = False) -> list[dict]:
    """Finite-section rows for the octagon basis, flagged against the chain bounds."""
    spec, bounds = octagon_construction()
    rows = gram.section_table(geometry.octagon(), spec, radii, cap, timing)
    prev = None
    for row in rows:
        row["chain_lower"], row["chain_upper"] = bounds.lower, bounds.upper
        row["lower_ok"] = row["lambda_min"] >= bounds.lower - 1e-6
        row["upper_ok"] = row["lambda_max"] <= bounds.upper + 1e-6
        row["nested"] = prev is None or (row["lambda_min"] <= prev["lambda_min"] + TOL
                                         and row["lambda_max"] >= prev["lambda_max"] - TOL)
        prev = row
    return rows


# ---------------------------------------------------------------------------
# uniformity across levels
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UniformityRow:
    N: int
    A_N: float
    B_N: float
    nested: bool            # level-N family inside the level-(N+1) family
    domain_nested: bool     # R_{N,2} inside R_{N+1,2}
    symm_diff: float        # sampled |D Δ D_N|
    symm_diff_exact: float
    measure_ok: bool
    bounds_ok: bool

    def as_dict(self) -> dict:
        return {"N": self.N, "A_N": self.A_N, "B_N": self.B_N, "nested": self.nested,
                "domain_nested": self.domain_nested, "symmdiff": self.symm_diff,
                "symmdiff_exact": self.symm_diff_exact, "measure_ok": self.measure_ok,
                "bounds_ok": self.bounds_ok}


@dataclass(frozen=True)
class UniformityReport:
    rows: tuple[UniformityRow, ...]
    alpha: float
    beta: float
    verdict: bool
    failing: tuple[str, ...]
    nesting_verified: bool
    lemma_applicable: bool

    def as_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "verdict": self.verdict,
                "failing": list(self.failing), "nesting_verified": self.nesting_verified,
                "lemma_applicable": self.lemma_applicable,
                "rows": [r.as_dict() for r in self.rows]}


def _level_row(N: int, bounds=None, grid: int = 512) -> UniformityRow:
    if bounds is None:
        cert = nonconvex.level_certificate(N, gram_radius=None, check_nesting=False)
        bounds = (cert.unscaled.lower, cert.unscaled.upper)
    a, b = bounds
    d = geometry.figure3_domain()
    d_n = geometry.dyadic_approximant(N).domain()
    return UniformityRow(
        N, float(a), float(b),
        nonconvex.spectrum_nesting(N), nonconvex.domain_nesting(N),
        geometry.symm_diff_measure(d, d_n, grid).value,
        float(geometry.symm_diff_exact(d, d_n)),
        d_n.measure == Fraction(1, 2),
        a >= nonconvex.LIMIT_LOWER - TOL and b <= nonconvex.LIMIT_UPPER + TOL,
    )


def _row_task(args):
    return _level_row(*args)


def uniformity_study(levels: Sequence[int], jobs: int = 1, overrides: Optional[dict] = None,
                     grid: int = 512) -> UniformityReport:
    """Check the uniform-bound hypotheses at finitely many levels.

    The verdict requires every level to have bounds inside
    ``[(2-√2)/4, (2+√2)/4]``, ``|D_N| = 1/2`` and strictly decreasing
    ``|D Δ D_N|``.  Nesting of the families and of the domains is reported
    separately (``nesting_verified``); the limiting argument needs it, so
    ``lemma_applicable`` is the verdict together with nesting.
    """
    levels = list(levels)
    if not levels or levels != sorted(set(levels)):
        raise ValueError("levels must be nonempty and strictly increasing")
    overrides = overrides or {}
    tasks = [(N, overrides.get(N), grid) for N in levels]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_row_task, tasks))
    else:
        rows = [_row_task(t) for t in tasks]

    failing = []
    for r in rows:
        if not r.bounds_ok:
            failing.append(f"N={r.N}: bounds ({r.A_N:.17g}, {r.B_N:.17g}) outside the uniform range")
        if not r.measure_ok:
            failing.append(f"N={r.N}: |D_N| != 1/2")
    for r0, r1 in zip(rows, rows[1:]):
        if not r1.symm_diff_exact < r0.symm_diff_exact:
            failing.append(f"N={r1.N}: symmetric difference not decreasing")
    verdict = not failing
    nested = all(r.nested and r.domain_nested for r in rows)
    return UniformityReport(tuple(rows), min(r.A_N for r in rows), max(r.B_N for r in rows),
                            verdict, tuple(failing), nested, verdict and nested)
