"""Level-N certificates for the chevron domain that tiles at level two.

For each level ``N``: the dilated approximant ``2^N D_N`` is a stack of unit
squares whose unrolling is ``J_N = ∪_{p ∈ P_N} [p, p+1)``.  With
``Δ_N = {2j/M} ∪ {2j/M + 1/(2M)}`` (``M = 2^{2N-1}``) the columns of
``Γ_N`` pair up by residue ``p mod M/2``; each pair spans a 2-dimensional
space orthogonal to all others, and the eigenvalues of ``Γ_N Γ_N*`` are
``M ± M|cos(πz/4)|`` with ``z = (p - p')/(M/2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import geometry, gram, lift, spectra
from .errors import CapExceeded
from .estimates import BoundsEstimate
from .gamma import ClusterPartition, GammaMatrix, build_gamma, cluster_bounds, frame_bounds

LIMIT_LOWER = (2 - math.sqrt(2)) / 4
LIMIT_UPPER = (2 + math.sqrt(2)) / 4
DEFAULT_CAP = 5
TOL = 1e-9
GRAM_TOL = 1e-6


def _check_level(N: int):
    if N < 2:
        raise ValueError("level must be at least 2")


def endpoints(N: int) -> list[int]:
    """``P_N = P_{N,1} ∪ P_{N,2}``: left endpoints of the unit intervals of ``J_N``."""
    _check_level(N)
    n = 2 ** N
    first = list(range(n * n // 4))
    upper_a, upper_b = [], []
    for k in range(n // 2):
        for l in range(n // 4):
            upper_a.append(n * n // 4 + n * (k + l + 1) + k)
            # n (k + l + 3/2) is an integer because n is even
            upper_b.append(n * n - n * (k + l + 1) - n // 2 + k)
    out = first + upper_a + upper_b
    if len(set(out)) != len(out):
        raise AssertionError("endpoint formulas produced duplicates")
    return out


def frequencies(N: int) -> list[Fraction]:
    return spectra.level_offsets(N)


@dataclass(frozen=True)
class ClusterCheck:
    pairs: tuple[tuple[int, int], ...]   # (p, p') with p > p', ordered by residue
    z: tuple[int, ...]
    max_cross: float                     # largest |<c_p, c_q>| across clusters
    max_within_error: float              # largest | |<c_p, c_p'>| - M|cos(πz/4)| |
    sizes_ok: bool
    z_ok: bool
    ok: bool


def column_clusters(N: int) -> list[list[int]]:
    """Column indices of ``Γ_N`` grouped by ``p mod M/2`` (residue order)."""
    P = endpoints(N)
    half = len(P) // 2
    groups: list[list[int]] = [[] for _ in range(half)]
    for idx, p in enumerate(P):
        groups[p % half].append(idx)
    return groups


def gamma_matrix(N: int) -> GammaMatrix:
    return build_gamma(frequencies(N), endpoints(N))


def verify_clusters(N: int, cap: int = DEFAULT_CAP, gamma: Optional[GammaMatrix] = None) -> ClusterCheck:
    if N > cap:
        raise CapExceeded(f"level {N} exceeds the cap {cap}")
    P = endpoints(N)
    M = len(P)
    g = gamma if gamma is not None else gamma_matrix(N)
    groups = column_clusters(N)
    sizes_ok = all(len(c) == 2 for c in groups)
    inner = np.abs(g.entries.conj().T @ g.entries)
    label = np.empty(M, dtype=int)
    for u, c in enumerate(groups):
        label[c] = u
    cross = label[:, None] != label[None, :]
    max_cross = float(inner[cross].max(initial=0.0))
    pairs, zs, errs = [], [], []
    for c in groups:
        if len(c) != 2:
            continue
        i, j = sorted(c, key=lambda t: P[t], reverse=True)
        diff = P[i] - P[j]
        z = Fraction(diff, M // 2)
        pairs.append((P[i], P[j]))
        zs.append(int(z) if z.denominator == 1 else -1)
        errs.append(abs(inner[i, j] - M * abs(math.cos(math.pi * float(z) / 4))))
    z_ok = all(z in (1, 2, 3) for z in zs)
    max_err = max(errs, default=0.0)
    # z = 2 clusters have inner product exactly 0, so the comparison is absolute in units of M
    ok = sizes_ok and z_ok and max_cross <= TOL * M and max_err <= TOL * M
    return ClusterCheck(tuple(pairs), tuple(zs), max_cross, float(max_err), sizes_ok, z_ok, bool(ok))


def formula_eigenvalues(N: int, z_values=None) -> list[float]:
    """``{M ± M|cos(πz_u/4)|}`` over the clusters, from residue arithmetic alone."""
    P = endpoints(N)
    M = len(P)
    if z_values is None:
        half = M // 2
        by_res: dict = {}
        for p in P:
            by_res.setdefault(p % half, []).append(p)
        z_values = [(max(c) - min(c)) // half for c in by_res.values()]
    out = []
    for z in z_values:
        c = M * abs(math.cos(math.pi * z / 4))
        out += [M - c, M + c]
    return sorted(out)


@dataclass(frozen=True)
class PipelineLevel:
    N: int
    M: int
    P: tuple[int, ...]
    deltas: tuple[Fraction, ...]
    clusters: Optional[ClusterCheck]
    bounds_exact: Optional[BoundsEstimate]
    bounds_formula: BoundsEstimate
    eigen_agreement: Optional[float]
    unscaled: BoundsEstimate
    unscaled_ok: bool
    endpoints_attained: bool
    compatibility_ok: bool
    gram: Optional[BoundsEstimate]
    gram_ok: Optional[bool]
    nesting_ok: Optional[bool]
    domain_nesting_ok: Optional[bool]
    mode: str = "exact"
    failures: tuple[str, ...] = ()
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def valid(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "N": self.N,
            "M": self.M,
            "mode": self.mode,
            "bounds_exact": [self.bounds_exact.lower, self.bounds_exact.upper] if self.bounds_exact else None,
            "bounds_formula": [self.bounds_formula.lower, self.bounds_formula.upper],
            "eigen_agreement": self.eigen_agreement,
            "unscaled": [self.unscaled.lower, self.unscaled.upper],
            "unscaled_ok": self.unscaled_ok,
            "endpoints_attained": self.endpoints_attained,
            "clusters_ok": self.clusters.ok if self.clusters else None,
            "z_values": list(self.clusters.z) if self.clusters else None,
            "compatibility_ok": self.compatibility_ok,
            "gram": [self.gram.lower, self.gram.upper] if self.gram else None,
            "gram_ok": self.gram_ok,
            "nesting_ok": self.nesting_ok,
            "domain_nesting_ok": self.domain_nesting_ok,
            "valid": self.valid,
            "failures": list(self.failures),
            "notes": list(self.notes),
        }


def pipeline_compatible(N: int, variant: str = "proof", omega_rule: str = "pipeline",
                        n_range: int = 2) -> bool:
    """Compatibility of every selected ``(λ, ω)`` with the rows of ``2^N D_N``."""
    stack = lift.stack_from_dyadic(geometry.dyadic_approximant(N))
    base = spectra.shifted_family(frequencies(N), 1)
    pairs = lift.family_pairs(base, spectra.level_omegas(N, omega_rule), n_range)
    return all(lift.compatibility_check(stack, lam, om, variant) for lam, om in pairs)


def spectrum_nesting(N: int, radius=4) -> bool:
    """Whether the level-N family lies inside the level-(N+1) family on a truncation."""
    return spectra.subset_on_truncation(spectra.main_spectrum(N), spectra.main_spectrum(N + 1), radius)


def domain_nesting(N: int) -> bool:
    """Whether ``R_{N,2} ⊂ R_{N+1,2}``: every square splits into four finer squares present."""
    coarse = geometry.dyadic_approximant(N)
    fine = geometry.dyadic_approximant(N + 1)
    n = 2 ** N
    present = {(int(x * 2 * n), int(y * 2 * n)) for x, y in fine.upper}
    return all((2 * int(x * n) + a, 2 * int(y * n) + b) in present
               for x, y in coarse.upper for a in (0, 1) for b in (0, 1))


def level_certificate(N: int, cap: int = DEFAULT_CAP, gram_radius=3, formula_only: bool = False,
                      check_nesting: bool = True, omega_rule: str = "pipeline") -> PipelineLevel:
    """Certify the level-N basis on ``D_N``; failures are recorded, not raised."""
    _check_level(N)
    if N > cap and not formula_only:
        raise CapExceeded(f"level {N} exceeds the cap {cap}; use the formula-only mode")
    P = endpoints(N)
    M = len(P)
    scale = 2 ** (2 * N)
    failures, notes = [], []

    formula = formula_eigenvalues(N)
    bounds_formula = BoundsEstimate(formula[0], formula[-1], "cluster-formula", size=M)
    if max(P) >= 2 ** (2 * N - 2):
        notes.append(f"endpoints reach {max(P)}, beyond 2^(2N-2) = {2 ** (2 * N - 2)}; "
                     "z is taken from the actual differences")

    exact = clusters = agreement = None
    mode = "formula-only" if formula_only or N > cap else "exact"
    if mode == "exact":
        g = gamma_matrix(N)
        clusters = verify_clusters(N, cap, g)
        if not clusters.ok:
            failures.append("clusters")
        report = frame_bounds(g, strict=False)
        if not report.nonsingular:
            failures.append("singular-gamma")
        exact = report.bounds
        dense = np.array(report.eigenvalues)
        agreement = float(np.max(np.abs(dense - np.array(formula))) / M)
        if agreement > TOL:
            failures.append("formula-agreement")
        # third route: per-cluster closed form on the actual columns
        part = ClusterPartition(tuple(tuple(c) for c in column_clusters(N)), 0.0)
        sub = cluster_bounds(g, part)
        if np.max(np.abs(np.array(sub.eigenvalues) - dense)) > TOL * M:
            failures.append("cluster-submatrix-agreement")
    ref = exact if exact is not None else bounds_formula
    unscaled = BoundsEstimate(ref.lower / scale, ref.upper / scale, ref.provenance, size=M)
    unscaled_ok = unscaled.lower >= LIMIT_LOWER - TOL and unscaled.upper <= LIMIT_UPPER + TOL
    attained = abs(unscaled.lower - LIMIT_LOWER) <= TOL and abs(unscaled.upper - LIMIT_UPPER) <= TOL
    if not unscaled_ok:
        failures.append("unscaled-bounds")

    compat = pipeline_compatible(N, omega_rule=omega_rule)
    if not compat:
        failures.append("compatibility")

    section = gram_ok = None
    if mode == "exact" and gram_radius is not None:
        d_n = geometry.dyadic_approximant(N).domain()
        section = gram.section_bounds(d_n, spectra.main_spectrum(N, omega_rule), gram_radius)
        gram_ok = (section.lower >= unscaled.lower - GRAM_TOL
                   and section.upper <= unscaled.upper + GRAM_TOL)
        if not gram_ok:
            failures.append("gram-section")

    nest = dom_nest = None
    if check_nesting:
        nest = spectrum_nesting(N)
        dom_nest = domain_nesting(N)
        if not nest:
            notes.append("level-N family is not contained in the level-(N+1) family")
        if not dom_nest:
            notes.append("R_{N,2} is not contained in R_{N+1,2}")

    return PipelineLevel(N, M, tuple(P), tuple(frequencies(N)), clusters, exact, bounds_formula,
                         agreement, unscaled, unscaled_ok, attained, compat, section, gram_ok,
                         nest, dom_nest, mode, tuple(failures), tuple(notes))
