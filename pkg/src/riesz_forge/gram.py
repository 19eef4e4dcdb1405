"""Fourier transforms of cells and Gram-matrix finite sections.

For a domain ``D`` and frequencies ``λ_1..λ_n`` the Gram matrix
``G[j,k] = ∫_D exp(2πi (λ_k - λ_j)·x) dx`` realises
``‖Σ a_j e_{λ_j}‖² = a* G a``; its extreme eigenvalues bound the Riesz
constants of the full system from inside.

Frequency differences are exact rationals.  Every phase ``exp(2πi t)`` and
every ``sin(π t)`` is evaluated after reducing ``t`` modulo one in integer
arithmetic, so full-period cancellations come out as exact zeros.
"""

from __future__ import annotations

import math
import os
import time
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import SectionTooLarge
from .estimates import BoundsEstimate
from .geometry import Interval, Rect, SignedCell, SignedDomain
from .rational import fmt, frac, point, scaled_float, scaled_mod1, to_numerators
from .spectra import FrequencySet, TruncatedSpectrum, truncate

DEFAULT_CAP = 4096
TAYLOR_SPREAD = 1e-3
_CHUNK = 1 << 20


def section_cap() -> int:
    value = os.environ.get("RIESZ_FORGE_CAP")
    return int(value) if value else DEFAULT_CAP


# ---------------------------------------------------------------------------
# elementary pieces (inputs are integer numerators over a common denominator)
# ---------------------------------------------------------------------------


def _expi(nums: np.ndarray, den: int, c: Fraction) -> np.ndarray:
    """``exp(2πi (nums/den) c)`` with exact reduction of the phase."""
    return np.exp(2j * np.pi * scaled_mod1(nums, den, c))


def _sinc(nums: np.ndarray, den: int, c: Fraction) -> np.ndarray:
    """``sinc(t) = sin(πt)/(πt)`` at ``t = (nums/den) c``; exact zeros at nonzero integers."""
    red = scaled_mod1(nums, den, c)
    t = scaled_float(nums, den, c)
    whole = np.rint(t - red)
    sign = np.where(np.mod(whole, 2) == 0, 1.0, -1.0)
    safe = np.where(t == 0, 1.0, t)
    return np.where(t == 0, 1.0, sign * np.sin(np.pi * red) / (np.pi * safe))


def _ft_interval(nums: np.ndarray, den: int, a: Fraction, b: Fraction) -> np.ndarray:
    """``∫_a^b exp(2πi ξ x) dx`` for ``ξ = nums / den``."""
    return float(b - a) * _expi(nums, den, (a + b) / 2) * _sinc(nums, den, b - a)


def _exp_dd2(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Second divided difference of ``exp`` at ``2πi·{0, p, q}``.

    Equals ``∫∫_{s,t≥0, s+t≤1} exp(2πi(ps + qt)) ds dt``.
    """
    w = np.sort(np.stack([np.zeros_like(p), p, q]), axis=0)
    w0, w1, w2 = w
    spread = w2 - w0
    out = np.empty(p.shape, dtype=np.complex128)

    small = spread < TAYLOR_SPREAD
    if np.any(~small):
        a0, a1, a2 = w0[~small], w1[~small], w2[~small]

        def first(x, y):  # exp[2πix, 2πiy] divided by 2πi
            return np.exp(1j * np.pi * (x + y)) * np.sinc(x - y)

        out[~small] = (first(a1, a2) - first(a0, a1)) / (2j * np.pi * (a2 - a0))
    if np.any(small):
        a = 2j * np.pi * p[small]
        b = 2j * np.pi * q[small]
        total = np.zeros(a.shape, dtype=np.complex128)
        for k in range(6):
            h = sum(a ** i * b ** (k - i) for i in range(k + 1))
            total += h / math.factorial(k + 2)
        out[small] = total
    return out


def ft_cells(cell: SignedCell, nums: np.ndarray, den: int) -> np.ndarray:
    """Unweighted transform ``∫_cell exp(2πi ξ·x) dx`` at ``ξ = nums / den`` (rows)."""
    s = cell.shape
    if isinstance(s, Interval):
        return _ft_interval(nums[:, 0], den, s.left, s.right)
    if isinstance(s, Rect):
        return (_ft_interval(nums[:, 0], den, s.x.left, s.x.right)
                * _ft_interval(nums[:, 1], den, s.y.left, s.y.right))
    (vx, vy), (lx, ly) = s.vertex, s.legs
    phase = np.exp(2j * np.pi * np.mod(scaled_mod1(nums[:, 0], den, vx)
                                       + scaled_mod1(nums[:, 1], den, vy), 1.0))
    p = scaled_float(nums[:, 0], den, lx)
    q = scaled_float(nums[:, 1], den, ly)
    return float(abs(lx * ly)) * phase * _exp_dd2(p, q)


def ft_domain(d: SignedDomain, nums: np.ndarray, den: int) -> np.ndarray:
    out = np.zeros(len(nums), dtype=np.complex128)
    for c in d.cells:
        out += c.weight * ft_cells(c, nums, den)
    return out


def ft_cell(cell: SignedCell, xi: Sequence) -> complex:
    """``∫_cell exp(2πi ξ·x) dx`` for a single rational frequency."""
    xi = point(xi) if isinstance(xi, (tuple, list)) else (frac(xi),)
    nums, den = to_numerators([xi])
    return complex(ft_cells(cell, nums, den)[0])


def ft(d: SignedDomain, xi: Sequence) -> complex:
    xi = point(xi) if isinstance(xi, (tuple, list)) else (frac(xi),)
    nums, den = to_numerators([xi])
    return complex(ft_domain(d, nums, den)[0])


# ---------------------------------------------------------------------------
# Gram sections
# ---------------------------------------------------------------------------


def gram_matrix(d: SignedDomain, spectrum: TruncatedSpectrum | Sequence) -> np.ndarray:
    """Hermitian Gram matrix; upper triangle evaluated, lower triangle mirrored."""
    freqs = list(spectrum)
    n = len(freqs)
    if n == 0:
        raise ValueError("empty spectrum")
    nums, den = to_numerators(freqs)
    if nums.shape[1] != d.dimension:
        raise ValueError("spectrum and domain dimensions differ")
    g = np.zeros((n, n), dtype=np.complex128)
    ju, ku = np.triu_indices(n, 1)
    for start in range(0, len(ju), _CHUNK):
        j, k = ju[start:start + _CHUNK], ku[start:start + _CHUNK]
        diffs = nums[k] - nums[j]
        # structured spectra repeat differences heavily
        uniq, inverse = np.unique(diffs, axis=0, return_inverse=True)
        g[j, k] = ft_domain(d, uniq, den)[inverse.ravel()]
    g = g + g.conj().T
    np.fill_diagonal(g, float(d.measure))
    return g


class GramSection:
    """Gram matrix of a truncated spectrum on a domain."""

    def __init__(self, domain: SignedDomain, spectrum: TruncatedSpectrum):
        if len(spectrum) == 0:
            raise ValueError("empty spectrum")
        self.domain = domain
        self.spectrum = spectrum
        self.matrix = gram_matrix(domain, spectrum)

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)


def gram_section(d: SignedDomain, spectrum: TruncatedSpectrum) -> GramSection:
    return GramSection(d, spectrum)


def _checked_truncation(F: FrequencySet, radius, cap: Optional[int]) -> TruncatedSpectrum:
    spec = truncate(F, radius)
    cap = section_cap() if cap is None else cap
    if len(spec) > cap:
        raise SectionTooLarge(f"section of size {len(spec)} exceeds the cap {cap}")
    if len(spec) == 0:
        raise ValueError("truncation is empty")
    return spec


def section_bounds(d: SignedDomain, F: FrequencySet, radius, cap: Optional[int] = None) -> BoundsEstimate:
    """Extreme eigenvalues of the radius-``radius`` Gram section (an inner estimate)."""
    spec = _checked_truncation(F, radius, cap)
    vals = gram_section(d, spec).eigenvalues()
    return BoundsEstimate(float(vals[0]), float(vals[-1]), "finite-section",
                          radius=fmt(frac(radius)), size=len(spec))


def section_table(d: SignedDomain, F: FrequencySet, radii: Sequence, cap: Optional[int] = None,
                  timing: bool = False) -> list[dict]:
    """Convergence rows ``(radius, section_size, lambda_min, lambda_max, runtime_ms)``."""
    rows = []
    for r in radii:
        t0 = time.perf_counter()
        est = section_bounds(d, F, r, cap)
        ms = (time.perf_counter() - t0) * 1e3
        rows.append({"radius": est.radius, "section_size": est.size,
                     "lambda_min": est.lower, "lambda_max": est.upper,
                     "runtime_ms": ms if timing else None})
    return rows


def random_quotient_test(d: SignedDomain, F: FrequencySet, radius, trials: int = 100,
                         seed: int = 0, vectors: Optional[np.ndarray] = None,
                         cap: Optional[int] = None) -> dict:
    """Extremes of the Rayleigh quotient ``a*Ga / ‖a‖²`` over random coefficients."""
    if trials < 1:
        raise ValueError("trials must be positive")
    g = gram_section(d, _checked_truncation(F, radius, cap)).matrix
    n = g.shape[0]
    if vectors is None:
        rng = np.random.default_rng(seed)
        vectors = rng.standard_normal((trials, n)) + 1j * rng.standard_normal((trials, n))
    vectors = np.atleast_2d(np.asarray(vectors, dtype=np.complex128))
    num = np.einsum("ti,ij,tj->t", vectors.conj(), g, vectors).real
    q = num / np.einsum("ti,ti->t", vectors.conj(), vectors).real
    return {"min": float(q.min()), "max": float(q.max()), "trials": int(len(q)), "size": n}
