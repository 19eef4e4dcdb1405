"""The unimodular matrix ``Γ_jk = exp(2πi <δ_j, p_k>)`` and its spectral analysis.

For a union of unit cells at integer positions ``p_k`` and the family
``∪_j (δ_j + Z^d)``, the optimal Riesz bounds are the extreme eigenvalues of
``ΓΓ*``.  Phases are reduced modulo one in exact integer arithmetic before
exponentiation, so large vertices cost no accuracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import AngleConditionViolated, SingularGamma
from .estimates import BoundsEstimate
from .rational import frac, frac_mod1, point, to_numerators

SINGULAR_RTOL = 1e-12
ANGLE_TOL = 1e-9


def _as_points(values) -> list[tuple[Fraction, ...]]:
    return [point(v) if isinstance(v, (tuple, list)) else (frac(v),) for v in values]


@dataclass(frozen=True, eq=False)
class GammaMatrix:
    entries: np.ndarray
    offsets: tuple
    vertices: tuple

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def gram(self) -> np.ndarray:
        """``ΓΓ*`` (Hermitian by construction)."""
        h = self.entries @ self.entries.conj().T
        return (h + h.conj().T) / 2


def phase_matrix(offsets, vertices) -> np.ndarray:
    """``<δ_j, p_k> mod 1`` as floats, reduced exactly."""
    deltas, pts = _as_points(offsets), _as_points(vertices)
    if len({len(d) for d in deltas + pts}) != 1:
        raise ValueError("offsets and vertices must share a dimension")
    kd, qd = to_numerators(deltas)
    kp, qp = to_numerators(pts)
    if kd.dtype != object and kp.dtype != object:
        peak = int(np.abs(kd).max(initial=0)) * int(np.abs(kp).max(initial=0)) * kd.shape[1]
        if peak >= 2**62:
            kd, kp = kd.astype(object), kp.astype(object)
    num = (kd @ kp.T) % (qd * qp)
    return num.astype(np.float64) / (qd * qp)


def build_gamma(offsets: Sequence, vertices: Sequence) -> GammaMatrix:
    if len(offsets) != len(vertices):
        raise ValueError(f"size mismatch: {len(offsets)} offsets, {len(vertices)} vertices")
    if not offsets:
        raise ValueError("empty offset list")
    entries = np.exp(2j * np.pi * phase_matrix(offsets, vertices))
    return GammaMatrix(entries, tuple(_as_points(offsets)), tuple(_as_points(vertices)))


@dataclass(frozen=True)
class ClusterPartition:
    clusters: tuple[tuple[int, ...], ...]
    alpha: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "clusters", tuple(tuple(c) for c in self.clusters))
        flat = [i for c in self.clusters for i in c]
        if len(set(flat)) != len(flat):
            raise ValueError("clusters overlap")
        if any(len(c) == 0 for c in self.clusters):
            raise ValueError("empty cluster")

    def covers(self, n: int) -> bool:
        return sorted(i for c in self.clusters for i in c) == list(range(n))

    def labels(self, n: int) -> list[int]:
        lab = [-1] * n
        for u, c in enumerate(self.clusters):
            for i in c:
                lab[i] = u
        return lab


@dataclass(frozen=True)
class GammaReport:
    """Eigen-analysis of ``ΓΓ*``.

    ``eigenvalues`` are the eigenvalues of ΓΓ*, i.e. squared singular values (frame bounds);
    ``sigma = sqrt(eigenvalues)`` are the standard singular values of Γ.
    """

    bounds: BoundsEstimate
    eigenvalues: tuple[float, ...]
    cluster_eigenvalues: tuple[float, ...] = ()
    cluster_ids: tuple[int, ...] = ()
    nonsingular: bool = True
    min_cluster_angle: Optional[float] = None

    @property
    def sigma(self) -> tuple[float, ...]:
        return tuple(math.sqrt(max(v, 0.0)) for v in self.eigenvalues)

    def csv_rows(self) -> list[tuple]:
        """``(index, lambda, sigma, cluster_id)`` rows in eigenvalue order."""
        ids = self.cluster_ids or ("",) * len(self.eigenvalues)
        return [(i, lam, s, cid) for i, (lam, s, cid) in
                enumerate(zip(self.eigenvalues, self.sigma, ids))]


def frame_bounds(gamma: GammaMatrix, strict: bool = True) -> GammaReport:
    """Extreme eigenvalues of ``ΓΓ*``; raises :class:`SingularGamma` if ``strict``."""
    vals = np.linalg.eigvalsh(gamma.gram())
    vals = np.sort(vals)
    lo, hi = float(vals[0]), float(vals[-1])
    nonsingular = lo > SINGULAR_RTOL * gamma.size
    if not nonsingular and strict:
        raise SingularGamma(f"lambda_min = {lo:.3e} <= {SINGULAR_RTOL:g} * M")
    bounds = BoundsEstimate(max(lo, 0.0), hi, "exact-gamma", size=gamma.size)
    return GammaReport(bounds, tuple(float(v) for v in vals), nonsingular=nonsingular)


def _centred(q: Fraction) -> float:
    r = frac_mod1(q)
    return float(r - 1 if r > Fraction(1, 2) else r)


def node_inner_product(a, a_prime, delta, m: int) -> float:
    """``|Σ_{j<m} exp(2πi (a - a') δ j)|`` via the sine ratio."""
    if m < 1:
        raise ValueError("m must be positive")
    t = frac(delta) * (frac(a) - frac(a_prime))
    if t.denominator == 1:
        return float(m)
    # |sin(π x)| has period one and is even, so reduce exactly into [-1/2, 1/2]
    # where sin is well conditioned
    return abs(math.sin(math.pi * _centred(m * t)) / math.sin(math.pi * _centred(t)))


def _orthonormal(block: np.ndarray) -> np.ndarray:
    u, s, _ = np.linalg.svd(block, full_matrices=False)
    rank = int(np.sum(s > s[0] * 1e-12)) if s.size and s[0] > 0 else 0
    return u[:, :rank]


def min_angle(gamma: GammaMatrix, ku: Sequence[int], kv: Sequence[int]) -> float:
    """Smallest principal angle (radians) between two column spans."""
    if not ku or not kv:
        raise ValueError("empty cluster")
    if set(ku) & set(kv):
        raise ValueError("clusters must be disjoint")
    qu = _orthonormal(gamma.entries[:, list(ku)])
    qv = _orthonormal(gamma.entries[:, list(kv)])
    cosines = np.linalg.svd(qu.conj().T @ qv, compute_uv=False)
    return float(np.arccos(np.clip(cosines.max(initial=0.0), 0.0, 1.0)))


def _pairwise_min_angle(gamma: GammaMatrix, clusters) -> float:
    """Smallest principal angle over all cluster pairs (batched when ranks agree)."""
    bases = [_orthonormal(gamma.entries[:, list(c)]) for c in clusters]
    ranks = {b.shape[1] for b in bases}
    if len(clusters) < 2:
        return math.pi / 2
    if len(ranks) != 1:
        return min(min_angle(gamma, clusters[u], clusters[v])
                   for u in range(len(clusters)) for v in range(u + 1, len(clusters)))
    r = ranks.pop()
    k = len(bases)
    q = np.concatenate(bases, axis=1)
    blocks = (q.conj().T @ q).reshape(k, r, k, r).transpose(0, 2, 1, 3)
    cosines = np.linalg.svd(blocks, compute_uv=False).max(axis=-1)
    np.fill_diagonal(cosines, 0.0)
    return float(np.arccos(np.clip(cosines.max(), 0.0, 1.0)))


def cluster_eigenvalues(gamma: GammaMatrix, cluster: Sequence[int]) -> list[float]:
    """Eigenvalues ``σ̃²`` of ``Γ_K* Γ_K`` for one column cluster.

    One- and two-column clusters use closed forms; for unimodular columns the
    two-column case is ``M ± |<c_p, c_p'>|``.
    """
    sub = gamma.entries[:, list(cluster)]
    norms = np.einsum("ij,ij->j", sub.conj(), sub).real
    if len(cluster) == 1:
        return [float(norms[0])]
    if len(cluster) == 2:
        c = abs(np.vdot(sub[:, 0], sub[:, 1]))
        mid, half = (norms[0] + norms[1]) / 2, (norms[0] - norms[1]) / 2
        r = math.hypot(half, c)
        return [float(mid - r), float(mid + r)]
    return sorted(float(v) for v in np.linalg.eigvalsh(sub.conj().T @ sub))


def cluster_bounds(gamma: GammaMatrix, part: ClusterPartition) -> GammaReport:
    """Bounds from per-cluster spectra when clusters are nearly orthogonal.

    With all pairwise cluster angles at least ``π/2 - α`` and ``α ≤ 1/N``
    (``N`` rows), every eigenvalue of ``ΓΓ*`` lies within a factor
    ``1 ∓ Nα`` of the matching cluster eigenvalue.
    """
    n = gamma.size
    if not part.covers(n):
        raise ValueError("partition does not cover the columns")
    if not 0 <= part.alpha <= 1 / n:
        raise ValueError("alpha must lie in [0, 1/N]")
    worst = _pairwise_min_angle(gamma, part.clusters)
    if worst < math.pi / 2 - part.alpha - ANGLE_TOL:
        raise AngleConditionViolated(
            f"cluster angle {worst:.6g} below pi/2 - alpha = {math.pi / 2 - part.alpha:.6g}")
    tagged = sorted((lam, u) for u, c in enumerate(part.clusters)
                    for lam in cluster_eigenvalues(gamma, c))
    lams = tuple(t[0] for t in tagged)
    shrink, grow = 1 - n * part.alpha, 1 + n * part.alpha
    bounds = BoundsEstimate(max(lams[0] * shrink, 0.0), lams[-1] * grow, "cluster-formula", size=n)
    return GammaReport(bounds, lams, lams, tuple(t[1] for t in tagged),
                       nonsingular=bounds.lower > SINGULAR_RTOL * n, min_cluster_angle=worst)
