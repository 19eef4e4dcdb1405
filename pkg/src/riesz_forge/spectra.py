"""Structured frequency sets.

A :class:`FrequencySet` is a finite union of branches ``offset + scale * Z^d``
(diagonal scale), each optionally thinned by a residue filter on its integer
index.  This covers shifted integer families, Fuglede dual-lattice spectra,
the octagon difference set and the level-N families of the chevron
construction, and keeps membership exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DuplicateOffsets, NotASubset
from .geometry import Lattice, _inverse
from .rational import Point, frac, frac_gcd, frac_mod1, lcm_all, point


@dataclass(frozen=True)
class Exclusion:
    """Drop index vectors ``n`` with ``n mod modulus`` in ``residues``."""

    modulus: int
    residues: frozenset

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        res = frozenset(tuple(int(r) % self.modulus for r in rr) for rr in self.residues)
        object.__setattr__(self, "residues", res)

    def excludes(self, n: Sequence[int]) -> bool:
        return tuple(int(v) % self.modulus for v in n) in self.residues

    def refine(self, modulus: int) -> "Exclusion":
        """Same filter expressed with a multiple of the modulus."""
        if modulus % self.modulus:
            raise ValueError("new modulus must be a multiple")
        if not self.residues:
            return Exclusion(modulus, frozenset())
        dim = len(next(iter(self.residues)))
        res = {r for r in product(range(modulus), repeat=dim)
               if tuple(v % self.modulus for v in r) in self.residues}
        return Exclusion(modulus, frozenset(res))


@dataclass(frozen=True)
class Branch:
    offset: Point
    scale: Point
    exclude: Optional[Exclusion] = None

    def __post_init__(self):
        scale = point(self.scale)
        if any(s <= 0 for s in scale):
            raise ValueError("branch scale must be positive")
        off = tuple(o - s * math.floor(o / s) for o, s in zip(point(self.offset), scale))
        if len(off) != len(scale):
            raise ValueError("offset and scale dimensions differ")
        object.__setattr__(self, "offset", off)
        object.__setattr__(self, "scale", scale)

    @property
    def dimension(self) -> int:
        return len(self.scale)

    def index(self, p: Point) -> Optional[tuple[int, ...]]:
        """Integer index of ``p`` in this branch, or None."""
        n = [(pi - o) / s for pi, o, s in zip(p, self.offset, self.scale)]
        if any(v.denominator != 1 for v in n):
            return None
        return tuple(int(v) for v in n)

    def contains(self, p: Point) -> bool:
        n = self.index(p)
        return n is not None and not (self.exclude and self.exclude.excludes(n))

    def points_in_box(self, radius: Fraction) -> list[Point]:
        ranges = [range(math.ceil((-radius - o) / s), math.floor((radius - o) / s) + 1)
                  for o, s in zip(self.offset, self.scale)]
        out = []
        for n in product(*ranges):
            if self.exclude and self.exclude.excludes(n):
                continue
            out.append(tuple(o + s * k for o, s, k in zip(self.offset, self.scale, n)))
        return out


def _axis_meet(o1, s1, o2, s2) -> Optional[tuple[int, int]]:
    """Indices ``n1`` with ``o1 + s1 n1`` in ``o2 + s2 Z``: ``(c, r)`` meaning ``n1 ≡ c mod r``."""
    g = frac_gcd(s1, s2)
    diff = o2 - o1
    if (diff / g).denominator != 1:
        return None
    r = s2 / g
    assert r.denominator == 1
    r = int(r)
    # solve s1 n1 ≡ diff (mod s2) by scanning the r residues
    for c in range(r):
        if ((o1 + s1 * c - o2) / s2).denominator == 1:
            return c, r
    raise AssertionError("unreachable: solvable congruence without solution")


def _branches_meet(b1: Branch, b2: Branch) -> Optional[list[tuple[int, int]]]:
    meets = [_axis_meet(o1, s1, o2, s2)
             for o1, s1, o2, s2 in zip(b1.offset, b1.scale, b2.offset, b2.scale)]
    return None if any(m is None for m in meets) else meets


@dataclass(frozen=True)
class TruncatedSpectrum:
    """Frequencies with max-norm at most ``radius``, in canonical order."""

    frequencies: tuple[Point, ...]
    radius: Fraction
    branch_ids: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if len(set(self.frequencies)) != len(self.frequencies):
            raise ValueError("duplicate frequencies in truncation")

    def __len__(self) -> int:
        return len(self.frequencies)

    def __iter__(self):
        return iter(self.frequencies)

    @property
    def dimension(self) -> int:
        return len(self.frequencies[0]) if self.frequencies else 0

    def as_array(self) -> np.ndarray:
        return np.array([[float(c) for c in p] for p in self.frequencies], dtype=np.float64)

    def point_set(self) -> frozenset:
        return frozenset(self.frequencies)


def _order_key(p: Point):
    return (max(abs(c) for c in p), p)


@dataclass(frozen=True)
class FrequencySet:
    dimension: int
    branches: tuple[Branch, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(self.branches))
        if self.dimension not in (1, 2):
            raise ValueError("dimension must be 1 or 2")
        if any(b.dimension != self.dimension for b in self.branches):
            raise ValueError("branch dimension mismatch")
        self._check_disjoint()

    def _check_disjoint(self):
        by_scale: dict = {}
        for b in self.branches:
            by_scale.setdefault(b.scale, []).append(b)
        for group in by_scale.values():
            plain = [b.offset for b in group if b.exclude is None]
            if len(set(plain)) != len(plain):
                raise DuplicateOffsets("two branches share an offset")
        # branches of different scale, or carrying filters, need the exact test
        mixed = [b for b in self.branches if b.exclude is not None or len(by_scale) > 1]
        for i in range(len(mixed)):
            for j in range(i + 1, len(mixed)):
                meets = _branches_meet(mixed[i], mixed[j])
                if meets is not None and self._filtered_overlap(mixed[i], mixed[j], meets):
                    raise DuplicateOffsets("branches intersect")

    @staticmethod
    def _filtered_overlap(b1: Branch, b2: Branch, meets) -> bool:
        if b1.exclude is None and b2.exclude is None:
            return True
        mod = lcm_all(b.exclude.modulus for b in (b1, b2) if b.exclude)
        # the common points repeat with this period, so one period decides
        period = max(s * r for s, (_, r) in zip(b1.scale, meets)) * mod
        return any(b2.contains(p) for p in b1.points_in_box(2 * period))

    def contains(self, p: Sequence) -> bool:
        p = point(p)
        if len(p) != self.dimension:
            raise ValueError("point has wrong dimension")
        return any(b.contains(p) for b in self.branches)

    def truncate(self, radius) -> TruncatedSpectrum:
        return truncate(self, radius)

    def with_name(self, name: str) -> "FrequencySet":
        return FrequencySet(self.dimension, self.branches, name)


def shifted_family(offsets: Iterable, d: int = 1, scale=1) -> FrequencySet:
    """``∪_j (δ_j + scale * Z^d)``; offsets must be distinct modulo the grid."""
    pts = []
    for o in offsets:
        o = point(o) if isinstance(o, (tuple, list)) else (frac(o),)
        if len(o) != d:
            raise ValueError("offset has wrong dimension")
        pts.append(o)
    sc = (frac(scale),) * d
    reduced = [tuple(frac_mod1(c / s) for c, s in zip(o, sc)) for o in pts]
    if len(set(reduced)) != len(reduced):
        raise DuplicateOffsets("offsets are not distinct modulo the integer grid")
    return FrequencySet(d, tuple(Branch(o, sc) for o in pts))


def integer_grid(d: int = 1) -> FrequencySet:
    return shifted_family([(0,) * d], d).with_name(f"Z^{d}")


def grid(step, d: int = 2) -> FrequencySet:
    return shifted_family([(0,) * d], d, scale=step)


def union(f1: FrequencySet, f2: FrequencySet) -> FrequencySet:
    if f1.dimension != f2.dimension:
        raise ValueError("dimension mismatch")
    return FrequencySet(f1.dimension, f1.branches + f2.branches)


def dilate(f: FrequencySet, rho) -> FrequencySet:
    """Image of ``f`` under ``ξ -> rho ξ``."""
    rho = frac(rho)
    if rho <= 0:
        raise ValueError("dilation must be positive")
    return FrequencySet(f.dimension, tuple(
        Branch(tuple(rho * o for o in b.offset), tuple(rho * s for s in b.scale), b.exclude)
        for b in f.branches))


def set_difference(f1: FrequencySet, f2: FrequencySet, check_radius=None) -> FrequencySet:
    """``f1 \\ f2`` as residue filters on the branches of ``f1``."""
    if f1.dimension != f2.dimension:
        raise ValueError("dimension mismatch")
    if any(b.exclude is not None for b in f2.branches):
        raise ValueError("subtrahend branches must be unfiltered")
    if not f2.branches:
        return f1
    if check_radius is None:
        check_radius = 2 * max(max(b.scale) for b in f1.branches + f2.branches)
    for p in truncate(f2, check_radius):
        if not f1.contains(p):
            raise NotASubset(f"point {tuple(str(c) for c in p)} is not in the first set")
    out = []
    for b1 in f1.branches:
        meets = [m for m in (_branches_meet(b1, b2) for b2 in f2.branches) if m is not None]
        if not meets:
            out.append(b1)
            continue
        mod = lcm_all([r for m in meets for _, r in m] + ([b1.exclude.modulus] if b1.exclude else []))
        excl = set(b1.exclude.refine(mod).residues) if b1.exclude else set()
        for m in meets:
            axes = [[c + r * t for t in range(mod // r)] for c, r in m]
            excl.update(product(*axes))
        out.append(Branch(b1.offset, b1.scale, Exclusion(mod, frozenset(excl))))
    return FrequencySet(f1.dimension, tuple(out))


def truncate(f: FrequencySet, radius) -> TruncatedSpectrum:
    """All members with max-norm ≤ radius, ordered by shell then lexicographically."""
    radius = frac(radius)
    if radius <= 0:
        raise ValueError("radius must be positive")
    tagged = [(p, i) for i, b in enumerate(f.branches) for p in b.points_in_box(radius)]
    tagged.sort(key=lambda t: (_order_key(t[0]), t[1]))
    return TruncatedSpectrum(tuple(p for p, _ in tagged), radius, tuple(i for _, i in tagged))


def subset_on_truncation(f1: FrequencySet, f2: FrequencySet, radius) -> bool:
    return all(f2.contains(p) for p in truncate(f1, radius))


# ---------------------------------------------------------------------------
# lattices
# ---------------------------------------------------------------------------


def dual_lattice(lat: Lattice) -> Lattice:
    """``{y : <x, y> ∈ Z for all x ∈ lat}``; basis rows are the columns of ``G^{-1}``."""
    inv = _inverse(lat.basis)
    d = lat.dimension
    return Lattice(tuple(tuple(inv[i][j] for i in range(d)) for j in range(d)))


def same_lattice(l1: Lattice, l2: Lattice) -> bool:
    return all(l2.contains(g) for g in l1.basis) and all(l1.contains(g) for g in l2.basis)


def _hnf2(rows: list[list[int]]) -> tuple[int, int, int]:
    """Upper-triangular row Hermite form ``[[h11, h12], [0, h22]]`` of an integer 2x2 basis."""
    (a, b), (c, d) = rows
    # Euclid on the first column
    while c != 0:
        q = a // c
        a, b, c, d = c, d, a - q * c, b - q * d
    if a < 0:
        a, b = -a, -b
    if d < 0:
        d = -d
    b %= d
    return a, b, d


def lattice_to_frequency_set(lat: Lattice) -> FrequencySet:
    """Write a lattice as cosets of its largest axis-aligned sublattice."""
    q = lcm_all(c.denominator for row in lat.basis for c in row)
    if lat.dimension == 1:
        s = abs(lat.basis[0][0])
        return FrequencySet(1, (Branch((Fraction(0),), (s,)),))
    ints = [[int(c * q) for c in row] for row in lat.basis]
    h11, h12, h22 = _hnf2(ints)
    s1 = h11 * h22 // math.gcd(h12, h22)
    branches = []
    for k in range(s1 // h11):
        off = (Fraction(k * h11, q), Fraction((k * h12) % h22, q))
        branches.append(Branch(off, (Fraction(s1, q), Fraction(h22, q))))
    return FrequencySet(2, tuple(branches))


def rhombus_spectrum(a=1, b=1) -> FrequencySet:
    """``B(a,b) = {(n/a + j/(2a), m/b + j/(2b)) : j ∈ {0,1}}``."""
    a, b = frac(a), frac(b)
    return FrequencySet(2, tuple(
        Branch((j / (2 * a), j / (2 * b)), (1 / a, 1 / b)) for j in (0, 1)), f"B({a},{b})")


def octagon_spectrum() -> FrequencySet:
    """``B_1 \\ B(1,1)`` with ``B_1 = (Z/4)^2``."""
    return set_difference(grid(Fraction(1, 4)), rhombus_spectrum(1, 1)).with_name("B1\\B(1,1)")


# ---------------------------------------------------------------------------
# level-N families of the chevron construction
# ---------------------------------------------------------------------------


def level_offsets(N: int) -> list[Fraction]:
    """``Δ_N = {2j/M} ∪ {2j/M + 1/(2M)}``, ``M = 2^{2N-1}``, ``j < M/2``."""
    if N < 2:
        raise ValueError("level must be at least 2")
    M = 2 ** (2 * N - 1)
    first = [Fraction(2 * j, M) for j in range(M // 2)]
    return first + [f + Fraction(1, 2 * M) for f in first]


OMEGA_RULES = ("pipeline", "identity")


def level_omegas(N: int, rule: str = "pipeline") -> list[Fraction]:
    """Vertical shifts paired with ``level_offsets(N)``.

    ``pipeline`` takes ``ω_j = 2^N δ_j mod 1``, the value forced by
    lifting through rows of width ``2^N``; ``identity`` takes ``ω_j = δ_j``
    (kept as a negative control: it fails the compatibility condition).
    """
    deltas = level_offsets(N)
    if rule == "pipeline":
        return [frac_mod1(2 ** N * d) for d in deltas]
    if rule == "identity":
        return list(deltas)
    raise ValueError(f"unknown omega rule {rule!r}")


def main_spectrum(N: int, omega_rule: str = "pipeline") -> FrequencySet:
    """Level-N frequency family on ``D_N``: lift of ``Δ_N`` then dilation by ``2^N``."""
    from .lift import lift_family  # lift depends on this module

    base = shifted_family(level_offsets(N), 1)
    lifted = lift_family(base, level_omegas(N, omega_rule))
    return dilate(lifted, 2 ** N).with_name(f"B'_{N}")


def theorem_display_spectrum(N: int) -> FrequencySet:
    """The closed-form display of the level-N family (cross-check only).

    First branch ``(2^N n + 4j/2^N, 2^N m + 4j/2^N)``, second branch
    ``(n + 4j/2^N + 2/2^N, m + 4j/2^N + 2/2^N)``, ``j < M/2``.  The two
    branch types have different grid scales and generally overlap, so this is
    returned as a list-valued family without the disjointness check.
    """
    if N < 2:
        raise ValueError("level must be at least 2")
    M = 2 ** (2 * N - 1)
    n2 = 2 ** N
    out = []
    for j in range(M // 2):
        t = Fraction(4 * j, n2)
        out.append(Branch((t, t), (Fraction(n2), Fraction(n2))))
        out.append(Branch((t + Fraction(2, n2),) * 2, (Fraction(1), Fraction(1))))
    return _UncheckedFamily(2, tuple(out), f"display B'_{N}")


class _UncheckedFamily(FrequencySet):
    def _check_disjoint(self):
        pass


def compare_on_truncation(f1: FrequencySet, f2: FrequencySet, radius) -> dict:
    """Point counts of the two families in the max-norm box (overlaps merged)."""
    radius = frac(radius)
    s1 = {p for b in f1.branches for p in b.points_in_box(radius)}
    s2 = {p for b in f2.branches for p in b.points_in_box(radius)}
    return {"only_first": len(s1 - s2), "only_second": len(s2 - s1), "common": len(s1 & s2)}
