"""Signed unions of axis-aligned rectangles and right triangles.

Every domain used by the constructions (octagon, rhombi, the chevron domain
that tiles at level two, its dyadic approximants) is a finite signed sum of
cells, ``chi_D = sum_c w_c chi_c`` almost everywhere.  Coordinates are exact
rationals; measures, overlap tests and intersections are exact.  Sampling
(indicator grids) is used only for diagnostics: symmetric-difference
estimates and covering multiplicities.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import InvalidDomain, NonUniformCovering, OverlapError
from .rational import Point, frac, point

# ---------------------------------------------------------------------------
# cell types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Interval:
    """Half-open interval ``[left, right)``."""

    left: Fraction
    right: Fraction

    def __post_init__(self):
        object.__setattr__(self, "left", frac(self.left))
        object.__setattr__(self, "right", frac(self.right))
        if not self.left < self.right:
            raise InvalidDomain(f"empty interval [{self.left}, {self.right})")

    @property
    def length(self) -> Fraction:
        return self.right - self.left

    def shifted(self, rho: Fraction, v: Fraction) -> "Interval":
        return Interval(rho * self.left + v, rho * self.right + v)


@dataclass(frozen=True)
class MultiInterval:
    parts: tuple[Interval, ...]

    def __post_init__(self):
        parts = tuple(sorted(self.parts, key=lambda iv: iv.left))
        for a, b in zip(parts, parts[1:]):
            if b.left < a.right:
                raise InvalidDomain("intervals overlap")
        object.__setattr__(self, "parts", parts)

    @property
    def measure(self) -> Fraction:
        return sum((iv.length for iv in self.parts), Fraction(0))

    @property
    def left_endpoints(self) -> list[Fraction]:
        return [iv.left for iv in self.parts]

    def to_domain(self) -> "SignedDomain":
        return SignedDomain(tuple(SignedCell(iv) for iv in self.parts), dimension=1)


@dataclass(frozen=True)
class Rect:
    x: Interval
    y: Interval

    @property
    def area(self) -> Fraction:
        return self.x.length * self.y.length

    def vertices(self) -> list[Point]:
        x0, x1, y0, y1 = self.x.left, self.x.right, self.y.left, self.y.right
        return [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]


@dataclass(frozen=True)
class RightTriangle:
    """Triangle with the right angle at ``vertex`` and legs along the axes.

    ``legs = (lx, ly)`` are signed lengths: the other two vertices are
    ``vertex + (lx, 0)`` and ``vertex + (0, ly)``.
    """

    vertex: Point
    legs: Point

    def __post_init__(self):
        object.__setattr__(self, "vertex", point(self.vertex))
        object.__setattr__(self, "legs", point(self.legs))
        if self.legs[0] == 0 or self.legs[1] == 0:
            raise InvalidDomain("triangle legs must be nonzero")

    @property
    def area(self) -> Fraction:
        return abs(self.legs[0] * self.legs[1]) / 2

    def vertices(self) -> list[Point]:
        (vx, vy), (lx, ly) = self.vertex, self.legs
        pts = [(vx, vy), (vx + lx, vy), (vx, vy + ly)]
        if lx * ly < 0:
            pts.reverse()
        return pts


Shape = Union[Interval, Rect, RightTriangle]


@dataclass(frozen=True)
class SignedCell:
    shape: Shape
    weight: int = 1

    def __post_init__(self):
        if self.weight not in (1, -1):
            raise InvalidDomain("cell weight must be +1 or -1")

    @property
    def kind(self) -> str:
        return {Interval: "interval", Rect: "rect", RightTriangle: "tri"}[type(self.shape)]

    @property
    def size(self) -> Fraction:
        s = self.shape
        return s.length if isinstance(s, Interval) else s.area

    def bbox(self) -> tuple[Point, Point]:
        s = self.shape
        if isinstance(s, Interval):
            return (s.left,), (s.right,)
        xs = [p[0] for p in s.vertices()]
        ys = [p[1] for p in s.vertices()]
        return (min(xs), min(ys)), (max(xs), max(ys))

    def min_extent(self) -> Fraction:
        s = self.shape
        if isinstance(s, Interval):
            return s.length
        if isinstance(s, Rect):
            return min(s.x.length, s.y.length)
        return min(abs(s.legs[0]), abs(s.legs[1]))

    def boundary_size(self) -> float:
        s = self.shape
        if isinstance(s, Interval):
            return 2.0
        if isinstance(s, Rect):
            return float(2 * (s.x.length + s.y.length))
        lx, ly = (float(abs(v)) for v in s.legs)
        return lx + ly + math.hypot(lx, ly)

    def transformed(self, rho: Fraction, v: Point) -> "SignedCell":
        s = self.shape
        if isinstance(s, Interval):
            return SignedCell(s.shifted(rho, v[0]), self.weight)
        if isinstance(s, Rect):
            return SignedCell(Rect(s.x.shifted(rho, v[0]), s.y.shifted(rho, v[1])), self.weight)
        vert = (rho * s.vertex[0] + v[0], rho * s.vertex[1] + v[1])
        return SignedCell(RightTriangle(vert, (rho * s.legs[0], rho * s.legs[1])), self.weight)

    def indicator(self, pts: np.ndarray) -> np.ndarray:
        """Boolean membership of float points ``pts`` with shape (n, dim)."""
        s = self.shape
        if isinstance(s, Interval):
            x = pts[:, 0]
            return (x >= float(s.left)) & (x < float(s.right))
        if isinstance(s, Rect):
            x, y = pts[:, 0], pts[:, 1]
            return ((x >= float(s.x.left)) & (x < float(s.x.right))
                    & (y >= float(s.y.left)) & (y < float(s.y.right)))
        sx = (pts[:, 0] - float(s.vertex[0])) / float(s.legs[0])
        ty = (pts[:, 1] - float(s.vertex[1])) / float(s.legs[1])
        return (sx >= 0) & (ty >= 0) & (sx + ty < 1)

    def contains(self, p: Point) -> bool:
        s = self.shape
        if isinstance(s, Interval):
            return s.left <= p[0] < s.right
        if isinstance(s, Rect):
            return s.x.left <= p[0] < s.x.right and s.y.left <= p[1] < s.y.right
        sx = (p[0] - s.vertex[0]) / s.legs[0]
        ty = (p[1] - s.vertex[1]) / s.legs[1]
        return sx >= 0 and ty >= 0 and sx + ty < 1


# ---------------------------------------------------------------------------
# signed domains
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignedDomain:
    cells: tuple[SignedCell, ...]
    dimension: int = 2
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))
        if self.dimension not in (1, 2):
            raise InvalidDomain("dimension must be 1 or 2")
        if not self.cells:
            raise InvalidDomain("domain has no cells")
        for c in self.cells:
            if (self.dimension == 1) != isinstance(c.shape, Interval):
                raise InvalidDomain(f"{c.kind} cell in a {self.dimension}D domain")
        if self.measure <= 0:
            raise InvalidDomain("domain must have positive measure")

    @property
    def measure(self) -> Fraction:
        return sum((c.weight * c.size for c in self.cells), Fraction(0))

    def bbox(self) -> tuple[Point, Point]:
        boxes = [c.bbox() for c in self.cells]
        lo = tuple(min(b[0][i] for b in boxes) for i in range(self.dimension))
        hi = tuple(max(b[1][i] for b in boxes) for i in range(self.dimension))
        return lo, hi

    def boundary_size(self) -> float:
        """Perimeter bound (2D) or boundary point count (1D) of the cells."""
        return sum(c.boundary_size() for c in self.cells)

    def indicator(self, pts: np.ndarray) -> np.ndarray:
        pts = np.asarray(pts, dtype=np.float64).reshape(-1, self.dimension)
        out = np.zeros(len(pts), dtype=np.int64)
        for c in self.cells:
            out += c.weight * c.indicator(pts)
        return out

    def contains(self, p: Sequence) -> bool:
        p = point(p)
        total = sum(c.weight for c in self.cells if c.contains(p))
        return total == 1

    def validate(self, samples: int = 100_000, seed: int = 0) -> bool:
        """Check that the signed indicator takes values in {0, 1} at random points."""
        lo, hi = self.bbox()
        rng = np.random.default_rng(seed)
        lo_f = np.array([float(v) for v in lo])
        hi_f = np.array([float(v) for v in hi])
        pts = lo_f + (hi_f - lo_f) * rng.random((samples, self.dimension))
        vals = self.indicator(pts)
        return bool(np.all((vals == 0) | (vals == 1)))

    def with_name(self, name: str) -> "SignedDomain":
        return SignedDomain(self.cells, self.dimension, name)


def measure(d: SignedDomain) -> Fraction:
    return d.measure


def transform(d: SignedDomain, rho, v: Sequence | None = None) -> SignedDomain:
    """Image of ``d`` under ``x -> rho * x + v``."""
    rho = frac(rho)
    if rho <= 0:
        raise ValueError("dilation factor must be positive")
    v = point(v) if v is not None else (Fraction(0),) * d.dimension
    if len(v) != d.dimension:
        raise ValueError("translation has wrong dimension")
    return SignedDomain(tuple(c.transformed(rho, v) for c in d.cells), d.dimension, d.name)


def translate(d: SignedDomain, v: Sequence) -> SignedDomain:
    return transform(d, 1, v)


# ---------------------------------------------------------------------------
# exact intersections
# ---------------------------------------------------------------------------


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _clip(subject: list[Point], clip: list[Point]) -> list[Point]:
    """Sutherland-Hodgman clipping of a convex polygon by a CCW convex polygon."""
    out = subject
    n = len(clip)
    for i in range(n):
        a, b = clip[i], clip[(i + 1) % n]
        if not out:
            return []
        inp, out = out, []
        m = len(inp)
        for j in range(m):
            p, q = inp[j], inp[(j + 1) % m]
            cp, cq = _cross(a, b, p), _cross(a, b, q)
            if cp >= 0:
                out.append(p)
            if (cp >= 0) != (cq >= 0) and cp != cq:
                t = cp / (cp - cq)
                out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def _poly_area(poly: list[Point]) -> Fraction:
    if len(poly) < 3:
        return Fraction(0)
    s = Fraction(0)
    for i in range(len(poly)):
        x0, y0 = poly[i]
        x1, y1 = poly[(i + 1) % len(poly)]
        s += x0 * y1 - x1 * y0
    return abs(s) / 2


def _cell_overlap(c1: SignedCell, c2: SignedCell) -> Fraction:
    s1, s2 = c1.shape, c2.shape
    if isinstance(s1, Interval):
        return max(Fraction(0), min(s1.right, s2.right) - max(s1.left, s2.left))
    (lo1, hi1), (lo2, hi2) = c1.bbox(), c2.bbox()
    if lo1[0] >= hi2[0] or lo2[0] >= hi1[0] or lo1[1] >= hi2[1] or lo2[1] >= hi1[1]:
        return Fraction(0)
    if isinstance(s1, Rect) and isinstance(s2, Rect):
        w = min(hi1[0], hi2[0]) - max(lo1[0], lo2[0])
        h = min(hi1[1], hi2[1]) - max(lo1[1], lo2[1])
        return w * h
    return _poly_area(_clip(s1.vertices(), s2.vertices()))


def intersection_measure(d1: SignedDomain, d2: SignedDomain) -> Fraction:
    """Exact ``|d1 ∩ d2| = sum w w' |c ∩ c'|`` over cell pairs."""
    if d1.dimension != d2.dimension:
        raise ValueError("dimension mismatch")
    total = Fraction(0)
    for c1 in d1.cells:
        for c2 in d2.cells:
            ov = _cell_overlap(c1, c2)
            if ov:
                total += c1.weight * c2.weight * ov
    return total


def symm_diff_exact(d1: SignedDomain, d2: SignedDomain) -> Fraction:
    return d1.measure + d2.measure - 2 * intersection_measure(d1, d2)


def union(parts: Sequence[SignedDomain], name: str = "") -> SignedDomain:
    dims = {p.dimension for p in parts}
    if len(dims) != 1:
        raise ValueError("dimension mismatch")
    return SignedDomain(tuple(c for p in parts for c in p.cells), dims.pop(), name)


def cut_translate(parts: Sequence[SignedDomain], shifts: Sequence[Sequence]) -> SignedDomain:
    """Translate disjoint pieces and reassemble them; raises on overlap."""
    if len(parts) != len(shifts):
        raise ValueError("one shift per part is required")
    moved = [translate(p, s) for p, s in zip(parts, shifts)]
    for label, group in (("before", parts), ("after", moved)):
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                if intersection_measure(group[i], group[j]) != 0:
                    raise OverlapError(f"parts {i} and {j} overlap {label} shifting")
    return union(moved)


# ---------------------------------------------------------------------------
# sampling diagnostics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SymmDiffEstimate:
    value: float
    error_bound: float
    grid: int

    def __float__(self) -> float:
        return self.value


def _midpoint_grid(lo: Sequence[float], hi: Sequence[float], n: int) -> tuple[np.ndarray, float]:
    axes = [lo_i + (np.arange(n) + 0.5) * (hi_i - lo_i) / n for lo_i, hi_i in zip(lo, hi)]
    mesh = np.meshgrid(*axes, indexing="ij")
    cell = float(np.prod([(hi_i - lo_i) / n for lo_i, hi_i in zip(lo, hi)]))
    return np.stack([m.ravel() for m in mesh], axis=1), cell


def symm_diff_measure(d1: SignedDomain, d2: SignedDomain, grid: int = 512) -> SymmDiffEstimate:
    """Grid estimate of ``|d1 Δ d2|`` with a boundary-band error bound."""
    if d1.dimension != d2.dimension:
        raise ValueError("dimension mismatch")
    (lo1, hi1), (lo2, hi2) = d1.bbox(), d2.bbox()
    lo = [float(min(a, b)) for a, b in zip(lo1, lo2)]
    hi = [float(max(a, b)) for a, b in zip(hi1, hi2)]
    pts, cell = _midpoint_grid(lo, hi, grid)
    diff = np.count_nonzero(d1.indicator(pts) != d2.indicator(pts))
    if d1 == d2:
        return SymmDiffEstimate(0.0, 0.0, grid)
    h = max((b - a) / grid for a, b in zip(lo, hi))
    # misclassified points lie within half a grid diagonal of some boundary
    band = h * math.sqrt(d1.dimension)
    bound = (d1.boundary_size() + d2.boundary_size()) * band ** (d1.dimension - 1) * (
        band if d1.dimension == 1 else 1.0)
    return SymmDiffEstimate(diff * cell, bound, grid)


# ---------------------------------------------------------------------------
# lattices and tiling
# ---------------------------------------------------------------------------


def _det(m: Sequence[Sequence[Fraction]]) -> Fraction:
    if len(m) == 1:
        return m[0][0]
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def _inverse(m: Sequence[Sequence[Fraction]]) -> tuple[Point, ...]:
    d = _det(m)
    if len(m) == 1:
        return ((1 / d,),)
    (a, b), (c, e) = m
    return ((e / d, -b / d), (-c / d, a / d))


@dataclass(frozen=True)
class Lattice:
    """``{k @ basis : k in Z^d}``; the rows of ``basis`` are the generators."""

    basis: tuple[Point, ...]

    def __post_init__(self):
        rows = tuple(point(r) for r in self.basis)
        object.__setattr__(self, "basis", rows)
        d = len(rows)
        if d not in (1, 2) or any(len(r) != d for r in rows):
            raise ValueError("lattice basis must be 1x1 or 2x2")
        if _det(rows) == 0:
            raise ValueError("lattice basis is singular")

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def covolume(self) -> Fraction:
        return abs(_det(self.basis))

    def coordinates(self, p: Sequence) -> Point:
        """Solve ``k @ basis = p`` exactly."""
        inv = _inverse(self.basis)
        p = point(p)
        d = self.dimension
        return tuple(sum(p[i] * inv[i][j] for i in range(d)) for j in range(d))

    def contains(self, p: Sequence) -> bool:
        return all(c.denominator == 1 for c in self.coordinates(p))

    def vector(self, k: Sequence[int]) -> Point:
        d = self.dimension
        return tuple(sum(Fraction(k[i]) * self.basis[i][j] for i in range(d)) for j in range(d))

    def vectors_in_box(self, lo: Sequence[float], hi: Sequence[float]) -> list[Point]:
        """All lattice vectors inside the closed box ``[lo, hi]``."""
        inv = np.array([[float(v) for v in row] for row in _inverse(self.basis)])
        corners = np.array(list(product(*zip(lo, hi))), dtype=np.float64)
        ks = corners @ inv
        kmin = np.floor(ks.min(axis=0)).astype(int) - 1
        kmax = np.ceil(ks.max(axis=0)).astype(int) + 1
        out = []
        for k in product(*(range(a, b + 1) for a, b in zip(kmin, kmax))):
            v = self.vector(k)
            if all(lo[i] <= v[i] <= hi[i] for i in range(self.dimension)):
                out.append(v)
        return out


def tiling_level(d: SignedDomain, lattice: Lattice, window=None, grid: int = 256,
                 threshold: float = 0.999) -> int:
    """Covering multiplicity ``k`` with ``sum_l chi_d(x - l) = k`` almost everywhere.

    Counts are sampled at cell midpoints of a ``grid``-per-axis mesh on
    ``[0, window)^dim``; a sample whose count differs from any axis neighbour
    lies within one grid cell of a boundary and is excluded. The window is
    enlarged to contain a translate of the lattice's period cell, and the
    sampled level must agree with ``measure / covolume``.
    """
    if lattice.dimension != d.dimension:
        raise ValueError("lattice and domain dimensions differ")
    corners = [lattice.vector(k) for k in product((0, 1), repeat=lattice.dimension)]
    period = max(max(c[i] for c in corners) - min(c[i] for c in corners) for i in range(lattice.dimension))
    window = float(max(period, frac(window) if window is not None else 0))
    h = window / grid
    if float(min(c.min_extent() for c in d.cells)) < 4 * h:
        raise ValueError("grid too coarse: every cell must span at least 4 grid points")
    dim = d.dimension
    axis = (np.arange(-1, grid + 1) + 0.5) * h
    mesh = np.meshgrid(*([axis] * dim), indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=1)
    lo, hi = d.bbox()
    box_lo = [axis[0] - float(hi[i]) for i in range(dim)]
    box_hi = [axis[-1] - float(lo[i]) for i in range(dim)]
    counts = np.zeros(len(pts), dtype=np.int64)
    for ell in lattice.vectors_in_box(box_lo, box_hi):
        counts += d.indicator(pts - np.array([float(v) for v in ell]))
    counts = counts.reshape([grid + 2] * dim)
    centre = counts[(slice(1, -1),) * dim]
    interior = np.ones(centre.shape, dtype=bool)
    for ax in range(dim):
        for step in (-1, 1):
            idx = [slice(1, -1)] * dim
            idx[ax] = slice(1 + step, grid + 1 + step)
            interior &= counts[tuple(idx)] == centre
    vals = centre[interior]
    if vals.size == 0:
        raise NonUniformCovering("no interior samples")
    k, hits = Counter(vals.tolist()).most_common(1)[0]
    if hits / vals.size < threshold:
        raise NonUniformCovering(
            f"most common multiplicity {k} covers only {hits / vals.size:.4%} of samples")
    if k * lattice.covolume != d.measure:
        raise NonUniformCovering(
            f"sampled multiplicity {k} disagrees with measure/covolume = {d.measure / lattice.covolume}")
    return int(k)


# ---------------------------------------------------------------------------
# named domains
# ---------------------------------------------------------------------------


def rect(x0, x1, y0, y1, weight: int = 1) -> SignedCell:
    return SignedCell(Rect(Interval(x0, x1), Interval(y0, y1)), weight)


def tri(vertex, legs, weight: int = 1) -> SignedCell:
    return SignedCell(RightTriangle(point(vertex), point(legs)), weight)


def interval_domain(a, b) -> SignedDomain:
    return SignedDomain((SignedCell(Interval(a, b)),), 1, "interval")


def square(side=1, corner=(0, 0)) -> SignedDomain:
    side = frac(side)
    x0, y0 = point(corner)
    return SignedDomain((rect(x0, x0 + side, y0, y0 + side),), 2, "square")


def unit_square() -> SignedDomain:
    return square(1).with_name("unit-square")


_OCTAGON_CORNERS = (((0, 0), (1, 1)), ((4, 0), (-1, 1)), ((0, 4), (1, -1)), ((4, 4), (-1, -1)))


def octagon_corners() -> list[SignedDomain]:
    """The four corner triangles cut from ``[0,4]^2``, one domain each."""
    return [SignedDomain((tri(v, legs),), 2, "corner") for v, legs in _OCTAGON_CORNERS]


def octagon() -> SignedDomain:
    cells = [rect(0, 4, 0, 4)] + [tri(v, legs, -1) for v, legs in _OCTAGON_CORNERS]
    return SignedDomain(tuple(cells), 2, "octagon")


# shifts that carry the corner triangles of the octagon onto the rhombus R_{1,1}
OCTAGON_CORNER_SHIFTS = ((0, 0), (-4, 0), (0, -4), (-4, -4))


def rhombus(a=1, b=1) -> SignedDomain:
    """Rhombus centred at the origin with diagonals ``2a`` (x) and ``2b`` (y)."""
    a, b = frac(a), frac(b)
    cells = [tri((0, 0), (sx * a, sy * b)) for sx, sy in ((1, 1), (-1, 1), (1, -1), (-1, -1))]
    return SignedDomain(tuple(cells), 2, f"rhombus({a},{b})")


def rhombus_lattice(a=1, b=1) -> Lattice:
    a, b = frac(a), frac(b)
    return Lattice(((a, b), (2 * a, Fraction(0))))


def figure3_domain() -> SignedDomain:
    """Chevron domain ``R_1 ∪ R_2`` in the unit frame.

    ``R_1 = [0,1) x [0,1/4)``; ``R_2`` is the band between the lines
    ``y = x + 1/4`` and ``y = x + 1/2`` (``x < 1/2``) and its mirror image
    ``y = 5/4 - x``, ``y = 3/2 - x`` (``x >= 1/2``).
    """
    q = Fraction(1, 4)
    h = Fraction(1, 2)
    cells = [
        rect(0, 1, 0, q),
        rect(0, 1, q, 1),
        tri((h, q), (-h, h), -1),   # below the rising band
        tri((h, q), (h, h), -1),    # below the falling band
        tri((0, 1), (h, -h), -1),   # above the rising band
        tri((1, 1), (-h, -h), -1),  # above the falling band
    ]
    return SignedDomain(tuple(cells), 2, "figure3")


def figure3_lattice() -> Lattice:
    return Lattice(((1, 0), (0, Fraction(1, 4))))


def figure3_r1() -> SignedDomain:
    return SignedDomain((rect(0, 1, 0, Fraction(1, 4)),), 2, "R1")


# ---------------------------------------------------------------------------
# dyadic approximants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DyadicApproximant:
    """Union of squares of side ``2^-N`` approximating the chevron domain."""

    level: int
    lower: tuple[Point, ...]   # A_{N,1}: squares filling R_1
    upper: tuple[Point, ...]   # A_{N,2}: squares approximating R_2

    @property
    def side(self) -> Fraction:
        return Fraction(1, 2 ** self.level)

    @property
    def squares(self) -> tuple[Point, ...]:
        return self.lower + self.upper

    def _domain(self, corners: Iterable[Point], name: str) -> SignedDomain:
        s = self.side
        return SignedDomain(tuple(rect(x, x + s, y, y + s) for x, y in corners), 2, name)

    def domain(self) -> SignedDomain:
        return self._domain(self.squares, f"D_{self.level}")

    def lower_domain(self) -> SignedDomain:
        return self._domain(self.lower, f"R_{self.level},1")

    def upper_domain(self) -> SignedDomain:
        return self._domain(self.upper, f"R_{self.level},2")

    def integer_squares(self) -> list[tuple[int, int]]:
        """Lower-left corners after dilation by ``2^N``."""
        n = 2 ** self.level
        return [(int(x * n), int(y * n)) for x, y in self.squares]


def dyadic_approximant(N: int) -> DyadicApproximant:
    if N < 2:
        raise ValueError("level must be at least 2")
    n = 2 ** N
    q = Fraction(1, 4)
    lower = tuple((Fraction(k, n), Fraction(l, n)) for k in range(n) for l in range(n // 4))
    upper = []
    for k in range(n // 2):
        for l in range(n // 4):
            upper.append((Fraction(k, n), q + Fraction(k + l + 1, n)))
            upper.append((Fraction(1, 2) + Fraction(k, n), Fraction(n - 2 - k - l, n)))
    approx = DyadicApproximant(N, lower, tuple(upper))
    ints = approx.integer_squares()
    if len(set(ints)) != len(ints):
        raise InvalidDomain("dyadic squares overlap")
    return approx
