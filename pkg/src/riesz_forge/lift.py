"""Stacked multi-rectangles and the lift from one to two dimensions.

A stack ``T = ∪_k [α_k, β_k) x [v_k, v_k + 1)`` inside ``[0, W] x R`` is
isometric to ``I x [0, 1)`` where ``I = ∪_k [α_k + W(k-1), β_k + W(k-1))``
(the piece in slot ``k`` is moved left by ``W(k-1)`` per unit of height).
Exponentials ``exp(2πi(λx + (m+ω)y))`` on ``T`` correspond to product
exponentials on ``I x [0,1)`` when a compatibility condition holds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .geometry import DyadicApproximant, Interval, MultiInterval, SignedDomain, rect
from .rational import frac
from .spectra import Branch, FrequencySet, TruncatedSpectrum

VARIANTS = ("proof", "stated")


@dataclass(frozen=True)
class StackRect:
    alpha: Fraction
    beta: Fraction
    v: int
    slot: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "alpha", frac(self.alpha))
        object.__setattr__(self, "beta", frac(self.beta))
        if not self.alpha < self.beta:
            raise ValueError("alpha must be below beta")
        if int(self.v) != self.v or self.v < 0:
            raise ValueError("v must be a nonnegative integer")


@dataclass(frozen=True)
class StackSpec:
    """Rectangles ``[α_k, β_k) x [v_k, v_k+1)`` with slot width ``width``.

    ``slot`` defaults to the 1-based position of the rectangle.  Several
    pieces may share a slot (and then a row), which is how a row made of
    separate unit squares is described.
    """

    width: int
    rects: tuple[StackRect, ...]

    def __post_init__(self):
        rects = tuple(r if r.slot is not None else
                      StackRect(r.alpha, r.beta, r.v, k + 1) for k, r in enumerate(self.rects))
        object.__setattr__(self, "rects", rects)
        if not rects:
            raise ValueError("stack has no rectangles")
        if self.width <= 0:
            raise ValueError("width must be positive")
        for r in rects:
            if r.alpha < 0 or r.beta > self.width:
                raise ValueError("rectangle leaves the strip [0, width]")
            if r.slot < 1:
                raise ValueError("slots are 1-based")
        rows: dict = {}
        for r in rects:
            rows.setdefault(r.slot, set()).add(r.v)
        if any(len(vs) != 1 for vs in rows.values()):
            raise ValueError("pieces sharing a slot must share a row")
        by_slot = sorted((s, next(iter(vs))) for s, vs in rows.items())
        for (s0, v0), (s1, v1) in zip(by_slot, by_slot[1:]):
            if v1 < v0 + 1:
                raise ValueError("rows must increase with the slot index")
        self.unrolled()  # raises on overlapping pieces

    @property
    def M(self) -> int:
        return len(self.rects)

    def offset(self, r: StackRect) -> Fraction:
        return Fraction(self.width * (r.slot - 1))

    def unrolled(self) -> MultiInterval:
        return MultiInterval(tuple(Interval(r.alpha + self.offset(r), r.beta + self.offset(r))
                                   for r in self.rects))

    def domain(self) -> SignedDomain:
        return SignedDomain(tuple(rect(r.alpha, r.beta, r.v, r.v + 1) for r in self.rects), 2, "T")

    def unrolled_domain(self) -> SignedDomain:
        """``I x [0, 1)``."""
        return SignedDomain(tuple(rect(r.alpha + self.offset(r), r.beta + self.offset(r), 0, 1)
                                  for r in self.rects), 2, "I x [0,1)")

    @property
    def measure(self) -> Fraction:
        return sum((r.beta - r.alpha for r in self.rects), Fraction(0))

    def to_plane(self, u, t) -> tuple[Fraction, Fraction]:
        """Inverse of the unrolling isometry: ``(u, t) ∈ I x [0,1)`` to ``T``."""
        u, t = frac(u), frac(t)
        for r in self.rects:
            off = self.offset(r)
            if r.alpha + off <= u <= r.beta + off:
                return u - off, r.v + t
        raise ValueError("point is not in the unrolled set")

    def to_line(self, x, y, k: int) -> tuple[Fraction, Fraction]:
        """Unrolling of ``(x, y)`` seen as a point of rectangle ``k`` (0-based)."""
        r = self.rects[k]
        return frac(x) + self.offset(r), frac(y) - r.v


def unroll(T: StackSpec) -> MultiInterval:
    return T.unrolled()


def stack_from_squares(squares: Sequence[tuple[int, int]], width: int) -> StackSpec:
    """Unit squares ``[x, x+1) x [y, y+1)``; the square in row ``y`` uses slot ``y + 1``."""
    rects = [StackRect(x, x + 1, y, y + 1) for x, y in sorted(squares, key=lambda s: (s[1], s[0]))]
    return StackSpec(width, tuple(rects))


def stack_from_dyadic(approx: DyadicApproximant) -> StackSpec:
    """The dilated approximant ``2^N D_N`` as a stack of width ``2^N``."""
    return stack_from_squares(approx.integer_squares(), 2 ** approx.level)


def compatibility_check(T: StackSpec, lam, omega, variant: str = "proof") -> bool:
    """Exact test of the lifting condition for every rectangle of ``T``.

    ``proof``:  ``W (k-1) λ - ω v_k ∈ Z``, which is what makes the lifted
    exponential equal the product exponential on ``I x [0,1)``.
    ``stated``: ``W k λ - ω v_k ∈ Z``.
    """
    lam, omega = frac(lam), frac(omega)
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    shift = 1 if variant == "proof" else 0
    # the condition only depends on the (slot, row) pair of each piece
    for slot, v in {(r.slot, r.v) for r in T.rects}:
        if (T.width * (slot - shift) * lam - omega * v).denominator != 1:
            return False
    return True


@dataclass(frozen=True)
class LiftedSpectrum:
    """``{(λ_n, m + ω_n) : m ∈ Z}`` over a finite list of base frequencies."""

    lambdas: tuple[Fraction, ...]
    omegas: tuple[Fraction, ...]

    def points(self, m_radius: int) -> list[tuple[Fraction, Fraction]]:
        return [(lam, m + om) for lam, om in zip(self.lambdas, self.omegas)
                for m in range(-m_radius, m_radius + 1)]


def lift_spectrum(lambdas: Sequence, omegas: Sequence) -> LiftedSpectrum:
    if len(lambdas) != len(omegas):
        raise ValueError("one omega per frequency is required")
    return LiftedSpectrum(tuple(frac(v) for v in lambdas), tuple(frac(v) for v in omegas))


def lift_family(base: FrequencySet, omegas: Sequence) -> FrequencySet:
    """Lift a 1D family branch by branch: ``(δ_j + s_j n, ω_j + m)``."""
    if base.dimension != 1:
        raise ValueError("base family must be one-dimensional")
    if len(omegas) != len(base.branches):
        raise ValueError("one omega per branch is required")
    out = []
    for b, om in zip(base.branches, omegas):
        if b.exclude is not None:
            raise ValueError("filtered branches cannot be lifted")
        out.append(Branch((b.offset[0], frac(om)), (b.scale[0], Fraction(1))))
    return FrequencySet(2, tuple(out))


def family_pairs(base: FrequencySet, omegas: Sequence, radius) -> list[tuple[Fraction, Fraction]]:
    """All ``(λ, ω)`` pairs with ``|λ| ≤ radius`` of a lifted 1D family."""
    radius = frac(radius)
    return [(p[0], frac(om)) for b, om in zip(base.branches, omegas)
            for p in b.points_in_box(radius)]


def gram_cross_validation(T: StackSpec, spectrum: TruncatedSpectrum) -> dict:
    """Compare the Gram matrices of a frequency list on ``T`` and on ``I x [0,1)``."""
    from .gram import gram_matrix

    g_t = gram_matrix(T.domain(), spectrum)
    g_i = gram_matrix(T.unrolled_domain(), spectrum)
    return {
        "size": len(spectrum),
        "max_abs_diff": float(np.max(np.abs(g_t - g_i))),
        "max_modulus_diff": float(np.max(np.abs(np.abs(g_t) - np.abs(g_i)))),
    }
