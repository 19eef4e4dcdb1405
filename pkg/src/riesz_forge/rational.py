"""Exact rational helpers shared by every module.

Coordinates, frequencies and offsets are :class:`fractions.Fraction` values.
Vectorised evaluation goes through integer numerators over a common
denominator so that phases ``exp(2 pi i q)`` can be reduced modulo one
exactly before any floating point is involved.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

Point = tuple[Fraction, ...]

_INT64_SAFE = 2**62


def frac(value) -> Fraction:
    """Coerce ``value`` (int, Fraction, ``"p/q"`` string, float) to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, (float, np.floating)):
        return Fraction(float(value))
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def point(values: Iterable) -> Point:
    return tuple(frac(v) for v in values)


def fmt(q: Fraction) -> str:
    """Serialise a rational as ``"p/q"`` (or ``"p"`` when integral)."""
    q = frac(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def is_integer(q: Fraction) -> bool:
    return frac(q).denominator == 1


def frac_mod1(q: Fraction) -> Fraction:
    q = frac(q)
    return q - math.floor(q)


def lcm_all(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def common_denominator(values: Iterable[Fraction]) -> int:
    return lcm_all(frac(v).denominator for v in values)


def frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    """Generator of the additive group ``aZ + bZ`` (non-negative)."""
    a, b = frac(a), frac(b)
    den = a.denominator * b.denominator
    g = math.gcd(a.numerator * b.denominator, b.numerator * a.denominator)
    return Fraction(g, den)


def to_numerators(points: Sequence[Sequence[Fraction]]) -> tuple[np.ndarray, int]:
    """Integer numerator array ``K`` and denominator ``Q`` with ``points == K / Q``."""
    flat = [frac(c) for p in points for c in p]
    q = common_denominator(flat) if flat else 1
    nums = [[int(frac(c) * q) for c in p] for p in points]
    dtype = np.int64
    if nums and max(abs(v) for row in nums for v in row) >= _INT64_SAFE:
        dtype = object
    arr = np.array(nums, dtype=dtype)
    if arr.ndim == 1:
        arr = arr.reshape(len(points), -1)
    return arr, q


def _safe(arr: np.ndarray, factor: int) -> np.ndarray:
    """Return ``arr`` as an object array when ``arr * factor`` may overflow int64."""
    if arr.dtype == object:
        return arr
    peak = int(np.max(np.abs(arr))) if arr.size else 0
    if peak * max(abs(int(factor)), 1) >= _INT64_SAFE:
        return arr.astype(object)
    return arr


def scaled_mod1(nums: np.ndarray, den: int, c: Fraction) -> np.ndarray:
    """Fractional part of ``(nums / den) * c`` computed in integers, as float64."""
    c = frac(c)
    nums = _safe(nums, c.numerator)
    modulus = den * c.denominator
    reduced = (nums * c.numerator) % modulus
    if reduced.dtype != object and modulus < _INT64_SAFE:
        return reduced.astype(np.float64) / modulus
    # int / int is correctly rounded even when either side exceeds the float range
    return np.array([int(v) / modulus for v in np.ravel(reduced)]).reshape(np.shape(reduced))


def scaled_float(nums: np.ndarray, den: int, c: Fraction) -> np.ndarray:
    """``(nums / den) * c`` as float64 (no reduction)."""
    c = frac(c)
    nums = _safe(nums, c.numerator)
    prod = nums * c.numerator
    modulus = den * c.denominator
    if prod.dtype != object and modulus < _INT64_SAFE:
        return prod.astype(np.float64) / modulus
    return np.array([int(v) / modulus for v in np.ravel(prod)]).reshape(np.shape(prod))


def expi_mod1(phase_frac: np.ndarray) -> np.ndarray:
    """``exp(2 pi i t)`` for ``t`` already reduced to ``[0, 1)``."""
    return np.exp(2j * np.pi * phase_frac)


def parse_rational_list(text: str) -> list[Fraction]:
    return [frac(tok) for tok in text.split(",") if tok.strip()]


def parse_matrix(text: str) -> tuple[Point, ...]:
    """Parse ``"1,0;0,1/4"`` into rows of rationals."""
    rows = [r for r in text.split(";") if r.strip()]
    if not rows:
        raise ValueError("empty matrix")
    return tuple(tuple(parse_rational_list(r)) for r in rows)
