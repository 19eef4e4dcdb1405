"""Frame-bound estimates shared across modules."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

PROVENANCES = ("exact-gamma", "cluster-formula", "finite-section", "complement-chain")


@dataclass(frozen=True)
class BoundsEstimate:
    """A (lower, upper) frame-bound pair and where it came from.

    ``finite-section`` estimates are inner approximations of the true
    Riesz bounds; the other provenances are certified values.
    """

    lower: float
    upper: float
    provenance: str
    radius: Optional[str] = None
    size: Optional[int] = None
    notes: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        # eigensolver round-off may put a singular section's minimum just below 0
        scale = 1e-9 * max(1.0, abs(self.upper))
        if not (-scale <= self.lower <= self.upper + scale):
            raise ValueError(f"invalid bounds ({self.lower}, {self.upper})")

    @property
    def condition(self) -> float:
        return self.upper / self.lower if self.lower > 0 else float("inf")

    def contains(self, other: "BoundsEstimate", tol: float = 0.0) -> bool:
        return self.lower - tol <= other.lower and other.upper <= self.upper + tol

    def as_dict(self) -> dict:
        out = {"lower": self.lower, "upper": self.upper, "provenance": self.provenance}
        if self.radius is not None:
            out["radius"] = self.radius
        if self.size is not None:
            out["size"] = self.size
        if self.notes:
            out["notes"] = list(self.notes)
        return out
