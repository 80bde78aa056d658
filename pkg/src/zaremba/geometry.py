"""Boundary partitions of the unit circle.

A :class:`BoundaryPartition` is the Dirichlet part of the boundary: a
finite union of disjoint arcs, stored in canonical form (sorted by start
angle, arcs whose closures touch merged at construction). The Neumann
part is the open complement. Angles live in units of pi and stay exact
`Fraction`s whenever the constructor inputs permit, which keeps arc
endpoints free of mod-2pi drift; see :mod:`zaremba.angles`.

The module also builds the named partition families used by the
experiment drivers:

* ``make_uniform(n, ell)`` - n equal arcs of total length ell, centers
  spaced 2pi/n apart (center of the first arc at angle 0).
* ``make_gamma(ell, beta)`` - the symmetric one-gap-parameter family of
  one or two equal-length components; beta is half the width of the
  Neumann gap centered at angle 0, the opposite gap is centered at pi.
  ``beta = 0`` gives the single-arc partition, ``beta = (2pi-ell)/4``
  the uniform 2-partition.
* ``make_two_component(a, gap_b, ell)`` - two components of lengths a
  and ell-a separated by Neumann gaps gap_b and 2pi-ell-gap_b, placed
  so that the family interpolates to the uniform 2-partition at
  ``a = ell/2``, ``gap_b = (2pi-ell)/2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .angles import ANGLE_TOL, PiAngle, close, norm, rad, to_pi

__all__ = [
    "Arc",
    "BoundaryPartition",
    "GammaParams",
    "Label",
    "contains",
    "dirichlet_measure",
    "make_gamma",
    "make_two_component",
    "make_uniform",
    "partition_from_arcs",
    "partition_from_pairs",
    "partition_from_text",
    "partition_to_text",
    "pure_dirichlet",
    "pure_neumann",
]


class Label(Enum):
    """Classification of a boundary point."""

    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"
    ENDPOINT = "endpoint"


@dataclass(frozen=True)
class Arc:
    """Closed arc on the unit circle; angles stored in units of pi."""

    start_pi: PiAngle
    length_pi: PiAngle

    def __post_init__(self):
        if not (0.0 < float(self.length_pi) <= 2.0 + ANGLE_TOL):
            raise ValueError(f"arc length {float(self.length_pi)}*pi outside (0, 2]")
        object.__setattr__(self, "start_pi", norm(self.start_pi))

    @property
    def start(self) -> float:
        """Start angle in radians, in [0, 2pi)."""
        return rad(self.start_pi)

    @property
    def length(self) -> float:
        """Arc length in radians."""
        return rad(self.length_pi)

    @property
    def end_pi(self) -> PiAngle:
        return norm(self.start_pi + self.length_pi)

    @property
    def center_pi(self) -> PiAngle:
        return norm(self.start_pi + self.length_pi / 2)


def _gap_is_zero(gap: PiAngle) -> bool:
    # exact endpoints merge only when they really touch
    if isinstance(gap, Fraction):
        return gap == 0
    return abs(gap) <= ANGLE_TOL


def _gap_is_negative(gap: PiAngle) -> bool:
    if isinstance(gap, Fraction):
        return gap < 0
    return gap < -ANGLE_TOL


def _positive_length(length: PiAngle) -> bool:
    if isinstance(length, Fraction):
        return length > 0
    return length > ANGLE_TOL


def _canonical_arcs(arcs: Iterable[Arc]) -> tuple[Arc, ...]:
    """Sort, merge touching arcs, and reject overlaps."""
    kept = [a for a in arcs if _positive_length(a.length_pi)]
    if not kept:
        return ()
    kept.sort(key=lambda a: float(a.start_pi))

    merged: list[Arc] = []
    for a in kept:
        if merged:
            prev = merged[-1]
            gap = (a.start_pi - prev.start_pi) - prev.length_pi  # unrolled
            if _gap_is_negative(gap):
                raise ValueError("arcs overlap")
            if _gap_is_zero(gap):
                merged[-1] = Arc(prev.start_pi, a.start_pi + a.length_pi - prev.start_pi)
                continue
        merged.append(a)

    if len(merged) > 1:
        # wrap-around: does the last arc's closure reach the first arc?
        first, last = merged[0], merged[-1]
        gap = (first.start_pi + 2) - (last.start_pi + last.length_pi)
        if _gap_is_negative(gap):
            raise ValueError("arcs overlap across 0")
        if _gap_is_zero(gap):
            merged[-1] = Arc(last.start_pi, last.length_pi + gap + first.length_pi)
            merged.pop(0)

    total: PiAngle = Fraction(0)
    for a in merged:
        total = total + a.length_pi
    full = total >= 2 if isinstance(total, Fraction) else total >= 2.0 - ANGLE_TOL
    if full:
        return (Arc(Fraction(0), Fraction(2)),)
    return tuple(merged)


@dataclass(frozen=True)
class BoundaryPartition:
    """Dirichlet part of the circle: disjoint arcs in canonical form.

    Immutable after construction; safe to share across threads. The
    degenerate cases are allowed as calibration configurations: no arcs
    (pure Neumann) and one full-circle arc (pure Dirichlet).
    """

    dirichlet_arcs: tuple[Arc, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "dirichlet_arcs", _canonical_arcs(self.dirichlet_arcs)
        )

    @cached_property
    def measure_pi(self) -> PiAngle:
        """Total Dirichlet length in pi units (exact when arcs are exact)."""
        total: PiAngle = Fraction(0)
        for a in self.dirichlet_arcs:
            total = total + a.length_pi
        return total

    @property
    def measure(self) -> float:
        """Total Dirichlet length in radians."""
        return rad(self.measure_pi)

    @property
    def n_components(self) -> int:
        return len(self.dirichlet_arcs)

    @property
    def is_full(self) -> bool:
        return float(self.measure_pi) >= 2.0 - ANGLE_TOL

    @property
    def is_empty(self) -> bool:
        return not self.dirichlet_arcs

    def gaps(self) -> tuple[Arc, ...]:
        """Neumann intervals, as arcs, in canonical circular order."""
        if self.is_empty:
            return (Arc(Fraction(0), Fraction(2)),)
        if self.is_full:
            return ()
        out = []
        arcs = self.dirichlet_arcs
        for i, a in enumerate(arcs):
            nxt = arcs[(i + 1) % len(arcs)]
            length = norm(nxt.start_pi - a.end_pi)
            if len(arcs) == 1:
                length = 2 - a.length_pi
            out.append(Arc(a.end_pi, length))
        return tuple(out)

    def endpoints_pi(self) -> tuple[PiAngle, ...]:
        """Arc endpoints (Dirichlet-Neumann junctions), sorted."""
        if self.is_full or self.is_empty:
            return ()
        pts = []
        for a in self.dirichlet_arcs:
            pts.append(a.start_pi)
            pts.append(a.end_pi)
        pts.sort(key=float)
        return tuple(pts)

    def contains(self, theta, tol: float = ANGLE_TOL) -> Label:
        """Classify the boundary point at angle theta.

        Floats are radians, Fractions multiples of pi. Points within
        `tol` (pi units) of an arc endpoint report ``Label.ENDPOINT``.
        """
        if self.is_full:
            return Label.DIRICHLET
        t = norm(to_pi(theta))
        for a in self.dirichlet_arcs:
            d = norm(t - a.start_pi)
            df = float(d)
            if df >= 2.0 - tol or df <= tol:
                return Label.ENDPOINT
            if abs(df - float(a.length_pi)) <= tol:
                return Label.ENDPOINT
            if df < float(a.length_pi):
                return Label.DIRICHLET
        return Label.NEUMANN

    def rotated(self, delta) -> "BoundaryPartition":
        d = to_pi(delta)
        return BoundaryPartition(
            tuple(Arc(a.start_pi + d, a.length_pi) for a in self.dirichlet_arcs)
        )

    def reflected(self) -> "BoundaryPartition":
        """Image under the reflection theta -> -theta."""
        return BoundaryPartition(
            tuple(Arc(-a.start_pi - a.length_pi, a.length_pi) for a in self.dirichlet_arcs)
        )

    def equal(self, other: "BoundaryPartition", tol: float = ANGLE_TOL) -> bool:
        if len(self.dirichlet_arcs) != len(other.dirichlet_arcs):
            return False
        return all(
            close(a.start_pi, b.start_pi, tol) and abs(float(a.length_pi - b.length_pi)) <= tol
            for a, b in zip(self.dirichlet_arcs, other.dirichlet_arcs)
        )

    def rotation_onto(self, other: "BoundaryPartition", tol: float = ANGLE_TOL) -> Optional[PiAngle]:
        """Rotation angle delta with self.rotated(delta) == other, or None."""
        if len(self.dirichlet_arcs) != len(other.dirichlet_arcs):
            return None
        if self.is_empty and other.is_empty:
            return Fraction(0)
        if self.is_full and other.is_full:
            return Fraction(0)
        for b in other.dirichlet_arcs:
            delta = b.start_pi - self.dirichlet_arcs[0].start_pi
            if self.rotated(delta).equal(other, tol):
                return norm(delta)
        return None

    def to_pairs(self) -> list[tuple[float, float]]:
        """(start, length) pairs in radians."""
        return [(a.start, a.length) for a in self.dirichlet_arcs]


def partition_from_arcs(arcs: Iterable[Arc]) -> BoundaryPartition:
    return BoundaryPartition(tuple(arcs))


def partition_from_pairs(pairs: Iterable[tuple]) -> BoundaryPartition:
    """Build a partition from (start, length) pairs.

    Floats are radians, Fractions/ints exact multiples of pi.
    """
    return BoundaryPartition(tuple(Arc(to_pi(s), to_pi(l)) for s, l in pairs))


def partition_to_text(p: BoundaryPartition) -> str:
    """Serialize as one "start length" line per arc, radians, 17 digits."""
    lines = [f"{a.start:.17g} {a.length:.17g}" for a in p.dirichlet_arcs]
    return "\n".join(lines) + ("\n" if lines else "")


def partition_from_text(text: str) -> BoundaryPartition:
    pairs = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        s, l = line.split()
        pairs.append((float(s), float(l)))
    return partition_from_pairs(pairs)


def pure_dirichlet() -> BoundaryPartition:
    """Full-circle Dirichlet condition (calibration configuration)."""
    return BoundaryPartition((Arc(Fraction(0), Fraction(2)),))


def pure_neumann() -> BoundaryPartition:
    """Empty Dirichlet set (calibration configuration)."""
    return BoundaryPartition(())


def _check_ell(ell_pi: PiAngle) -> None:
    if not (0.0 < float(ell_pi) < 2.0):
        raise ValueError(f"total Dirichlet length {float(ell_pi)}*pi outside (0, 2pi)")


@dataclass(frozen=True)
class GammaParams:
    """Parameters of the symmetric one- or two-component family."""

    ell_pi: PiAngle
    beta_pi: PiAngle

    def __post_init__(self):
        object.__setattr__(self, "ell_pi", to_pi(self.ell_pi))
        object.__setattr__(self, "beta_pi", to_pi(self.beta_pi))
        _check_ell(self.ell_pi)
        beta_max = (2 - self.ell_pi) / 4
        if float(self.beta_pi) < -ANGLE_TOL or float(self.beta_pi - beta_max) > ANGLE_TOL:
            raise ValueError(
                f"beta {float(self.beta_pi)}*pi outside [0, {float(beta_max)}*pi]"
            )

    @property
    def beta_max_pi(self) -> PiAngle:
        return (2 - self.ell_pi) / 4


def make_gamma(ell, beta=None) -> BoundaryPartition:
    """Member of the symmetric family with half-gap angle beta.

    The Dirichlet set consists of the mirror arcs [beta, beta + ell/2]
    and [2pi - beta - ell/2, 2pi - beta]; the Neumann gaps are centered
    at angles 0 (width 2*beta) and pi (width 2pi - ell - 2*beta). It is
    invariant under the reflection theta -> -theta, has one component
    iff beta = 0 and total Dirichlet length ell for every valid beta.
    """
    params = ell if isinstance(ell, GammaParams) else GammaParams(ell, beta)
    ell_pi, beta_pi = params.ell_pi, params.beta_pi
    half = ell_pi / 2
    return BoundaryPartition(
        (
            Arc(beta_pi, half),
            Arc(2 - beta_pi - half, half),
        )
    )


def make_uniform(n: int, ell) -> BoundaryPartition:
    """Uniform n-partition: n arcs of length ell/n, centers 2pi/n apart."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    ell_pi = to_pi(ell)
    _check_ell(ell_pi)
    piece = ell_pi / n
    return BoundaryPartition(
        tuple(Arc(Fraction(2 * k, n) - piece / 2, piece) for k in range(n))
    )


def make_two_component(a, gap_b, ell) -> BoundaryPartition:
    """Two-component partition with arc lengths a, ell-a and gaps gap_b, 2pi-ell-gap_b.

    a is the smaller arc (0 <= a <= ell/2, a = 0 degenerates to one
    component), gap_b the smaller Neumann gap (0 <= gap_b <= (2pi-ell)/2,
    gap_b = 0 merges the arcs). The placement is the canonical one used
    by the angular-shift test-function construction: the small arc is
    centered at pi/2 - sigma and the large one at 3pi/2 + sigma, where
    alpha = ((2pi-ell)/2 - a)/2 and sigma = ((2pi-ell)/2 - gap_b)/2.
    """
    ell_pi = to_pi(ell)
    _check_ell(ell_pi)
    a_pi = to_pi(a)
    b_pi = to_pi(gap_b)
    if float(a_pi) < -ANGLE_TOL or float(a_pi - ell_pi / 2) > ANGLE_TOL:
        raise ValueError(f"a {float(a_pi)}*pi outside [0, {float(ell_pi / 2)}*pi]")
    gap_max = (2 - ell_pi) / 2
    if float(b_pi) < -ANGLE_TOL or float(b_pi - gap_max) > ANGLE_TOL:
        raise ValueError(f"gap_b {float(b_pi)}*pi outside [0, {float(gap_max)}*pi]")
    sigma = (gap_max - b_pi) / 2
    arcs = []
    if _positive_length(a_pi):
        arcs.append(Arc(Fraction(1, 2) - sigma - a_pi / 2, a_pi))
    big = ell_pi - a_pi
    if _positive_length(big):
        arcs.append(Arc(Fraction(3, 2) + sigma - big / 2, big))
    return BoundaryPartition(tuple(arcs))


def dirichlet_measure(p: BoundaryPartition) -> float:
    """Total length of the Dirichlet part, radians."""
    return p.measure


def contains(p: BoundaryPartition, theta, tol: float = ANGLE_TOL) -> Label:
    """Classify theta (float radians or Fraction in pi units)."""
    return p.contains(theta, tol)
