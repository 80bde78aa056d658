"""Angle bookkeeping in units of pi.

Exact rational multiples of pi are kept as `fractions.Fraction` so that
endpoint classification and angular-grid commensurability never suffer
mod-2pi drift; scanned values fall back to binary floats.

Convention used throughout the package: a `Fraction` or `int` passed as
an angle means an exact multiple of pi, a `float` means radians.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union

PiAngle = Union[Fraction, float]

#: tolerance for angle comparisons, in units of pi (~3e-12 rad)
ANGLE_TOL = 1e-12


def to_pi(value) -> PiAngle:
    """Coerce an angle-like value to pi units (Fraction stays exact)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not an angle")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return value / math.pi
    raise TypeError(f"cannot interpret {value!r} as an angle")


def rad(a: PiAngle) -> float:
    """Angle in radians."""
    return float(a) * math.pi


def norm(a: PiAngle) -> PiAngle:
    """Reduce an angle to [0, 2) pi units (exact for Fractions)."""
    if isinstance(a, Fraction):
        return a % 2
    v = math.fmod(float(a), 2.0)
    return v + 2.0 if v < 0 else v


def close(a: PiAngle, b: PiAngle, tol: float = ANGLE_TOL) -> bool:
    """Equality of two angles mod 2pi, within `tol` pi units."""
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return (a - b) % 2 == 0
    d = float(norm(a - b))
    return d <= tol or d >= 2.0 - tol


_PI_FORM = re.compile(r"^([+-]?[0-9./]*)pi$")


def parse_angle(text: str) -> PiAngle:
    """Parse an angle string.

    Accepts exact multiples of pi in the forms ``pi``, ``3pi``,
    ``0.25pi``, ``350/1024pi`` (returned as Fractions in pi units) and
    plain decimals, which are read as radians and returned as floats.
    """
    t = text.strip().replace(" ", "")
    m = _PI_FORM.match(t)
    if m:
        coeff = m.group(1)
        if coeff in ("", "+"):
            return Fraction(1)
        if coeff == "-":
            return Fraction(-1)
        try:
            if "/" in coeff:
                num, den = coeff.split("/")
                return Fraction(int(num), int(den))
            return Fraction(coeff)  # handles "3" and "0.25" exactly
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad angle syntax: {text!r}") from exc
    try:
        return float(t) / math.pi
    except ValueError as exc:
        raise ValueError(f"bad angle syntax: {text!r}") from exc


def format_angle(a: PiAngle) -> str:
    """Format an angle so that `parse_angle` round-trips it exactly."""
    if isinstance(a, Fraction):
        if a.denominator == 1:
            return f"{a.numerator}pi"
        return f"{a.numerator}/{a.denominator}pi"
    return repr(float(a) * math.pi)
