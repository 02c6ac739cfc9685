"""Effective radii of the three track paths inside a constant-curvature bend."""

from dataclasses import dataclass
from math import acos, cos, fabs, radians, sqrt
from typing import Tuple

from .model import DegenerateBend, ValidationError, as_triple, normalize_angle

TRACK_SPACING = radians(120.0)
_TOL = 1e-9


def track_angles(alpha_rad: float) -> Tuple[float, float, float]:
    """Angle of each track contact from the inward direction, tracks t1..t3.

    Track k sits at ``alpha - (k-1)*120deg``; results are wrapped to [0, 2*pi).
    """
    return tuple(normalize_angle(alpha_rad - k * TRACK_SPACING) for k in range(3))


def _law_of_cosines_radius(phi: float, r: float, R: float) -> float:
    # triangle O-A-D: |OD| = R, |OA| = r, angle AOD = phi
    aod = acos(cos(phi))
    ad = sqrt(r * r + R * R - 2.0 * R * r * cos(aod))
    cos_beta = (ad * ad + R * R - r * r) / (2.0 * R * ad)
    return ad * cos_beta


@dataclass(frozen=True)
class BendRadii:
    rho_mm: Tuple[float, float, float]
    alpha_rad: float
    r_mm: float
    R_mm: float

    def __post_init__(self):
        rho = as_triple(self.rho_mm, "rho_mm")
        object.__setattr__(self, "rho_mm", rho)
        slack = _TOL * self.R_mm
        for value in rho:
            if not (self.R_mm - self.r_mm - slack <= value <= self.R_mm + self.r_mm + slack):
                raise ValidationError(f"radius {value} outside [R - r, R + r]")
        if fabs(sum(rho) - 3.0 * self.R_mm) > max(_TOL * 3.0 * self.R_mm, 1e-12):
            raise ValidationError(f"radii sum {sum(rho)} differs from 3R = {3.0 * self.R_mm}")

    @property
    def mean_mm(self) -> float:
        return sum(self.rho_mm) / 3.0


def effective_radii(alpha_rad: float, r_mm: float, R_mm: float) -> BendRadii:
    """Radius of the arc traced by each track for robot roll ``alpha_rad``.

    Uses ``rho_k = R - r*cos(phi_k)`` and cross-checks every value against the
    triangle construction through the bend-axis foot point D.
    """
    if r_mm < 0:
        raise ValidationError("pipe radius must be >= 0")
    if not R_mm > r_mm:
        raise DegenerateBend(f"bend radius {R_mm} mm must exceed pipe radius {r_mm} mm")
    rho = []
    for phi in track_angles(alpha_rad):
        closed = R_mm - r_mm * cos(phi)
        triangle = _law_of_cosines_radius(phi, r_mm, R_mm)
        if fabs(closed - triangle) > _TOL * R_mm:
            raise ArithmeticError(f"radius routes disagree: {closed!r} vs {triangle!r}")
        rho.append(closed)
    return BendRadii(tuple(rho), normalize_angle(alpha_rad), r_mm, R_mm)
