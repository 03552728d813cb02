"""Spherical geometry of a Poisson satellite shell seen from the ground.

Satellites form a homogeneous Poisson process of density ``density`` on a
sphere of radius ``earth_radius + altitude``.  A ground user at the north
pole of the Earth sphere sees exactly the spherical cap cut off by its
local tangent plane; everything below the horizon is ignored.  All lengths
are in meters, areas in square meters, densities in points per square
meter.
"""

import math
from dataclasses import dataclass

import numpy as np

EARTH_RADIUS_M = 6.371e6


class InvalidConfigError(ValueError):
    """A scenario parameter violates its admissible range."""


@dataclass(frozen=True)
class SystemConfig:
    """Scenario parameters for one downlink coverage analysis.

    Attributes
    ----------
    altitude : float
        Shell altitude above the Earth surface, meters.
    density : float
        Intensity of the Poisson process on the shell, satellites per m^2.
    earth_radius : float
        Earth radius in meters.
    path_loss_exponent : float
        Power-law exponent, must exceed 2 for the interference integrals
        to converge.
    nakagami_m : int
        Integer Nakagami fading parameter (1 recovers Rayleigh).
    sir_threshold : float
        SIR decoding threshold (linear scale).
    """

    altitude: float
    density: float
    earth_radius: float = EARTH_RADIUS_M
    path_loss_exponent: float = 3.5
    nakagami_m: int = 1
    sir_threshold: float = 1.0

    def __post_init__(self):
        if not self.earth_radius > 0.0:
            raise InvalidConfigError(f"earth_radius must be positive, got {self.earth_radius}")
        if not self.altitude > 0.0:
            raise InvalidConfigError(f"altitude must be positive, got {self.altitude}")
        if not self.density > 0.0:
            raise InvalidConfigError(f"density must be positive, got {self.density}")
        if not self.path_loss_exponent > 2.0:
            raise InvalidConfigError(
                f"path_loss_exponent must exceed 2, got {self.path_loss_exponent}"
            )
        if not isinstance(self.nakagami_m, int) or isinstance(self.nakagami_m, bool):
            raise InvalidConfigError(f"nakagami_m must be an integer, got {self.nakagami_m!r}")
        if self.nakagami_m < 1:
            raise InvalidConfigError(f"nakagami_m must be >= 1, got {self.nakagami_m}")
        if not self.sir_threshold > 0.0:
            raise InvalidConfigError(f"sir_threshold must be positive, got {self.sir_threshold}")


@dataclass(frozen=True)
class DerivedGeometry:
    """Quantities fixed by the config: shell radius, horizon, cap size."""

    orbit_radius: float
    max_distance: float
    cap_area: float
    visibility_probability: float


def derive(config: SystemConfig) -> DerivedGeometry:
    """Compute the visible-cap geometry for a scenario.

    The tangent plane at the user cuts the shell at slant range
    ``sqrt(orbit_radius^2 - earth_radius^2)``.  By the hat-box theorem the
    cap area is ``2 pi orbit_radius altitude``, and the probability that
    at least one satellite is visible is one minus the Poisson void
    probability of that cap.
    """
    r_e = config.earth_radius
    r_s = r_e + config.altitude
    max_distance = math.sqrt(r_s * r_s - r_e * r_e)
    cap_area = 2.0 * math.pi * r_s * config.altitude
    visibility = -math.expm1(-config.density * cap_area)
    return DerivedGeometry(
        orbit_radius=r_s,
        max_distance=max_distance,
        cap_area=cap_area,
        visibility_probability=visibility,
    )


def expected_visible_count(config: SystemConfig, geo: DerivedGeometry) -> float:
    """Mean number of satellites above the horizon."""
    return config.density * geo.cap_area


def distance_from_height(z, geo: DerivedGeometry, config: SystemConfig):
    """Slant range to a satellite at height ``z`` above the Earth center.

    For a user at the north pole, a satellite on the shell whose
    projection onto the pole axis is ``z`` sits at distance
    ``sqrt(orbit_radius^2 + earth_radius^2 - 2 earth_radius z)``.  The map
    is a decreasing bijection from heights ``[earth_radius, orbit_radius]``
    onto distances ``[altitude, max_distance]``; together with the hat-box
    theorem it turns uniform heights into the correct distance law.

    Accepts a scalar or ndarray; raises ValueError for heights outside the
    visible cap.
    """
    z_arr = np.asarray(z, dtype=float)
    r_e = config.earth_radius
    r_s = geo.orbit_radius
    tol = 1e-9 * r_s
    if np.any(z_arr < r_e - tol) or np.any(z_arr > r_s + tol):
        raise ValueError(f"height outside the visible cap [{r_e}, {r_s}]")
    sq = r_s * r_s + r_e * r_e - 2.0 * r_e * np.clip(z_arr, r_e, r_s)
    out = np.sqrt(sq)
    return float(out) if np.isscalar(z) or z_arr.ndim == 0 else out


def height_from_distance(r, geo: DerivedGeometry, config: SystemConfig):
    """Inverse of :func:`distance_from_height` on ``[altitude, max_distance]``."""
    r_arr = np.asarray(r, dtype=float)
    r_e = config.earth_radius
    r_s = geo.orbit_radius
    tol = 1e-9 * r_s
    if np.any(r_arr < config.altitude - tol) or np.any(r_arr > geo.max_distance + tol):
        raise ValueError(
            f"distance outside the visible range [{config.altitude}, {geo.max_distance}]"
        )
    clipped = np.clip(r_arr, config.altitude, geo.max_distance)
    out = (r_s * r_s + r_e * r_e - clipped * clipped) / (2.0 * r_e)
    return float(out) if np.isscalar(r) or r_arr.ndim == 0 else out
