"""CSA-RSS positioning from a single LED and a single PD.

Pipeline: invert the measured power to the slant distance, derive the
elevation angle and horizontal distance, build the complementary and
supplementary angles (90 - theta and 90 + theta), project the horizontal
distance through each, average the two projections into the fused offset, and
anchor that offset at the LED's floor projection along a configured azimuth.

The angle fed to the CSA construction is the elevation angle (90 degrees when
the PD sits directly under the LED), not the from-normal angle used by the
channel gains; the conversion between the two is explicit.

The fused values are radial displacement magnitudes, not room coordinates: at
the center position they are zero. Anchoring turns them into coordinates, and
needs an azimuth because a single intensity measurement cannot disambiguate
direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .channel import LedSpec, PdSpec, concentrator_gain
from .errors import DomainError, EmptyInput, NonPositivePower, PowerTooHigh
from .geometry import Point3, euclidean_distance

__all__ = [
    "CsaAngles",
    "OffsetEstimate",
    "EstimateRecord",
    "invert_power_to_distance",
    "csa_angles",
    "offset_estimate",
    "anchor_estimate",
    "positioning_error",
    "average_error",
    "estimate_position",
]

# Allowance for one rounding step when the inverted distance lands a hair
# under the vertical separation at the on-axis maximum.
_INVERSION_SLACK = 1e-9


@dataclass(frozen=True)
class CsaAngles:
    """Incidence elevation angle with its complementary and supplementary angles."""

    incidence: float
    complementary: float
    supplementary: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.incidence <= 90.0:
            raise DomainError(
                f"incidence must lie in [0, 90] degrees, got {self.incidence}"
            )
        # Recomputation equality is exact in floating point, which also makes
        # complementary + supplementary == 180 hold exactly.
        if self.complementary != 90.0 - self.incidence:
            raise DomainError("complementary must equal 90 - incidence exactly")
        if self.supplementary != 90.0 + self.incidence:
            raise DomainError("supplementary must equal 90 + incidence exactly")


@dataclass(frozen=True)
class OffsetEstimate:
    """Per-axis projections of the horizontal distance and their fused means.

    The fused fields are displacement magnitudes from the LED's floor
    projection; z_fused is always 0 because the PD moves on the floor.
    """

    x_comp: float
    y_comp: float
    x_supp: float
    y_supp: float
    x_fused: float
    y_fused: float
    z_fused: float = 0.0

    def __post_init__(self) -> None:
        if self.x_fused != (self.x_comp + self.x_supp) / 2.0:
            raise DomainError("x_fused must be the mean of x_comp and x_supp")
        if self.y_fused != (self.y_comp + self.y_supp) / 2.0:
            raise DomainError("y_fused must be the mean of y_comp and y_supp")
        if self.z_fused != 0.0:
            raise DomainError("z_fused must be 0")


@dataclass(frozen=True)
class EstimateRecord:
    """One position estimate with every intermediate quantity recorded.

    actual and positioning_error are None for one-shot estimates where the
    true position is unknown.
    """

    actual: Point3 | None
    estimated: Point3
    offsets: OffsetEstimate
    angles: CsaAngles
    measured_power: float
    inverted_distance: float
    positioning_error: float | None

    def __post_init__(self) -> None:
        if self.estimated.z != 0.0:
            raise DomainError("estimated position must lie on the floor plane")
        if self.positioning_error is not None and self.positioning_error < 0.0:
            raise DomainError("positioning_error must be >= 0")


def invert_power_to_distance(
    measured_power: float, led: LedSpec, pd: PdSpec, vertical_separation: float
) -> float:
    """Invert the coplanar channel model to the slant distance.

    With cos(theta) = V/d the received power collapses to
    P = K * V^(m+1) / d^(m+3) with K = P_trans*(m+1)*A*h*g/(2*pi), so
    d = (K * V^(m+1) / P) ^ (1/(m+3)), the unique solution with d >= V.

    Raises:
        NonPositivePower: when measured_power <= 0.
        PowerTooHigh: when the implied distance falls below the vertical
            separation, i.e. the power exceeds the on-axis maximum.
        DomainError: when vertical_separation <= 0.
    """

    if not measured_power > 0.0:
        raise NonPositivePower(f"measured power must be > 0, got {measured_power}")
    if not vertical_separation > 0.0:
        raise DomainError(
            f"vertical separation must be > 0, got {vertical_separation}"
        )
    m = led.lambertian_order
    gain = concentrator_gain(0.0, pd.refractive_index, pd.fov)
    k = led.transmit_power * (m + 1.0) * pd.area * pd.filter_gain * gain / (2.0 * math.pi)
    distance = (k * vertical_separation ** (m + 1.0) / measured_power) ** (1.0 / (m + 3.0))
    if distance < vertical_separation * (1.0 - _INVERSION_SLACK):
        raise PowerTooHigh(
            f"measured power {measured_power} implies distance {distance} below "
            f"the vertical separation {vertical_separation}"
        )
    return max(distance, vertical_separation)


def csa_angles(incidence_elevation: float) -> CsaAngles:
    """Complementary (90 - theta) and supplementary (90 + theta) angles.

    Raises:
        DomainError: when the elevation is outside [0, 90] degrees.
    """

    if not 0.0 <= incidence_elevation <= 90.0:
        raise DomainError(
            f"incidence elevation must lie in [0, 90] degrees, got {incidence_elevation}"
        )
    return CsaAngles(
        incidence=incidence_elevation,
        complementary=90.0 - incidence_elevation,
        supplementary=90.0 + incidence_elevation,
    )


def offset_estimate(d_hor: float, angles: CsaAngles) -> OffsetEstimate:
    """Project the horizontal distance through both angles and fuse the results.

    comp projections use cos(complementary), supp projections sin(supplementary);
    both axes carry the same value because the construction is radial. The
    fused value therefore equals d_hor * (sin(theta) + cos(theta)) / 2.

    Raises:
        DomainError: when d_hor < 0.
    """

    if d_hor < 0.0:
        raise DomainError(f"horizontal distance must be >= 0, got {d_hor}")
    comp = d_hor * math.cos(math.radians(angles.complementary))
    supp = d_hor * math.sin(math.radians(angles.supplementary))
    fused = (comp + supp) / 2.0
    return OffsetEstimate(
        x_comp=comp,
        y_comp=comp,
        x_supp=supp,
        y_supp=supp,
        x_fused=fused,
        y_fused=fused,
    )


def anchor_estimate(
    offsets: OffsetEstimate, led_floor_projection: tuple[float, float], azimuth: float
) -> Point3:
    """Place the fused offset at the LED's floor projection along an azimuth.

    The per-axis displacements are x_fused*cos(azimuth) and y_fused*sin(azimuth);
    since the fused offsets are equal by construction, the radial displacement
    magnitude already equals the fused offset (cos^2 + sin^2 = 1) and no extra
    normalization factor is needed. For the 225-degree diagonal each axis moves
    by x_fused/sqrt(2) toward the origin corner.

    Raises:
        DomainError: when the azimuth is outside [0, 360).
    """

    if not 0.0 <= azimuth < 360.0:
        raise DomainError(f"azimuth must lie in [0, 360) degrees, got {azimuth}")
    led_x, led_y = led_floor_projection
    return Point3(
        led_x + offsets.x_fused * math.cos(math.radians(azimuth)),
        led_y + offsets.y_fused * math.sin(math.radians(azimuth)),
        0.0,
    )


def positioning_error(actual: Point3, estimated: Point3) -> float:
    """3-D Euclidean distance between the actual and estimated positions."""

    return euclidean_distance(actual, estimated)


def average_error(errors: list[float] | tuple[float, ...]) -> float:
    """Arithmetic mean of a non-empty error list.

    Raises:
        EmptyInput: when the list is empty.
    """

    if len(errors) == 0:
        raise EmptyInput("average_error needs at least one element")
    return sum(errors) / len(errors)


def estimate_position(
    measured_power: float,
    led: LedSpec,
    pd: PdSpec,
    azimuth: float,
    actual: Point3 | None = None,
    vertical_separation: float | None = None,
) -> EstimateRecord:
    """Run the full CSA-RSS pipeline for one power measurement.

    vertical_separation defaults to the LED height, i.e. a PD on the floor.
    When the actual position is supplied the positioning error is filled in.
    """

    if vertical_separation is None:
        vertical_separation = led.position.z
    distance = invert_power_to_distance(measured_power, led, pd, vertical_separation)
    elevation = math.degrees(math.asin(min(vertical_separation / distance, 1.0)))
    d_hor = math.sqrt(max(distance**2 - vertical_separation**2, 0.0))
    angles = csa_angles(elevation)
    offsets = offset_estimate(d_hor, angles)
    estimated = anchor_estimate(offsets, (led.position.x, led.position.y), azimuth)
    error = None if actual is None else positioning_error(actual, estimated)
    return EstimateRecord(
        actual=actual,
        estimated=estimated,
        offsets=offsets,
        angles=angles,
        measured_power=measured_power,
        inverted_distance=distance,
        positioning_error=error,
    )
