"""Experiment orchestration: position sweeps, figure-style sweeps, replication.

Three runners cover the published experiments: run_position_sweep walks the
PD over the configured floor positions with fully coupled geometry;
run_power_distance_sweep evaluates the coupled channel for each configured
transmit power; run_angle_sweep reproduces the figure parameterization that
holds the angle factor fixed while the distance varies (geometrically
impossible for one fixed LED, but that is how the published families are
drawn; both modes exist and are named).

replication_report compares computed values against the embedded reference
dataset and grades each check REPRODUCED, TREND-ONLY, or NOT-REPRODUCIBLE.
Every check carries the grade it is expected to earn; a report regresses only
when a check's actual grade differs from the expected one, so documented
defects of the reference data stay visible without failing the run.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum

from .channel import ChannelSample, LedSpec, PdSpec, received_power, received_power_at
from .errors import DomainError, ValidationError
from .estimator import (
    EstimateRecord,
    average_error,
    estimate_position,
    positioning_error,
)
from .geometry import LinkGeometry, Point3, RoomSpec, diagonal_positions

__all__ = [
    "ScenarioConfig",
    "SweepRow",
    "SweepSummary",
    "SweepResult",
    "Verdict",
    "ReplicationCheck",
    "ReplicationReport",
    "default_config",
    "run_position_sweep",
    "run_power_distance_sweep",
    "run_angle_sweep",
    "replication_report",
    "REFERENCE_DATASET_VERSION",
]

# ---------------------------------------------------------------------------
# Reference dataset (versioned, embedded so the replication report runs
# offline). Values are the published ten-position table, figure endpoints,
# and headline claims of the study being replicated.
# ---------------------------------------------------------------------------

REFERENCE_DATASET_VERSION = "1.0.0"

# Actual PD coordinates (x = y on the half-diagonal), positions 1..10.
REFERENCE_ACTUAL_XY = (2.50, 2.23, 1.96, 1.69, 1.42, 1.15, 0.88, 0.61, 0.34, 0.07)

# Published estimated coordinates (x = y). Position 8 is printed asymmetric
# in the source, (0.5591, 0.5519), against its own stated X/Y symmetry; only
# the symmetric reading 0.5591 reproduces the published error 0.0719 (within
# 8.4e-5 versus 5.3e-3 as printed), so the symmetric value is used here and
# the as-printed pair is graded separately.
REFERENCE_ESTIMATED_XY = (
    2.5009,
    2.2336,
    1.9515,
    1.6724,
    1.3933,
    1.1149,
    0.8363,
    0.5591,
    0.2851,
    0.0136,
)
REFERENCE_POSITION8_AS_PUBLISHED = (0.5591, 0.5519)

# Published positioning-error column and its headline aggregates.
REFERENCE_ERRORS = (
    0.0013,
    0.0050,
    0.0118,
    0.0247,
    0.0376,
    0.0495,
    0.0616,
    0.0719,
    0.0776,
    0.0797,
)
REFERENCE_MEAN_ERROR = 0.042
REFERENCE_FIRST_EIGHT_MEAN = 0.032  # headline "3.2 cm in 80% of the positions"
REFERENCE_ERROR_SPREAD = 0.0784  # "increases by 7.84%" between positions 1 and 10

# Published link distances at the first and tenth positions.
REFERENCE_CENTER_DISTANCE = 3.0
REFERENCE_CORNER_DISTANCE = 4.56

# Published received-power families: per transmit power, the plotted values
# at the center (3 m) and corner (4.56 m) distances, in watts as printed.
REFERENCE_POWER_FAMILIES = {
    8.0: (2.34, 1.02),
    10.0: (2.92, 1.29),
    12.0: (3.51, 1.54),
    15.0: (4.5, 1.92),
}
REFERENCE_PLOTTED_PEAK_POWER = 4.5  # at 3 m, 90 degrees, 15 W

# Per-axis displacement from the LED floor projection implied by the
# published corner estimate: 2.5 - 0.0136.
REFERENCE_IMPLIED_CORNER_DISPLACEMENT = 2.4864

# Half a unit in the last printed digit of the reference tables (4 decimals)
# and of the headline values (3 decimals / coarse figure readouts).
_TOL_TABLE = 5e-4
_TOL_HEADLINE = 5e-4
_TOL_DISTANCE = 5e-3


# ---------------------------------------------------------------------------
# Configuration and sweep results
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScenarioConfig:
    """Complete description of one experiment scenario.

    pd_template's position is overridden per run; pd_positions are the floor
    points the position sweep visits. distance_range is the span for the
    figure-style sweeps; None derives it from the configured positions.
    """

    room: RoomSpec
    led: LedSpec
    pd_template: PdSpec
    pd_positions: tuple[Point3, ...]
    transmit_powers: tuple[float, ...]
    sweep_elevations: tuple[float, ...]
    azimuth: float
    distance_samples: int = 50
    distance_range: tuple[float, float] | None = None

    def __post_init__(self) -> None:
        if len(self.pd_positions) == 0:
            raise ValidationError("pd_positions must not be empty")
        for i, pos in enumerate(self.pd_positions, start=1):
            if pos.z != 0.0:
                raise ValidationError(
                    f"pd position {i} must lie on the floor plane (z = 0), got z={pos.z}"
                )
            if not self.room.contains_floor_point(pos):
                raise ValidationError(
                    f"pd position {i} at ({pos.x}, {pos.y}) is outside the room floor"
                )
        if len(self.transmit_powers) == 0:
            raise ValidationError("transmit_powers must not be empty")
        for p in self.transmit_powers:
            if not p > 0.0:
                raise ValidationError(f"transmit power must be > 0, got {p}")
        if len(self.sweep_elevations) == 0:
            raise ValidationError("sweep_elevations must not be empty")
        if not 0.0 <= self.azimuth < 360.0:
            raise ValidationError(
                f"azimuth must lie in [0, 360) degrees, got {self.azimuth}"
            )
        if self.distance_samples < 2:
            raise ValidationError(
                f"distance_samples must be >= 2, got {self.distance_samples}"
            )
        if self.distance_range is not None:
            lo, hi = self.distance_range
            if not 0.0 < lo <= hi:
                raise ValidationError(
                    f"distance_range must satisfy 0 < low <= high, got ({lo}, {hi})"
                )


def default_config() -> ScenarioConfig:
    """The published configuration: 5x5x3 room, one ceiling LED, ten floor points.

    The LED transmit power defaults to 15 W, the family whose plotted peak
    anchors the absolute-power comparison; positioning results do not depend
    on it in this noiseless model.
    """

    room = RoomSpec(width=5.0, length=5.0, height=3.0)
    led = LedSpec(
        position=Point3(2.5, 2.5, 3.0),
        transmit_power=15.0,
        half_power_angle=60.0,
    )
    positions = diagonal_positions(
        room, count=10, start=Point3(2.5, 2.5, 0.0), end=Point3(0.07, 0.07, 0.0)
    )
    pd = PdSpec(
        position=positions[0],
        area=2.25e-6,
        fov=90.0,
        filter_gain=1.0,
        refractive_index=1.5,
    )
    return ScenarioConfig(
        room=room,
        led=led,
        pd_template=pd,
        pd_positions=positions,
        transmit_powers=(8.0, 10.0, 12.0, 15.0),
        sweep_elevations=(60.0, 70.0, 80.0, 90.0),
        azimuth=225.0,
    )


@dataclass(frozen=True)
class SweepRow:
    """One position of a sweep: geometry, channel sample, and estimate."""

    index: int
    position: Point3
    geometry: LinkGeometry
    channel: ChannelSample
    estimate: EstimateRecord


@dataclass(frozen=True)
class SweepSummary:
    """Aggregates over a position sweep."""

    average_error: float
    max_error: float
    min_error: float
    error_spread: float
    min_power: float
    max_power: float


@dataclass(frozen=True)
class SweepResult:
    """Ordered sweep rows plus their summary."""

    rows: tuple[SweepRow, ...]
    summary: SweepSummary

    def __post_init__(self) -> None:
        indexes = [row.index for row in self.rows]
        if indexes != sorted(indexes):
            raise ValidationError("sweep rows must be ordered by position index")


def _position_row(config: ScenarioConfig, index: int, position: Point3) -> SweepRow:
    pd = replace(config.pd_template, position=position)
    sample = received_power(config.led, pd)
    estimate = estimate_position(
        sample.received_power,
        config.led,
        pd,
        azimuth=config.azimuth,
        actual=position,
        vertical_separation=sample.geometry.vertical_separation,
    )
    return SweepRow(
        index=index,
        position=position,
        geometry=sample.geometry,
        channel=sample,
        estimate=estimate,
    )


def run_position_sweep(config: ScenarioConfig, workers: int | None = None) -> SweepResult:
    """Walk the PD over the configured positions and estimate each one.

    Rows are independent; workers > 1 evaluates them on a thread pool but the
    result order always follows the configured position order, so output is
    identical regardless of parallelism.

    Raises:
        DomainError subclasses from the underlying modules, annotated with the
        1-based position index.
    """

    def row(args: tuple[int, Point3]) -> SweepRow:
        index, position = args
        try:
            return _position_row(config, index, position)
        except DomainError as exc:
            raise type(exc)(f"position {index}: {exc}") from exc

    numbered = list(enumerate(config.pd_positions, start=1))
    if workers is not None and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = tuple(pool.map(row, numbered))
    else:
        rows = tuple(row(item) for item in numbered)

    errors = [r.estimate.positioning_error for r in rows]
    powers = [r.channel.received_power for r in rows]
    summary = SweepSummary(
        average_error=average_error(errors),
        max_error=max(errors),
        min_error=min(errors),
        error_spread=max(errors) - min(errors),
        min_power=min(powers),
        max_power=max(powers),
    )
    return SweepResult(rows=rows, summary=summary)


def run_power_distance_sweep(
    config: ScenarioConfig,
) -> tuple[tuple[float, float, float], ...]:
    """(transmit_power, distance, received_power) over powers x positions.

    Rows are grouped by transmit power in configured order, distance
    ascending within each group; the geometry is fully coupled as in the
    position sweep.
    """

    by_distance = sorted(
        (replace(config.pd_template, position=pos) for pos in config.pd_positions),
        key=lambda pd: (pd.position.x - config.led.position.x) ** 2
        + (pd.position.y - config.led.position.y) ** 2,
    )
    rows = []
    for power in config.transmit_powers:
        led = replace(config.led, transmit_power=power)
        for pd in by_distance:
            sample = received_power(led, pd)
            rows.append((power, sample.geometry.slant_distance, sample.received_power))
    return tuple(rows)


def _linspace(low: float, high: float, count: int) -> list[float]:
    return [low + i * (high - low) / (count - 1) for i in range(count)]


def _derived_distance_range(config: ScenarioConfig) -> tuple[float, float]:
    slants = [
        math.sqrt(
            (pos.x - config.led.position.x) ** 2
            + (pos.y - config.led.position.y) ** 2
            + (pos.z - config.led.position.z) ** 2
        )
        for pos in config.pd_positions
    ]
    return min(slants), max(slants)


def run_angle_sweep(
    config: ScenarioConfig,
) -> tuple[tuple[float, float, float], ...]:
    """(elevation, distance, received_power) with the angle factor held fixed.

    This is the figure parameterization: each family keeps its labelled
    elevation across the whole distance axis, so only the inverse-square term
    varies within a family. Elevation e maps to the from-normal angle 90 - e
    for both channel gains.

    Raises:
        DomainError: when a configured elevation is outside (0, 90] degrees.
    """

    for elevation in config.sweep_elevations:
        if not 0.0 < elevation <= 90.0:
            raise DomainError(
                f"sweep elevation must lie in (0, 90] degrees, got {elevation}"
            )
    low, high = config.distance_range or _derived_distance_range(config)
    distances = _linspace(low, high, config.distance_samples)
    rows = []
    for elevation in config.sweep_elevations:
        normal = 90.0 - elevation
        for distance in distances:
            power = received_power_at(
                config.led, config.pd_template, distance, normal, normal
            )
            rows.append((elevation, distance, power))
    return tuple(rows)


# ---------------------------------------------------------------------------
# Replication report
# ---------------------------------------------------------------------------


class Verdict(str, Enum):
    """Grade of one replication check."""

    REPRODUCED = "REPRODUCED"
    TREND_ONLY = "TREND-ONLY"
    NOT_REPRODUCIBLE = "NOT-REPRODUCIBLE"


@dataclass(frozen=True)
class ReplicationCheck:
    """One graded comparison between a computed and a reference value.

    difference is the absolute gap for value checks and None for checks whose
    computed column is already a violation count. expected is the grade the
    check is known to earn; verdict != expected marks a regression.
    """

    name: str
    reference: float
    computed: float
    difference: float | None
    verdict: Verdict
    expected: Verdict
    note: str

    @property
    def regressed(self) -> bool:
        return self.verdict != self.expected


@dataclass(frozen=True)
class ReplicationReport:
    """All checks plus the modeling assumptions they rest on."""

    dataset_version: str
    checks: tuple[ReplicationCheck, ...]
    assumptions: tuple[str, ...]

    @property
    def regressions(self) -> tuple[ReplicationCheck, ...]:
        return tuple(check for check in self.checks if check.regressed)

    @property
    def ok(self) -> bool:
        return len(self.regressions) == 0


def _value_check(
    name: str,
    reference: float,
    computed: float,
    tol: float,
    expected: Verdict,
    note: str,
    trend_tol: float | None = None,
) -> ReplicationCheck:
    """Grade a value comparison: REPRODUCED within tol, otherwise TREND-ONLY
    within trend_tol when given, otherwise NOT-REPRODUCIBLE."""

    difference = abs(computed - reference)
    if difference <= tol:
        verdict = Verdict.REPRODUCED
    elif trend_tol is not None and difference <= trend_tol:
        verdict = Verdict.TREND_ONLY
    else:
        verdict = Verdict.NOT_REPRODUCIBLE
    return ReplicationCheck(name, reference, computed, difference, verdict, expected, note)


def _count_check(
    name: str, violations: int, expected: Verdict, note: str
) -> ReplicationCheck:
    """Grade a trend check by its violation count: zero means REPRODUCED."""

    verdict = Verdict.REPRODUCED if violations == 0 else Verdict.NOT_REPRODUCIBLE
    return ReplicationCheck(
        name, 0.0, float(violations), None, verdict, expected, note
    )


def replication_report(config: ScenarioConfig | None = None) -> ReplicationReport:
    """Compare computed results against the embedded reference dataset.

    Designed for the default configuration; the reference values only
    describe that scenario.
    """

    if config is None:
        config = default_config()
    sweep = run_position_sweep(config)
    rows = sweep.rows

    checks: list[ReplicationCheck] = []

    checks.append(
        _value_check(
            "center_slant_distance",
            REFERENCE_CENTER_DISTANCE,
            rows[0].geometry.slant_distance,
            _TOL_DISTANCE,
            Verdict.REPRODUCED,
            "LED-PD distance at the first position",
        )
    )
    checks.append(
        _value_check(
            "corner_slant_distance",
            REFERENCE_CORNER_DISTANCE,
            rows[-1].geometry.slant_distance,
            _TOL_DISTANCE,
            Verdict.REPRODUCED,
            "LED-PD distance at the tenth position",
        )
    )
    checks.append(
        _value_check(
            "center_elevation_angle",
            90.0,
            rows[0].geometry.elevation_angle,
            1e-9,
            Verdict.REPRODUCED,
            "CSA angles equal 90 degrees directly under the LED",
        )
    )

    # Reference error column recomputed from the reference coordinate pairs.
    recomputed = [
        positioning_error(Point3(a, a, 0.0), Point3(e, e, 0.0))
        for a, e in zip(REFERENCE_ACTUAL_XY, REFERENCE_ESTIMATED_XY)
    ]
    max_row_gap = max(
        abs(r - published) for r, published in zip(recomputed, REFERENCE_ERRORS)
    )
    checks.append(
        _value_check(
            "reference_error_column",
            0.0,
            max_row_gap,
            _TOL_TABLE,
            Verdict.REPRODUCED,
            "max per-row gap between errors recomputed from the reference "
            "coordinate pairs and the published column (4-decimal rounding)",
        )
    )
    checks.append(
        _value_check(
            "reference_mean_error",
            REFERENCE_MEAN_ERROR,
            average_error(REFERENCE_ERRORS),
            _TOL_HEADLINE,
            Verdict.REPRODUCED,
            "mean of the published error column vs the published 0.042 m headline",
        )
    )
    first_eight = average_error(REFERENCE_ERRORS[:8])
    checks.append(
        _value_check(
            "first_eight_mean_error",
            REFERENCE_FIRST_EIGHT_MEAN,
            first_eight,
            _TOL_HEADLINE,
            Verdict.TREND_ONLY,
            "published headline 3.2 cm for 80% of positions; the column mean "
            "is 0.032925 m, which rounds to 3.3 cm, not 3.2",
            trend_tol=2e-3,
        )
    )

    # Published row-8 estimate as printed, graded against the published error.
    a8 = REFERENCE_ACTUAL_XY[7]
    e8x, e8y = REFERENCE_POSITION8_AS_PUBLISHED
    row8_as_published = positioning_error(Point3(a8, a8, 0.0), Point3(e8x, e8y, 0.0))
    checks.append(
        _value_check(
            "reference_position8_symmetry",
            REFERENCE_ERRORS[7],
            row8_as_published,
            _TOL_TABLE,
            Verdict.NOT_REPRODUCIBLE,
            "as printed the position-8 estimate (0.5591, 0.5519) breaks the "
            "stated X/Y symmetry and misses the published error by 5.3e-3; "
            "the symmetric reading 0.5591 reproduces it within 8.4e-5",
        )
    )

    # Absolute received-power scale of the published curves.
    center_power = rows[0].channel.received_power
    checks.append(
        _value_check(
            "published_absolute_power",
            REFERENCE_PLOTTED_PEAK_POWER,
            center_power,
            _TOL_HEADLINE,
            Verdict.NOT_REPRODUCIBLE,
            "closed-form received power at 3 m, 90 degrees, 15 W is "
            f"{center_power:.4g} W against the plotted 4.5 W, a factor of "
            f"{REFERENCE_PLOTTED_PEAK_POWER / center_power:.3g}; no scaling "
            "constant is published",
        )
    )

    # Decay ratio across the distance span at fixed transmit power.
    corner_power = rows[-1].channel.received_power
    plotted_center, plotted_corner = REFERENCE_POWER_FAMILIES[15.0]
    checks.append(
        _value_check(
            "published_power_decay_ratio",
            plotted_center / plotted_corner,
            center_power / corner_power,
            0.05,
            Verdict.NOT_REPRODUCIBLE,
            "published curves decay by ~2.34x over the diagonal, matching pure "
            "inverse-square; the modelled decay is d^-(m+3), a 5.35x drop",
        )
    )

    # Estimated coordinates of the reference table vs the estimator pipeline.
    corner_fused = rows[-1].estimate.offsets.x_fused
    attainable = rows[-1].geometry.horizontal_distance * math.sqrt(2.0) / 2.0
    checks.append(
        _value_check(
            "published_estimated_coordinates",
            REFERENCE_IMPLIED_CORNER_DISPLACEMENT,
            corner_fused,
            _TOL_TABLE,
            Verdict.NOT_REPRODUCIBLE,
            "the published corner estimate implies a 2.4864 m per-axis "
            "displacement; the equations yield a fused offset of "
            f"{corner_fused:.4f} m and cannot exceed {attainable:.4f} m, so "
            "the published coordinate generation procedure is unknown",
        )
    )

    # Trend checks over the implemented pipeline.
    power_rows = run_power_distance_sweep(config)
    power_violations = 0
    for power in config.transmit_powers:
        family = [p for tp, _, p in power_rows if tp == power]
        power_violations += sum(
            1 for a, b in zip(family, family[1:]) if not b < a
        )
    checks.append(
        _count_check(
            "power_monotonic_decrease",
            power_violations,
            Verdict.REPRODUCED,
            "received power strictly decreases over positions 1 to 10 for "
            "every configured transmit power",
        )
    )

    angle_rows = run_angle_sweep(config)
    ordered = sorted(set(config.sweep_elevations), reverse=True)
    families = {
        elevation: [p for e, _, p in angle_rows if e == elevation]
        for elevation in ordered
    }
    angle_violations = 0
    for higher, lower in zip(ordered, ordered[1:]):
        angle_violations += sum(
            1 for a, b in zip(families[higher], families[lower]) if not a > b
        )
    checks.append(
        _count_check(
            "angle_family_ordering",
            angle_violations,
            Verdict.REPRODUCED,
            "figure families ordered pointwise by elevation, 90 > 80 > 70 > 60",
        )
    )

    pipeline_errors = [row.estimate.positioning_error for row in rows]
    error_violations = sum(
        1 for a, b in zip(pipeline_errors, pipeline_errors[1:]) if b < a
    )
    checks.append(
        _count_check(
            "pipeline_error_monotonic",
            error_violations,
            Verdict.REPRODUCED,
            "positioning error is zero at the center and non-decreasing "
            "toward the corner, matching the published trend",
        )
    )

    spread = sweep.summary.error_spread
    if abs(spread - REFERENCE_ERROR_SPREAD) <= _TOL_HEADLINE:
        spread_verdict = Verdict.REPRODUCED
    elif error_violations == 0:
        spread_verdict = Verdict.TREND_ONLY
    else:
        spread_verdict = Verdict.NOT_REPRODUCIBLE
    checks.append(
        ReplicationCheck(
            "pipeline_error_spread",
            REFERENCE_ERROR_SPREAD,
            spread,
            abs(spread - REFERENCE_ERROR_SPREAD),
            spread_verdict,
            Verdict.TREND_ONLY,
            "difference between the tenth and first position errors; the "
            "published 0.0784 m is not recoverable from the equations, the "
            "growth trend is",
        )
    )

    assumptions = (
        "vertical separation V in the horizontal-distance relation is read as "
        "the LED-PD height difference (3.0 m in the default room)",
        "figure-mode sweeps hold the angle factor fixed across the distance "
        "axis as the published families do; the position sweep couples the "
        "angles to the true geometry",
        "a single-LED intensity measurement cannot disambiguate direction, so "
        "estimates are anchored along the configured azimuth (225 degrees for "
        "the published half-diagonal)",
        "the position sweep runs at 15 W; positioning results are "
        "power-independent in this noiseless model",
        "position-8 estimated coordinates of the reference table use the "
        "symmetric reading, see reference_position8_symmetry",
    )
    return ReplicationReport(
        dataset_version=REFERENCE_DATASET_VERSION,
        checks=tuple(checks),
        assumptions=assumptions,
    )
