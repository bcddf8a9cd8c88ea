"""Configuration ingestion and result emission.

Config files are plain text, one dotted key per line:

    # comment
    room.width = 5.0
    led.position = (2.5, 2.5, 3.0)
    sweep.transmit_powers = [8, 10, 12, 15]

Unknown keys are rejected; unspecified keys keep the default scenario values.
Emission produces CSV (comma delimiter, LF endings, leading '#' metadata
lines) or JSON (object with name, columns, rows, metadata). Numeric cells are
serialized at a fixed 6 significant digits so byte comparisons are stable;
metadata (config hash, tool version, timestamp) is excluded from determinism
guarantees.
"""

from __future__ import annotations

import ast
import csv
import hashlib
import io
import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import IO, Any, Mapping

from .channel import LedSpec, PdSpec, lambertian_order
from .errors import DomainError, ParseError, UnsupportedFormat, ValidationError
from .estimator import EstimateRecord
from .geometry import Point3, RoomSpec
from .scenario import (
    ReplicationReport,
    ScenarioConfig,
    SweepResult,
    default_config,
)

__all__ = [
    "OutputTable",
    "load_config",
    "serialize_config",
    "config_hash",
    "emit",
    "format_number",
    "position_sweep_table",
    "power_sweep_table",
    "angle_sweep_table",
    "replication_table",
    "estimate_lines",
]

SIGNIFICANT_DIGITS = 6


@dataclass(frozen=True)
class OutputTable:
    """A named table with column headers, rows, and free-form metadata."""

    name: str
    columns: tuple[str, ...]
    rows: tuple[tuple[Any, ...], ...]
    metadata: Mapping[str, str]

    def __post_init__(self) -> None:
        for i, row in enumerate(self.rows, start=1):
            if len(row) != len(self.columns):
                raise ValidationError(
                    f"row {i} has {len(row)} cells for {len(self.columns)} columns"
                )


def format_number(value: float, digits: int = SIGNIFICANT_DIGITS) -> str:
    """Fixed-significant-digit rendering used for every emitted numeric cell."""

    return format(value, f".{digits}g")


def _cell_text(value: Any) -> str:
    if isinstance(value, bool) or value is None:
        return "" if value is None else str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_number(value)
    return str(value)


def _cell_json(value: Any) -> Any:
    if isinstance(value, float):
        # Round through the fixed-digit text form so JSON and CSV agree.
        return float(format_number(value))
    return value


def emit(table: OutputTable, format: str, destination: str | Path | IO[str]) -> int:
    """Write the table to a path or text stream; returns bytes written.

    Raises:
        UnsupportedFormat: for formats other than "csv" and "json".
    """

    if format == "csv":
        buffer = io.StringIO()
        for key in sorted(table.metadata):
            buffer.write(f"# {key} = {table.metadata[key]}\n")
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow([_cell_text(cell) for cell in row])
        text = buffer.getvalue()
    elif format == "json":
        payload = {
            "name": table.name,
            "columns": list(table.columns),
            "rows": [[_cell_json(cell) for cell in row] for row in table.rows],
            "metadata": dict(sorted(table.metadata.items())),
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        raise UnsupportedFormat(f"unsupported output format: {format!r}")

    if hasattr(destination, "write"):
        destination.write(text)
    else:
        Path(destination).write_text(text, encoding="utf-8")
    return len(text.encode("utf-8"))


# ---------------------------------------------------------------------------
# Table builders
# ---------------------------------------------------------------------------


def position_sweep_table(
    result: SweepResult, metadata: Mapping[str, str]
) -> OutputTable:
    """The position-sweep schema: one row per PD position."""

    rows = tuple(
        (
            row.index,
            row.position.x,
            row.position.y,
            row.estimate.estimated.x,
            row.estimate.estimated.y,
            row.geometry.slant_distance,
            row.channel.received_power,
            row.estimate.positioning_error,
        )
        for row in result.rows
    )
    return OutputTable(
        name="position_sweep",
        columns=(
            "index",
            "actual_x",
            "actual_y",
            "est_x",
            "est_y",
            "slant_d",
            "received_power",
            "error_m",
        ),
        rows=rows,
        metadata=metadata,
    )


def power_sweep_table(
    rows: tuple[tuple[float, float, float], ...], metadata: Mapping[str, str]
) -> OutputTable:
    return OutputTable(
        name="power_sweep",
        columns=("transmit_power", "distance", "received_power"),
        rows=tuple(rows),
        metadata=metadata,
    )


def angle_sweep_table(
    rows: tuple[tuple[float, float, float], ...], metadata: Mapping[str, str]
) -> OutputTable:
    return OutputTable(
        name="angle_sweep",
        columns=("elevation", "distance", "received_power"),
        rows=tuple(rows),
        metadata=metadata,
    )


def replication_table(
    report: ReplicationReport, metadata: Mapping[str, str]
) -> OutputTable:
    rows = tuple(
        (
            check.name,
            check.reference,
            check.computed,
            check.difference,
            check.verdict.value,
            check.expected.value,
            check.note,
        )
        for check in report.checks
    )
    return OutputTable(
        name="replication_report",
        columns=(
            "check",
            "reference",
            "computed",
            "abs_diff",
            "verdict",
            "expected",
            "note",
        ),
        rows=rows,
        metadata=metadata,
    )


def estimate_lines(record: EstimateRecord, clipped: bool | None = None) -> list[str]:
    """Human-readable key = value lines for a one-shot estimate."""

    lines = [
        f"measured_power = {format_number(record.measured_power)}",
        f"inverted_distance = {format_number(record.inverted_distance)}",
        f"incidence_elevation = {format_number(record.angles.incidence)}",
        f"complementary = {format_number(record.angles.complementary)}",
        f"supplementary = {format_number(record.angles.supplementary)}",
        f"fused_offset = {format_number(record.offsets.x_fused)}",
        "estimated = "
        f"({format_number(record.estimated.x)}, {format_number(record.estimated.y)}, 0)",
    ]
    if clipped is not None:
        lines.append(f"clipped_to_room = {str(clipped).lower()}")
    if record.positioning_error is not None:
        lines.append(f"positioning_error = {format_number(record.positioning_error)}")
    return lines


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------

# Every accepted dotted key, mapped to a short description used in errors.
_CONFIG_KEYS = {
    "room.width": "room width in meters",
    "room.length": "room length in meters",
    "room.height": "room height in meters",
    "led.position": "LED position (x, y, z)",
    "led.transmit_power": "LED transmit power in watts",
    "led.half_power_angle": "LED half-power angle in degrees",
    "led.lambertian_order": "explicit Lambertian order override",
    "pd.position": "single PD position (x, y, z); replaces sweep.positions",
    "pd.area": "PD active area in square meters",
    "pd.fov": "PD field of view in degrees",
    "pd.filter_gain": "PD optical filter gain",
    "pd.refractive_index": "PD concentrator refractive index",
    "sweep.positions": "list of PD positions [(x, y, z), ...]",
    "sweep.transmit_powers": "list of transmit powers in watts",
    "sweep.elevations": "list of sweep elevations in degrees",
    "sweep.azimuth": "anchoring azimuth in degrees",
    "sweep.distance_samples": "sample count for figure-style sweeps",
    "sweep.distance_range": "distance span (low, high) for figure-style sweeps",
}


def _parse_lines(text: str) -> dict[str, Any]:
    values: dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        key, _, value_text = line.partition("=")
        key = key.strip()
        if key not in _CONFIG_KEYS:
            raise ParseError(f"unknown key {key!r}", lineno)
        if key in values:
            raise ParseError(f"duplicate key {key!r}", lineno)
        try:
            values[key] = ast.literal_eval(value_text.strip())
        except (ValueError, SyntaxError) as exc:
            raise ParseError(
                f"invalid value for {key} ({_CONFIG_KEYS[key]}): {exc}", lineno
            ) from exc
    return values


def _point(value: Any, key: str) -> Point3:
    if not (isinstance(value, (tuple, list)) and len(value) == 3):
        raise ValidationError(f"{key} must be a 3-tuple (x, y, z), got {value!r}")
    return Point3(*(float(c) for c in value))


def _floats(value: Any, key: str) -> tuple[float, ...]:
    if not isinstance(value, (tuple, list)) or len(value) == 0:
        raise ValidationError(f"{key} must be a non-empty list of numbers")
    return tuple(float(v) for v in value)


def load_config(source: str | Path) -> ScenarioConfig:
    """Build a ScenarioConfig from a file path or inline text.

    A string containing '=' or a newline is treated as inline config text;
    anything else is read as a path. Unspecified keys keep the default
    scenario values.

    Raises:
        ParseError: malformed lines, unknown or duplicate keys.
        ValidationError: parsed values violating a scenario invariant.
    """

    if isinstance(source, Path):
        text = source.read_text(encoding="utf-8")
    elif "=" in source or "\n" in source or source.strip() == "":
        text = source
    else:
        text = Path(source).read_text(encoding="utf-8")
    values = _parse_lines(text)

    base = default_config()
    try:
        room = replace(
            base.room,
            width=float(values.get("room.width", base.room.width)),
            length=float(values.get("room.length", base.room.length)),
            height=float(values.get("room.height", base.room.height)),
        )
        led = LedSpec(
            position=_point(values["led.position"], "led.position")
            if "led.position" in values
            else base.led.position,
            transmit_power=float(
                values.get("led.transmit_power", base.led.transmit_power)
            ),
            half_power_angle=float(
                values.get("led.half_power_angle", base.led.half_power_angle)
            ),
            lambertian_order=(
                float(values["led.lambertian_order"])
                if "led.lambertian_order" in values
                else None
            ),
        )
        if "sweep.positions" in values and "pd.position" in values:
            raise ValidationError(
                "pd.position and sweep.positions are mutually exclusive"
            )
        if "sweep.positions" in values:
            raw_positions = values["sweep.positions"]
            if not isinstance(raw_positions, (tuple, list)) or len(raw_positions) == 0:
                raise ValidationError("sweep.positions must be a non-empty list")
            positions = tuple(
                _point(p, "sweep.positions") for p in raw_positions
            )
        elif "pd.position" in values:
            positions = (_point(values["pd.position"], "pd.position"),)
        else:
            positions = base.pd_positions
        # The template position is immaterial (overridden per run); pinning it
        # to the first sweep position keeps serialization round-trips exact.
        pd = PdSpec(
            position=positions[0],
            area=float(values.get("pd.area", base.pd_template.area)),
            fov=float(values.get("pd.fov", base.pd_template.fov)),
            filter_gain=float(
                values.get("pd.filter_gain", base.pd_template.filter_gain)
            ),
            refractive_index=float(
                values.get("pd.refractive_index", base.pd_template.refractive_index)
            ),
        )
        distance_range = None
        if "sweep.distance_range" in values:
            span = _floats(values["sweep.distance_range"], "sweep.distance_range")
            if len(span) != 2:
                raise ValidationError(
                    f"sweep.distance_range must be (low, high), got {span!r}"
                )
            distance_range = (span[0], span[1])
        return ScenarioConfig(
            room=room,
            led=led,
            pd_template=pd,
            pd_positions=positions,
            transmit_powers=(
                _floats(values["sweep.transmit_powers"], "sweep.transmit_powers")
                if "sweep.transmit_powers" in values
                else base.transmit_powers
            ),
            sweep_elevations=(
                _floats(values["sweep.elevations"], "sweep.elevations")
                if "sweep.elevations" in values
                else base.sweep_elevations
            ),
            azimuth=float(values.get("sweep.azimuth", base.azimuth)),
            distance_samples=int(
                values.get("sweep.distance_samples", base.distance_samples)
            ),
            distance_range=distance_range,
        )
    except DomainError as exc:
        # Constructor-level domain violations become config validation errors
        # so the CLI maps them to the usage exit code.
        raise ValidationError(str(exc)) from exc


def serialize_config(config: ScenarioConfig) -> str:
    """Render a config as the text format load_config accepts.

    Floats are written with repr so loading the result reproduces the exact
    same values. The Lambertian order is written only when it overrides the
    half-power-angle formula.
    """

    lines = [
        f"room.width = {config.room.width!r}",
        f"room.length = {config.room.length!r}",
        f"room.height = {config.room.height!r}",
        f"led.position = ({config.led.position.x!r}, {config.led.position.y!r}, "
        f"{config.led.position.z!r})",
        f"led.transmit_power = {config.led.transmit_power!r}",
        f"led.half_power_angle = {config.led.half_power_angle!r}",
    ]
    if config.led.lambertian_order != lambertian_order(config.led.half_power_angle):
        lines.append(f"led.lambertian_order = {config.led.lambertian_order!r}")
    lines += [
        f"pd.area = {config.pd_template.area!r}",
        f"pd.fov = {config.pd_template.fov!r}",
        f"pd.filter_gain = {config.pd_template.filter_gain!r}",
        f"pd.refractive_index = {config.pd_template.refractive_index!r}",
        "sweep.positions = ["
        + ", ".join(f"({p.x!r}, {p.y!r}, {p.z!r})" for p in config.pd_positions)
        + "]",
        "sweep.transmit_powers = ["
        + ", ".join(repr(p) for p in config.transmit_powers)
        + "]",
        "sweep.elevations = ["
        + ", ".join(repr(e) for e in config.sweep_elevations)
        + "]",
        f"sweep.azimuth = {config.azimuth!r}",
        f"sweep.distance_samples = {config.distance_samples!r}",
    ]
    if config.distance_range is not None:
        low, high = config.distance_range
        lines.append(f"sweep.distance_range = ({low!r}, {high!r})")
    return "\n".join(lines) + "\n"


def config_hash(config: ScenarioConfig) -> str:
    """Short stable digest identifying a configuration."""

    digest = hashlib.sha256(serialize_config(config).encode("utf-8")).hexdigest()
    return digest[:12]
