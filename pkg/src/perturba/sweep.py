"""Time and field sweeps of the three probability curves, CSV output.

Grids are plain linspace/geomspace; rows carry the three curves plus
their pointwise absolute deviations from the exact one. Output is
deterministic down to the byte for identical inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .errors import InvalidSweepSpec, IoFailure
from .hyperfine import HyperfineConfig, _normalized_triple

CSV_HEADER = "x,p_exact,p_improved,p_traditional,dev_improved,dev_traditional"

_MODES = ("time", "field")
_SCALES = ("linear", "log")


@dataclass(frozen=True)
class SweepSpec:
    """What to sweep: the abscissa axis, its window, and the held-fixed value.

    ``mode`` "time" sweeps t seconds at fixed B = ``fixed_value`` tesla;
    "field" sweeps B tesla at fixed t = ``fixed_value`` seconds.
    """

    mode: str
    fixed_value: float
    start: float
    stop: float
    samples: int
    scale: str = "linear"

    def __post_init__(self):
        if self.mode not in _MODES:
            raise InvalidSweepSpec(f"mode must be one of {_MODES}, got {self.mode!r}")
        if self.scale not in _SCALES:
            raise InvalidSweepSpec(f"scale must be one of {_SCALES}, got {self.scale!r}")
        for name in ("fixed_value", "start", "stop"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidSweepSpec(f"{name} must be finite")
        if not self.start < self.stop:
            raise InvalidSweepSpec(f"start must be < stop, got [{self.start}, {self.stop}]")
        if int(self.samples) != self.samples or self.samples < 2:
            raise InvalidSweepSpec(f"samples must be an integer >= 2, got {self.samples}")
        if self.scale == "log" and not self.start > 0.0:
            raise InvalidSweepSpec("log scale requires start > 0")
        if self.mode == "time" and self.fixed_value < 0.0:
            raise InvalidSweepSpec("time mode holds B fixed; it must be >= 0")
        if self.mode == "field" and self.start < 0.0:
            raise InvalidSweepSpec("field sweeps need B >= 0")


def sweep_grid(spec: SweepSpec) -> NDArray[np.float64]:
    """The abscissa grid: linspace, or geomspace for log scale. Endpoints exact."""
    if spec.scale == "linear":
        return np.linspace(spec.start, spec.stop, int(spec.samples))
    return np.geomspace(spec.start, spec.stop, int(spec.samples))


@dataclass(frozen=True)
class SweepRow:
    x: float
    p_exact: float
    p_improved: float
    p_traditional: float
    dev_improved: float
    dev_traditional: float


class SweepTable:
    """Columnar sweep result; behaves as a sequence of SweepRow."""

    def __init__(self, x, p_exact, p_improved, p_traditional):
        self.x = np.asarray(x, dtype=np.float64)
        self.p_exact = np.asarray(p_exact, dtype=np.float64)
        self.p_improved = np.asarray(p_improved, dtype=np.float64)
        self.p_traditional = np.asarray(p_traditional, dtype=np.float64)
        self.dev_improved = np.abs(self.p_improved - self.p_exact)
        self.dev_traditional = np.abs(self.p_traditional - self.p_exact)

    def __len__(self) -> int:
        return self.x.shape[0]

    def __getitem__(self, index: int) -> SweepRow:
        return SweepRow(
            float(self.x[index]),
            float(self.p_exact[index]),
            float(self.p_improved[index]),
            float(self.p_traditional[index]),
            float(self.dev_improved[index]),
            float(self.dev_traditional[index]),
        )

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]


def run_sweep(spec: SweepSpec, config: HyperfineConfig) -> SweepTable:
    """Evaluate the normalized curves over the grid. Row count == samples."""
    grid = sweep_grid(spec)
    constants = config.constants
    if spec.mode == "time":
        x_ev = constants.mu_e_ev_per_tesla * spec.fixed_value
        pT, pI, p = _normalized_triple(constants.w_ev, x_ev, constants.hbar_evs, grid)
    else:
        x_ev = constants.mu_e_ev_per_tesla * grid
        pT, pI, p = _normalized_triple(
            constants.w_ev, x_ev, constants.hbar_evs, spec.fixed_value
        )
    return SweepTable(grid, pT, pI, p)


def first_crossings(table: SweepTable, threshold: float) -> tuple[float, float]:
    """First abscissa where each deviation exceeds ``threshold``, scanning
    ascending; math.inf when a curve never exceeds it."""

    def first(dev):
        hits = np.nonzero(dev > threshold)[0]
        return float(table.x[hits[0]]) if hits.size else math.inf

    return first(table.dev_traditional), first(table.dev_improved)


def divergence_report(
    spec: SweepSpec, config: HyperfineConfig, threshold: float
) -> tuple[float, float]:
    """(t_traditional, t_improved): where each curve first strays from the
    exact one by more than ``threshold`` on the grid.

    Thresholds >= 1 are allowed and simply report the +inf sentinels,
    since the normalized curves live in [0, 1].
    """
    if spec.mode != "time":
        raise InvalidSweepSpec("divergence report requires a time sweep")
    if not threshold > 0.0:
        raise InvalidSweepSpec(f"threshold must be positive, got {threshold}")
    return first_crossings(run_sweep(spec, config), threshold)


def _format_row(values) -> str:
    return ",".join("%.16e" % v for v in values) + "\n"


def emit_csv(rows, destination) -> int:
    """Write rows as CSV (17 significant digits, '\\n' endings); return bytes written.

    ``rows`` is a SweepTable or any iterable of SweepRow; ``destination``
    a path or an open text stream. Numbers round-trip bit-exactly through
    the emitted text. Raises on empty input before touching the
    destination, and wraps write errors in IoFailure.
    """
    if isinstance(rows, SweepTable):
        table = rows
        count = len(table)
        columns = (
            table.x,
            table.p_exact,
            table.p_improved,
            table.p_traditional,
            table.dev_improved,
            table.dev_traditional,
        )
        row_values = zip(*columns)
    else:
        materialized = list(rows)
        count = len(materialized)
        row_values = (
            (r.x, r.p_exact, r.p_improved, r.p_traditional, r.dev_improved, r.dev_traditional)
            for r in materialized
        )
    if count == 0:
        raise InvalidSweepSpec("refusing to emit CSV for zero rows")

    def write_all(stream) -> int:
        written = stream.write(CSV_HEADER + "\n")
        for values in row_values:
            written += stream.write(_format_row(values))
        return written

    try:
        if hasattr(destination, "write"):
            return write_all(destination)
        with open(destination, "w", encoding="ascii", newline="") as handle:
            return write_all(handle)
    except OSError as exc:
        raise IoFailure(f"CSV write failed: {exc}") from exc
