"""ARDL design construction and the Granger-causality battery."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import (
    DataError,
    InsufficientDataError,
    MissingSeriesError,
    NumericalError,
    RerBalanceError,
)
from .regress import CONSTANT, DesignMatrix, OlsFit, ols_fit
from .series import (
    Frequency,
    TimeSeries,
    align_listwise,
    annual_to_quarterly,
    lag,
    natural_log,
    pct_change_yoy,
)
from .stats import f_pvalue

log = logging.getLogger(__name__)

__all__ = [
    "ArdlSpec",
    "GrangerResult",
    "CountrySpec",
    "BatteryCell",
    "build_ardl_design",
    "fit_ardl",
    "granger_test",
    "replication_battery",
    "TRANSFORMS",
    "DEFAULT_MAX_LAGS",
    "india_yield_spec",
]

TRANSFORMS = ("level", "yoy", "log")

# Lag sweeps used for each country in the published Granger tables.
DEFAULT_MAX_LAGS = {
    "India": 7,
    "Argentina": 9,
    "Indonesia": 9,
    "Brazil": 7,
    "South Africa": 7,
    "China": 5,
}
FALLBACK_MAX_LAG = 7


@dataclass(frozen=True)
class ArdlSpec:
    """Layout of an ARDL regression.

    Columns are built in the order: constant, ``controls``, key regressor,
    its lags, AR lags of the dependent, ``trailing_controls``. Each control
    is a ``(series_name, transform)`` pair with transform one of
    ``"level"``, ``"yoy"`` or ``"log"``.
    """

    dependent: str
    key_regressor: str
    key_regressor_lags: int = 1
    ar_order: int = 2
    controls: tuple = ()
    trailing_controls: tuple = ()
    intercept: bool = True

    def __post_init__(self):
        object.__setattr__(self, "controls", tuple(tuple(c) for c in self.controls))
        object.__setattr__(self, "trailing_controls", tuple(tuple(c) for c in self.trailing_controls))
        if self.ar_order < 0 or self.key_regressor_lags < 0:
            raise ValueError("lag orders must be non-negative")
        for name, tr in self.all_controls:
            if tr not in TRANSFORMS:
                raise ValueError(f"unknown transform {tr!r} for {name!r}; expected one of {TRANSFORMS}")
            if name == self.dependent:
                raise ValueError(f"dependent {name!r} cannot also be a control")

    @property
    def all_controls(self) -> tuple:
        return self.controls + self.trailing_controls

    @property
    def n_terms(self) -> int:
        return (
            int(self.intercept)
            + len(self.all_controls)
            + 1
            + self.key_regressor_lags
            + self.ar_order
        )


def india_yield_spec(dependent: str = "yield") -> ArdlSpec:
    """The nine-term bond-yield regression: TB3M and one lag, two AR terms,
    CPI and manufacturing growth (YoY), NIFTY level and log INR/USD."""
    return ArdlSpec(
        dependent=dependent,
        key_regressor="TB3M",
        key_regressor_lags=1,
        ar_order=2,
        controls=(("CPI", "yoy"), ("mind", "yoy"), ("NIFTY", "level")),
        trailing_controls=(("INRUSD", "log"),),
    )


def _key_lag_name(name, j):
    return f"{name} lag" if j == 1 else f"{name} lag{j}"


def _harmonize(data: Mapping[str, TimeSeries], names):
    missing = [n for n in names if n not in data]
    if missing:
        raise MissingSeriesError(f"series not found in data: {', '.join(missing)}")
    picked = {n: data[n] for n in names}
    freqs = {s.frequency for s in picked.values()}
    if len(freqs) > 1:
        picked = {
            n: annual_to_quarterly(s) if s.frequency is Frequency.ANNUAL else s
            for n, s in picked.items()
        }
    return picked


def _transform(s: TimeSeries, tr: str) -> TimeSeries:
    if tr == "level":
        return s
    if tr == "yoy":
        return pct_change_yoy(s)
    return natural_log(s)


def build_ardl_design(spec: ArdlSpec, data: Mapping[str, TimeSeries]) -> DesignMatrix:
    names = [spec.dependent, spec.key_regressor] + [c for c, _ in spec.all_controls]
    series = _harmonize(data, list(dict.fromkeys(names)))
    dep = series[spec.dependent].rename(spec.dependent)
    key = series[spec.key_regressor]

    def control(entry):
        name, tr = entry
        out = _transform(series[name], tr)
        return out.rename(f"log_{name}" if tr == "log" else name)

    cols = [control(c) for c in spec.controls]
    cols.append(key.rename(spec.key_regressor))
    for j in range(1, spec.key_regressor_lags + 1):
        cols.append(lag(key, j).rename(_key_lag_name(spec.key_regressor, j)))
    for j in range(1, spec.ar_order + 1):
        cols.append(lag(dep, j).rename(f"AR[{j}]"))
    cols.extend(control(c) for c in spec.trailing_controls)

    labels = [c.name for c in cols]
    if len(set(labels)) != len(labels) or spec.dependent in labels:
        raise ValueError(f"ARDL column labels collide: {labels}")
    sample = align_listwise([dep] + cols)
    y = sample.matrix[:, 0]
    X = sample.matrix[:, 1:]
    if spec.intercept:
        X = np.column_stack([np.ones(sample.nobs), X])
        labels = [CONSTANT] + labels
    if sample.nobs <= len(labels):
        raise InsufficientDataError(
            f"aligned sample has {sample.nobs} rows for {len(labels)} ARDL terms"
        )
    return DesignMatrix(X, tuple(labels), y, spec.dependent, spec.intercept, sample.periods)


def fit_ardl(spec: ArdlSpec, data: Mapping[str, TimeSeries]) -> OlsFit:
    """Build the ARDL design and fit it by OLS.

    The returned fit is indexable by row label, e.g. ``fit["TB3M lag"]``.
    AR terms enter as ordinary regressors (conditional least squares).
    """
    return ols_fit(build_ardl_design(spec, data))


@dataclass(frozen=True)
class GrangerResult:
    lag: int
    f_stat: float
    p_value: float
    df1: int
    df2: int
    nobs_effective: int
    rss_restricted: float = float("nan")
    rss_unrestricted: float = float("nan")


def _lag_block(v, p, rows):
    return np.column_stack([v[rows - j] for j in range(1, p + 1)])


def granger_test(cause: TimeSeries, effect: TimeSeries, max_lag: int) -> list[GrangerResult]:
    """F-tests of whether lags of ``cause`` help predict ``effect``.

    For each ``p`` in ``1..max_lag`` the restricted model regresses
    ``effect`` on a constant and its own lags ``1..p``; the unrestricted
    model adds ``cause`` lags ``1..p``. Both are fit on the same rows: every
    period where the effect, its ``p`` lags and the ``p`` cause lags are all
    observed. The row set is recomputed for each ``p``.

    ``df2 = nobs_effective - 2p - 1``.
    """
    if int(max_lag) != max_lag or max_lag < 1:
        raise ValueError(f"max_lag must be a positive integer, got {max_lag!r}")
    max_lag = int(max_lag)
    if cause.frequency is not effect.frequency:
        cause, effect = (
            annual_to_quarterly(s) if s.frequency is Frequency.ANNUAL else s
            for s in (cause, effect)
        )
    # Put both series on one grid, keeping interior gaps as NaN.
    lo = min(cause.start_ordinal, effect.start_ordinal)
    hi = max(cause.start_ordinal + len(cause), effect.start_ordinal + len(effect))
    x = np.full(hi - lo, np.nan)
    y = np.full(hi - lo, np.nan)
    x[cause.start_ordinal - lo:cause.start_ordinal - lo + len(cause)] = cause.values
    y[effect.start_ordinal - lo:effect.start_ordinal - lo + len(effect)] = effect.values
    both = ~np.isnan(x) & ~np.isnan(y)
    overlap = int(both.sum())
    if overlap <= 2 * max_lag + 2:
        raise InsufficientDataError(
            f"{overlap} jointly observed periods of {cause.name!r} and {effect.name!r}; "
            f"max_lag={max_lag} needs more than {2 * max_lag + 2}"
        )

    results = []
    for p in range(1, max_lag + 1):
        t = np.arange(p, hi - lo)
        ok = ~np.isnan(y[t])
        for j in range(1, p + 1):
            ok &= ~np.isnan(y[t - j]) & ~np.isnan(x[t - j])
        rows = t[ok]
        n = rows.size
        df2 = n - 2 * p - 1
        if df2 < 1:
            raise InsufficientDataError(
                f"lag {p}: {n} usable rows leave no residual degrees of freedom"
            )
        ylags = _lag_block(y, p, rows)
        xlags = _lag_block(x, p, rows)
        const = np.ones((n, 1))
        own = [f"{effect.name}_lag{j}" for j in range(1, p + 1)]
        other = [f"{cause.name}_lag{j}" for j in range(1, p + 1)]
        if effect.name == cause.name:
            other = [f"cause_lag{j}" for j in range(1, p + 1)]
        restricted = DesignMatrix(np.hstack([const, ylags]), (CONSTANT, *own), y[rows], effect.name)
        unrestricted = DesignMatrix(
            np.hstack([const, ylags, xlags]), (CONSTANT, *own, *other), y[rows], effect.name
        )
        rss_r = ols_fit(restricted).rss
        rss_u = ols_fit(unrestricted).rss
        # Nested least squares guarantees rss_r >= rss_u; clip rounding noise.
        num = max(rss_r - rss_u, 0.0) / p
        f = num / (rss_u / df2) if rss_u > 0 else float("inf")
        results.append(
            GrangerResult(
                lag=p,
                f_stat=float(f),
                p_value=f_pvalue(f, p, df2),
                df1=p,
                df2=df2,
                nobs_effective=n,
                rss_restricted=rss_r,
                rss_unrestricted=rss_u,
            )
        )
    return results


@dataclass
class CountrySpec:
    """One country's entry in a replication battery.

    ``data`` is either a mapping of series or a path understood by the
    ``loader`` passed to :func:`replication_battery`. ``pairs`` lists
    ``(cause, effect)`` column names.
    """

    name: str
    data: object
    pairs: Sequence = (("fiscal_deficit", "cad"),)
    max_lag: int | None = None

    def resolved_max_lag(self) -> int:
        if self.max_lag is not None:
            return int(self.max_lag)
        return DEFAULT_MAX_LAGS.get(self.name, FALLBACK_MAX_LAG)


@dataclass
class BatteryCell:
    country: str
    cause: str
    effect: str
    max_lag: int
    results: list = field(default_factory=list)
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None

    @property
    def title(self) -> str:
        return f"{self.country} ({self.cause} on {self.effect})"


def replication_battery(
    countries: Sequence[CountrySpec],
    loader: Callable[[object], Mapping[str, TimeSeries]] | None = None,
) -> list[BatteryCell]:
    """Run :func:`granger_test` for every country and (cause, effect) pair.

    A failure in one cell (missing file, short sample, constant series) is
    recorded on that cell and the battery moves on.
    """
    cells = []
    for c in countries:
        max_lag = c.resolved_max_lag()
        try:
            data = c.data if isinstance(c.data, Mapping) else loader(c.data)
        except (RerBalanceError, OSError, TypeError) as exc:
            log.warning("battery: %s data unavailable: %s", c.name, exc)
            for cause, effect in c.pairs:
                cells.append(BatteryCell(c.name, cause, effect, max_lag, error=str(exc)))
            continue
        for cause, effect in c.pairs:
            cell = BatteryCell(c.name, cause, effect, max_lag)
            try:
                missing = [s for s in (cause, effect) if s not in data]
                if missing:
                    raise MissingSeriesError(f"series not found: {', '.join(missing)}")
                cell.results = granger_test(data[cause], data[effect], max_lag)
            except (DataError, NumericalError) as exc:
                log.warning("battery: %s failed: %s", cell.title, exc)
                cell.error = str(exc)
            cells.append(cell)
    return cells
