"""Seeded synthetic data for demonstrations and tests."""
from __future__ import annotations

import numpy as np

from .series import Frequency, TimeSeries

__all__ = ["TRUE_ARDL", "ardl_dataset", "causal_pair", "noise_pair", "deficit_panel"]

# Coefficients of the nine-term yield regression used to generate data.
TRUE_ARDL = {
    "constant": 0.5,
    "CPI": -0.02,
    "mind": 0.01,
    "NIFTY": 2e-5,
    "TB3M": 0.45,
    "TB3M lag": -0.38,
    "AR[1]": 0.6,
    "AR[2]": 0.2,
    "log_INRUSD": 0.3,
}


def _ar1(rng, n, mean, phi, sd):
    out = np.empty(n)
    out[0] = mean + rng.normal(0, sd / np.sqrt(1 - phi**2))
    for t in range(1, n):
        out[t] = mean + phi * (out[t - 1] - mean) + rng.normal(0, sd)
    return out


def ardl_dataset(n: int = 2000, seed=0, coefs: dict | None = None, noise_sd: float = 0.25,
                 start=(1960, 1), burn: int = 200) -> dict:
    """Quarterly series named as the bond-yield regression expects.

    Returns a dict with ``yield``, ``TB3M``, ``CPI``, ``mind``, ``NIFTY`` and
    ``INRUSD`` series. ``CPI`` and ``mind`` are index levels whose
    year-over-year change enters the regression; ``INRUSD`` enters in logs.
    After the four-quarter warm-up of the YoY transform the regression has
    exactly ``n`` usable rows.
    """
    c = dict(TRUE_ARDL if coefs is None else coefs)
    rng = np.random.default_rng(seed)
    total = n + burn + 4

    tb3m = _ar1(rng, total, 6.0, 0.9, 0.4)
    infl = _ar1(rng, total, 5.0, 0.8, 1.5)          # annual % rate
    growth = _ar1(rng, total, 4.0, 0.5, 3.0)
    cpi = 100.0 * np.exp(np.cumsum(infl / 400.0))
    mind = 100.0 * np.exp(np.cumsum(growth / 400.0))
    nifty = _ar1(rng, total, 10000.0, 0.95, 300.0)
    inrusd = np.exp(_ar1(rng, total, np.log(60.0), 0.97, 0.03))

    cpi_yoy = np.full(total, np.nan)
    mind_yoy = np.full(total, np.nan)
    cpi_yoy[4:] = 100.0 * (cpi[4:] / cpi[:-4] - 1.0)
    mind_yoy[4:] = 100.0 * (mind[4:] / mind[:-4] - 1.0)

    y = np.zeros(total)
    y[:4] = 7.0
    for t in range(4, total):
        y[t] = (
            c["constant"]
            + c["CPI"] * cpi_yoy[t]
            + c["mind"] * mind_yoy[t]
            + c["NIFTY"] * nifty[t]
            + c["TB3M"] * tb3m[t]
            + c["TB3M lag"] * tb3m[t - 1]
            + c["AR[1]"] * y[t - 1]
            + c["AR[2]"] * y[t - 2]
            + c["log_INRUSD"] * np.log(inrusd[t])
            + rng.normal(0, noise_sd)
        )
    keep = slice(burn, None)
    raw = {"yield": y, "TB3M": tb3m, "CPI": cpi, "mind": mind, "NIFTY": nifty, "INRUSD": inrusd}
    return {k: TimeSeries(k, Frequency.QUARTERLY, start, v[keep]) for k, v in raw.items()}


def causal_pair(n: int = 500, seed=0, ar: float = 0.8, effect: float = 0.5, burn: int = 50):
    """``y_t = ar * y_{t-1} + effect * x_{t-1} + e_t`` with white-noise ``x``."""
    rng = np.random.default_rng(seed)
    total = n + burn
    x = rng.standard_normal(total)
    e = rng.standard_normal(total)
    y = np.zeros(total)
    for t in range(1, total):
        y[t] = ar * y[t - 1] + effect * x[t - 1] + e[t]
    start = (1900, 1)
    return (
        TimeSeries("x", Frequency.QUARTERLY, start, x[burn:]),
        TimeSeries("y", Frequency.QUARTERLY, start, y[burn:]),
    )


def noise_pair(n: int = 500, seed=0):
    rng = np.random.default_rng(seed)
    start = (1900, 1)
    return (
        TimeSeries("x", Frequency.QUARTERLY, start, rng.standard_normal(n)),
        TimeSeries("y", Frequency.QUARTERLY, start, rng.standard_normal(n)),
    )


def deficit_panel(n: int = 35, seed=0, start_year: int = 1990) -> dict:
    """Annual fiscal-deficit and current-account ratios (% of GDP) with no
    causal link between them."""
    rng = np.random.default_rng(seed)
    fd = _ar1(rng, n, 4.0, 0.6, 1.0)
    cad = _ar1(rng, n, 2.0, 0.6, 1.0)
    start = (start_year, 1)
    return {
        "fiscal_deficit": TimeSeries("fiscal_deficit", Frequency.ANNUAL, start, fd),
        "cad": TimeSeries("cad", Frequency.ANNUAL, start, cad),
    }
