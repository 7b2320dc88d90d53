"""Plain-text report tables (ASCII, locale independent)."""
from __future__ import annotations

import math
from typing import Sequence

from .stats import format_pvalue

__all__ = [
    "format_coef",
    "render_regression_table",
    "render_granger_table",
    "render_equilibrium",
    "render_neutral_report",
    "render_battery",
]


def format_coef(x: float) -> str:
    """Four decimals; very small non-zero values switch to scientific form."""
    if math.isnan(x):
        return "nan"
    if x != 0 and abs(x) < 1e-3:
        return f"{x:.3e}"
    return f"{x:.4f}"


def _t(x):
    if math.isnan(x) or math.isinf(x):
        return str(x)
    return f"{x:.3f}"


def render_regression_table(fit, row_names: Sequence[str] | None = None, title: str | None = None) -> str:
    """Coefficient table followed by two footer lines.

    ``row_names`` selects and orders rows (default: fit order).
    """
    names = list(row_names) if row_names is not None else list(fit.columns)
    label_w = max([len(n) for n in names] + [len(title or fit.dependent), 10])
    head = f"{(title or fit.dependent):<{label_w}}  {'coeff.':>11}  {'std. error':>11}  {'t-stat.':>9}  {'p-value':>7}"
    lines = [head]
    for n in names:
        r = fit[n]
        lines.append(
            f"{n:<{label_w}}  {format_coef(r.coef):>11}  {format_coef(r.se):>11}  "
            f"{_t(r.t):>9}  {format_pvalue(r.p, 3):>7}"
        )
    lines.append(
        f"Obs. (Df) {fit.nobs} ({fit.df_resid})  R2 {fit.r2:.3f}  Adj. R2 {fit.adj_r2:.3f}"
    )
    lines.append(f"F-stat. {fit.f_stat:.1f}  AIC {fit.aic:.2f}  BIC {fit.bic:.2f}")
    return "\n".join(lines) + "\n"


def render_granger_table(results, title: str | None = None) -> str:
    results = sorted(results, key=lambda r: r.lag)
    if not results:
        raise ValueError("no Granger results to render")
    lines = [title] if title else []
    lines.append(f"{'Lag':>3}  {'F-Statistic':>11}  {'p-Value':>7}")
    for r in results:
        lines.append(f"{r.lag:>3}  {r.f_stat:>11.4f}  {format_pvalue(r.p_value, 4):>7}")
    return "\n".join(lines) + "\n"


def render_battery(cells) -> str:
    blocks = []
    for c in cells:
        if c.ok:
            blocks.append(render_granger_table(c.results, c.title))
        else:
            blocks.append(f"{c.title}\nerror: {c.error}\n")
    return "\n".join(blocks)


def render_equilibrium(res, observed_rer: float | None = None) -> str:
    lines = [
        f"formulation: {res.formulation.value}",
        f"implied_rer: {res.implied_rer!r}",
        f"domestic_side: {res.domestic_side!r}",
        f"reference_side: {res.reference_side!r}",
        f"constant: {res.constant!r}",
    ]
    if observed_rer is not None:
        lines.append(f"observed_rer: {observed_rer!r}")
        lines.append(f"log_imbalance: {res.imbalance_at(observed_rer)!r}")
    else:
        lines.append(f"log_imbalance: {res.log_imbalance!r}")
    return "\n".join(lines) + "\n"


def render_neutral_report(report) -> str:
    w = max(len(k) for k in report.rates)
    lines = [f"{'economy':<{w}}  {'g_neutral':>10}"]
    for label, g in report.rates.items():
        lines.append(f"{label:<{w}}  {g:>10.6f}")
    lines.append("")
    lines.append(f"{'pair':<{2 * w + 3}}  {'spread':>10}  flag")
    for a, b, _, _, spread, flag in report.rows:
        pair = f"{a} - {b}"
        lines.append(f"{pair:<{2 * w + 3}}  {spread:>10.6f}  {'OUT' if flag else 'ok'}")
    return "\n".join(lines) + "\n"
