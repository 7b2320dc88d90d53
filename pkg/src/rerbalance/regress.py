"""Ordinary least squares with the classical statistic set.

Coefficients come from a Householder QR factorization of the design, never
from the normal equations. Standard errors are the homoskedastic ones.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import CollinearityError, DegenerateInputError, InsufficientDataError
from .stats import f_pvalue, t_pvalue

__all__ = [
    "DesignMatrix",
    "OlsFit",
    "CoefRow",
    "ols_fit",
    "restricted_rss",
    "COND_WARN",
    "COND_ERROR",
]

COND_WARN = 1e8
COND_ERROR = 1e12
CONSTANT = "constant"


@dataclass(frozen=True, eq=False)
class DesignMatrix:
    """Regressor matrix, named columns and dependent variable.

    When ``intercept`` is true the column named ``"constant"`` must be
    present and hold ones; :meth:`from_columns` adds it for you.
    """

    X: np.ndarray
    columns: tuple
    y: np.ndarray
    dependent: str = "y"
    intercept: bool = True
    periods: tuple = ()

    def __post_init__(self):
        X = np.array(self.X, dtype=float, copy=True)
        if X.ndim == 1:
            X = X[:, None]
        y = np.array(self.y, dtype=float, copy=True).reshape(-1)
        cols = tuple(self.columns)
        n, k = X.shape
        if len(cols) != k:
            raise ValueError(f"{len(cols)} column names for {k} columns")
        if len(set(cols)) != k:
            dup = sorted({c for c in cols if cols.count(c) > 1})
            raise ValueError(f"duplicate column names: {dup}")
        if y.size != n:
            raise ValueError(f"dependent has {y.size} rows, design has {n}")
        if np.isnan(X).any() or np.isnan(y).any():
            raise DegenerateInputError("design matrix contains missing values")
        if n <= k:
            raise InsufficientDataError(f"{n} observations for {k} regressors")
        if self.intercept:
            if CONSTANT not in cols:
                raise ValueError("intercept=True but no 'constant' column")
            if not np.all(X[:, cols.index(CONSTANT)] == 1.0):
                raise ValueError("'constant' column must be all ones")
        X.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "columns", cols)

    @classmethod
    def from_columns(cls, columns: dict, y, *, dependent="y", intercept=True, periods=()):
        names = list(columns)
        arrs = [np.asarray(columns[c], dtype=float) for c in names]
        n = np.asarray(y).size
        if intercept:
            names.insert(0, CONSTANT)
            arrs.insert(0, np.ones(n))
        X = np.column_stack(arrs) if arrs else np.empty((n, 0))
        return cls(X, tuple(names), y, dependent, intercept, tuple(periods))

    @property
    def nobs(self) -> int:
        return self.X.shape[0]

    @property
    def k(self) -> int:
        return self.X.shape[1]

    def drop(self, names: Iterable[str]) -> "DesignMatrix":
        names = list(names)
        for c in names:
            if c not in self.columns:
                raise KeyError(f"no column {c!r} in design")
            if self.intercept and c == CONSTANT:
                raise ValueError("cannot drop the intercept")
        keep = [j for j, c in enumerate(self.columns) if c not in names]
        return DesignMatrix(
            self.X[:, keep],
            tuple(self.columns[j] for j in keep),
            self.y,
            self.dependent,
            self.intercept,
            self.periods,
        )

    def permute_rows(self, order) -> "DesignMatrix":
        order = np.asarray(order)
        return DesignMatrix(self.X[order], self.columns, self.y[order], self.dependent, self.intercept)


@dataclass(frozen=True)
class CoefRow:
    name: str
    coef: float
    se: float
    t: float
    p: float


@dataclass(frozen=True, eq=False)
class OlsFit:
    columns: tuple
    coefficients: np.ndarray
    standard_errors: np.ndarray
    t_stats: np.ndarray
    p_values: np.ndarray
    residuals: np.ndarray
    r2: float
    adj_r2: float
    f_stat: float
    f_pvalue: float
    aic: float
    bic: float
    nobs: int
    df_resid: int
    rss: float
    loglike: float
    condition_number: float
    dependent: str = "y"
    intercept: bool = True
    cov: np.ndarray = field(default=None, repr=False)

    @property
    def k(self) -> int:
        return len(self.columns)

    @property
    def df_model(self) -> int:
        return self.k - 1 if self.intercept else self.k

    def __getitem__(self, name: str) -> CoefRow:
        j = self.columns.index(name)
        return CoefRow(
            name,
            float(self.coefficients[j]),
            float(self.standard_errors[j]),
            float(self.t_stats[j]),
            float(self.p_values[j]),
        )

    def rows(self) -> list[CoefRow]:
        return [self[c] for c in self.columns]

    def params(self) -> dict:
        return dict(zip(self.columns, map(float, self.coefficients)))


def _scaled(X):
    norms = np.linalg.norm(X, axis=0)
    norms[norms == 0] = 1.0
    return X / norms


def _dependent_columns(X, columns, tol):
    # Greedy scan: a column is dependent if it adds no rank to those before it.
    Xs = _scaled(X)
    kept = []
    dependent = []
    for j in range(X.shape[1]):
        trial = Xs[:, kept + [j]]
        s = np.linalg.svd(trial, compute_uv=False)
        if s[-1] <= tol * s[0]:
            dependent.append(columns[j])
        else:
            kept.append(j)
    return dependent


def _condition_number(X):
    s = np.linalg.svd(_scaled(X), compute_uv=False)
    return math.inf if s[-1] == 0 else float(s[0] / s[-1])


def ols_fit(d: DesignMatrix) -> OlsFit:
    """Least-squares fit of ``d.y`` on ``d.X``.

    AIC and BIC use the full Gaussian log-likelihood
    ``-(n/2) * (ln(2*pi) + ln(RSS/n) + 1)`` with ``k`` counting every
    estimated coefficient (intercept included).

    Raises
    ------
    CollinearityError
        If the column-scaled design has condition number above
        ``COND_ERROR`` (exact collinearity included); the offending columns
        are named. Above ``COND_WARN`` a ``RuntimeWarning`` is issued instead.
    """
    X, y = d.X, d.y
    n, k = X.shape
    cond = _condition_number(X)
    if not cond <= COND_ERROR:
        dep = _dependent_columns(X, d.columns, 1.0 / COND_ERROR)
        if not dep:
            dep = list(d.columns)
        raise CollinearityError(
            f"design is rank deficient or near-collinear (condition number {cond:.3g}); "
            f"dependent column(s): {', '.join(dep)}",
            dep,
        )
    if cond > COND_WARN:
        warnings.warn(f"ill-conditioned design (condition number {cond:.3g})", RuntimeWarning, stacklevel=2)

    Q, R = np.linalg.qr(X, mode="reduced")
    beta = np.linalg.solve(R, Q.T @ y)
    resid = y - X @ beta
    rss = float(resid @ resid)
    df_resid = n - k

    Rinv = np.linalg.solve(R, np.eye(k))
    sigma2 = rss / df_resid
    cov = sigma2 * (Rinv @ Rinv.T)
    se = np.sqrt(np.diag(cov))
    with np.errstate(divide="ignore", invalid="ignore"):
        t = beta / se
    p = np.array([t_pvalue(float(v), df_resid) for v in t])

    if d.intercept:
        tss = float(((y - y.mean()) ** 2).sum())
        df_model = k - 1
        dof_total = n - 1
    else:
        tss = float(y @ y)
        df_model = k
        dof_total = n
    with np.errstate(divide="ignore", invalid="ignore"):
        r2 = 1.0 - rss / tss if tss > 0 else math.nan
        adj_r2 = 1.0 - (1.0 - r2) * dof_total / df_resid
        if df_model > 0 and tss > 0:
            f_stat = ((tss - rss) / df_model) / (rss / df_resid)
        else:
            f_stat = math.nan
    if math.isnan(f_stat) or f_stat < 0:
        fp = math.nan
    else:
        fp = f_pvalue(f_stat, df_model, df_resid)

    with np.errstate(divide="ignore"):
        llf = -0.5 * n * (math.log(2 * math.pi) + float(np.log(rss / n)) + 1.0)
    aic = -2.0 * llf + 2.0 * k
    bic = -2.0 * llf + k * math.log(n)

    for arr in (beta, se, t, p, resid, cov):
        arr.setflags(write=False)
    return OlsFit(
        columns=d.columns,
        coefficients=beta,
        standard_errors=se,
        t_stats=t,
        p_values=p,
        residuals=resid,
        r2=float(r2),
        adj_r2=float(adj_r2),
        f_stat=float(f_stat),
        f_pvalue=float(fp),
        aic=float(aic),
        bic=float(bic),
        nobs=n,
        df_resid=df_resid,
        rss=rss,
        loglike=float(llf),
        condition_number=cond,
        dependent=d.dependent,
        intercept=d.intercept,
        cov=cov,
    )


def restricted_rss(d: DesignMatrix, drop: Sequence[str]) -> float:
    """Residual sum of squares after refitting without the ``drop`` columns."""
    if not drop:
        return ols_fit(d).rss
    return ols_fit(d.drop(drop)).rss
