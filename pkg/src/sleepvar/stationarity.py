"""Unit-root testing, differencing, seasonal decomposition, and PACF.

Conventions worth spelling out once:

* The augmented Dickey-Fuller null hypothesis is "a unit root is present"
  (the series is NOT stationary).  A small p-value is therefore evidence
  of stationarity, and :func:`recommend_differencing` suggests differencing
  exactly when the p-value fails to reject that null.
* The augmentation order is picked by minimizing the regression AIC over
  0..max_lag on a common trimmed sample, then the test regression is refit
  at the chosen order on all usable rows.
* p-values come from the bundled response-surface approximation
  (:mod:`sleepvar.mackinnon`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import mackinnon
from .errors import DataError, NumericError

ADF_MIN_OBS = 15
REGRESSIONS = mackinnon.REGRESSIONS  # ("constant", "constant_and_trend")
WHITE_NOISE_Z = 1.96


@dataclass(frozen=True)
class AdfResult:
    """Augmented Dickey-Fuller outcome.

    ``statistic`` is the t-ratio on the lagged level; ``used_lag`` the chosen
    augmentation order; ``n_obs`` the rows in the final regression.
    ``critical_values`` maps '1%', '5%', '10%' to finite-sample thresholds.
    """

    statistic: float
    p_value: float
    used_lag: int
    n_obs: int
    critical_values: dict[str, float]
    regression: str


class DifferencingDecision(NamedTuple):
    p_value: float
    needs_differencing: bool


@dataclass(frozen=True)
class Decomposition:
    """Additive trend/seasonal/residual split; NaN where the trend window
    cannot be centered (half a window at each end)."""

    trend: np.ndarray
    seasonal: np.ndarray
    residual: np.ndarray
    period: int


@dataclass(frozen=True)
class PacfResult:
    """Partial autocorrelations at lags 0..n (``values[0] == 1``) plus the
    plotting band ``+-band`` for a white-noise null at the 5% level."""

    values: np.ndarray
    band: float


def _clean_series(series, min_len: int) -> np.ndarray:
    y = np.asarray(series, dtype=float)
    if y.ndim != 1:
        raise DataError(f"series must be 1-D, got shape {y.shape}")
    if y.size < min_len:
        raise DataError(f"series too short: need at least {min_len} observations, got {y.size}")
    if np.isnan(y).any():
        raise DataError("series contains missing values")
    if not np.isfinite(y).all():
        raise DataError("series contains non-finite values")
    return y


def _pinv_lstsq(x: np.ndarray, y: np.ndarray):
    """OLS that tolerates rank deficiency (degenerate deterministic inputs).

    Returns (beta, ssr, diag of pseudo-inverse of X'X).
    """
    u, s, vt = np.linalg.svd(x, full_matrices=False)
    cutoff = s.max(initial=0.0) * max(x.shape) * np.finfo(float).eps
    keep = s > cutoff
    inv_s = np.where(keep, 1.0 / np.where(keep, s, 1.0), 0.0)
    beta = vt.T @ (inv_s * (u.T @ y))
    resid = y - x @ beta
    ssr = float(resid @ resid)
    xtx_pinv_diag = np.einsum("ji,j->i", vt**2, inv_s**2)
    return beta, ssr, xtx_pinv_diag


def _adf_design(y: np.ndarray, k: int, ntrend: int):
    """Regression pieces for augmentation order k.

    Rows are t = k+1 .. T-1.  Columns: constant, (trend,) level y_{t-1},
    then lagged differences dy_{t-1} .. dy_{t-k}.
    """
    t_total = y.size
    dy = np.diff(y)
    n = t_total - 1 - k
    cols = [np.ones(n)]
    if ntrend == 2:
        cols.append(np.arange(1.0, n + 1.0))
    cols.append(y[k : t_total - 1])
    for j in range(1, k + 1):
        cols.append(dy[k - j : t_total - 1 - j])
    return np.column_stack(cols), dy[k:]


def adf_test(series, regression: str = "constant", max_lag: int | None = None) -> AdfResult:
    """Augmented Dickey-Fuller test (null hypothesis: unit root present).

    Regresses dy_t on y_{t-1}, lagged differences, and deterministic terms.
    ``max_lag`` bounds the AIC search for the augmentation order; the
    default is floor(12 * (T/100)^(1/4)), capped so the regression keeps
    positive degrees of freedom.
    """
    if regression not in REGRESSIONS:
        raise DataError(f"unknown regression {regression!r}; choose from {REGRESSIONS}")
    y = _clean_series(series, ADF_MIN_OBS)
    if np.ptp(y) == 0.0:
        raise DataError("series is constant; unit-root test undefined")

    t_total = y.size
    ntrend = 1 if regression == "constant" else 2
    cap = t_total // 2 - ntrend - 1
    if max_lag is None:
        max_lag = int(12.0 * (t_total / 100.0) ** 0.25)
        max_lag = min(max_lag, cap)
    elif max_lag < 0:
        raise DataError(f"max_lag must be non-negative, got {max_lag}")
    elif max_lag > cap:
        raise DataError(f"max_lag {max_lag} too large for series of length {t_total}")
    if max_lag < 0:
        raise DataError(f"series too short for an ADF regression with {regression!r} terms")

    # Augmentation order by AIC on the common sample trimmed at max_lag.
    x_full, target = _adf_design(y, max_lag, ntrend)
    n = target.size
    base = ntrend + 1
    best = (np.inf, 0)
    for k in range(max_lag + 1):
        _, ssr, _ = _pinv_lstsq(x_full[:, : base + k], target)
        aic = n * np.log(max(ssr, 1e-300) / n) + 2.0 * (base + k)
        if aic < best[0]:
            best = (aic, k)
    used_lag = best[1]

    # Final regression at the chosen order uses every available row.
    x, target = _adf_design(y, used_lag, ntrend)
    n_obs = target.size
    dof = n_obs - x.shape[1]
    if dof < 1:
        raise DataError("series too short for the selected augmentation order")
    beta, ssr, pinv_diag = _pinv_lstsq(x, target)
    level = ntrend  # index of the y_{t-1} column
    se = float(np.sqrt(ssr / dof * pinv_diag[level]))
    statistic = float(beta[level] / se) if se > 0.0 else 0.0

    return AdfResult(
        statistic=statistic,
        p_value=mackinnon.approx_p_value(statistic, regression),
        used_lag=used_lag,
        n_obs=n_obs,
        critical_values=mackinnon.critical_values(regression, n_obs),
        regression=regression,
    )


def recommend_differencing(series, alpha: float = 0.05) -> DifferencingDecision:
    """ADF with constant terms; differencing is needed when p > alpha."""
    if not 0.0 <= alpha <= 1.0:
        raise DataError(f"alpha must lie in [0, 1], got {alpha}")
    res = adf_test(series, regression="constant")
    return DifferencingDecision(res.p_value, res.p_value > alpha)


def difference(series, order: int = 1) -> np.ndarray:
    """Order-fold first differences; output length is T - order."""
    if order < 1:
        raise DataError(f"differencing order must be >= 1, got {order}")
    y = np.asarray(series, dtype=float)
    if y.ndim != 1:
        raise DataError(f"series must be 1-D, got shape {y.shape}")
    if y.size <= order:
        raise DataError(f"series of length {y.size} too short to difference {order} times")
    return np.diff(y, n=order)


def classical_decompose(series, period: int = 7) -> Decomposition:
    """Additive classical decomposition with a centered moving-average trend.

    For an even period the trend window spans period+1 points with
    half-weight endpoints; seasonal effects are per-phase means of the
    detrended series, re-centered to sum to zero over one period.
    """
    if period < 2:
        raise DataError(f"period must be >= 2, got {period}")
    y = _clean_series(series, 2 * period)
    n = y.size

    if period % 2 == 0:
        weights = np.full(period + 1, 1.0 / period)
        weights[0] = weights[-1] = 0.5 / period
        half = period // 2
    else:
        weights = np.full(period, 1.0 / period)
        half = (period - 1) // 2
    trend = np.full(n, np.nan)
    trend[half : n - half] = np.convolve(y, weights, mode="valid")

    detrended = y - trend
    profile = np.empty(period)
    for phase in range(period):
        vals = detrended[phase::period]
        profile[phase] = np.nanmean(vals)
    profile -= profile.mean()
    seasonal = np.resize(profile, n)

    residual = y - trend - seasonal
    return Decomposition(trend=trend, seasonal=seasonal, residual=residual, period=period)


def _autocovariances(y: np.ndarray, n_lags: int) -> np.ndarray:
    """Adjusted (unbiased-denominator) sample autocovariances at lags 0..n_lags."""
    centered = y - y.mean()
    n = y.size
    acov = np.empty(n_lags + 1)
    for k in range(n_lags + 1):
        acov[k] = centered[: n - k] @ centered[k:] / (n - k)
    return acov


def pacf(series, n_lags: int) -> PacfResult:
    """Partial autocorrelations via the Durbin-Levinson recursion.

    ``values[k]`` is the correlation between y_t and y_{t-k} after removing
    the influence of the intervening lags; ``values[0]`` is 1 by definition.
    """
    y = np.asarray(series, dtype=float)
    if y.ndim != 1:
        raise DataError(f"series must be 1-D, got shape {y.shape}")
    if n_lags < 0:
        raise DataError(f"n_lags must be non-negative, got {n_lags}")
    if n_lags >= y.size / 2:
        raise DataError(f"n_lags {n_lags} must be below half the series length {y.size}")
    y = _clean_series(y, max(2, n_lags + 1))
    if np.ptp(y) == 0.0:
        raise DataError("series is constant; autocorrelation undefined")

    acov = _autocovariances(y, n_lags)
    r = acov / acov[0]
    out = np.empty(n_lags + 1)
    out[0] = 1.0
    phi = np.zeros(n_lags + 1)  # phi[j] = coefficient j of the current order
    prev = np.zeros(n_lags + 1)
    for k in range(1, n_lags + 1):
        num = r[k] - prev[1:k] @ r[1:k][::-1]
        den = 1.0 - prev[1:k] @ r[1:k]
        if den <= 0.0:
            raise NumericError(
                f"autocovariance sequence is numerically degenerate at lag {k}"
            )
        phi[k] = num / den
        phi[1:k] = prev[1:k] - phi[k] * prev[1:k][::-1]
        out[k] = phi[k]
        prev[: k + 1] = phi[: k + 1]
    return PacfResult(values=out, band=WHITE_NOISE_Z / np.sqrt(y.size))
