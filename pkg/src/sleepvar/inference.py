"""Granger causality tests on a fitted VAR.

The test is the joint-system Wald form: the null "X does not Granger-cause
Y" restricts every lag coefficient of each causing variable to zero in each
caused variable's equation.  The Wald statistic divided by the number of
restrictions is referred to the F distribution with denominator degrees of
freedom K * (t_eff - K*p - 1), matching the fitted system's residual
degrees of freedom across all K equations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.stats import f as f_dist

from .errors import DataError, NotPositiveDefiniteError, NumericError
from .linalg import cholesky_lower
from .var import VarFit


def f_cdf(x: float, df_num: int, df_den: int) -> float:
    return float(f_dist.cdf(x, df_num, df_den))


def f_sf(x: float, df_num: int, df_den: int) -> float:
    """Survival function 1 - CDF, computed without cancellation."""
    return float(f_dist.sf(x, df_num, df_den))


def f_ppf(q: float, df_num: int, df_den: int) -> float:
    return float(f_dist.ppf(q, df_num, df_den))


@dataclass(frozen=True)
class GrangerResult:
    """One causality test: does ``causing`` help predict ``caused``?"""

    causing: tuple[str, ...]
    caused: tuple[str, ...]
    statistic: float
    critical_value: float
    p_value: float
    df_num: int
    df_den: int
    alpha: float
    reject_null: bool


def _as_name_tuple(fit: VarFit, names, what: str) -> tuple[str, ...]:
    if isinstance(names, str):
        names = (names,)
    names = tuple(names)
    if not names:
        raise DataError(f"{what} set must be non-empty")
    if len(set(names)) != len(names):
        raise DataError(f"{what} set has duplicates: {names}")
    for n in names:
        if n not in fit.var_names:
            raise DataError(f"unknown variable {n!r}; model has {fit.var_names}")
    return names


def granger_test(
    fit: VarFit,
    causing: str | Sequence[str],
    caused: str | Sequence[str],
    alpha: float = 0.05,
) -> GrangerResult:
    """Test the joint nullity of all lag coefficients of ``causing`` in the
    equations of ``caused``.

    ``causing`` and ``caused`` must be disjoint subsets of the fitted
    variables; the restriction count is p * |causing| * |caused|.
    """
    if not 0.0 < alpha < 1.0:
        raise DataError(f"alpha must lie in (0, 1), got {alpha}")
    causing_t = _as_name_tuple(fit, causing, "causing")
    caused_t = _as_name_tuple(fit, caused, "caused")
    overlap = set(causing_t) & set(caused_t)
    if overlap:
        raise DataError(f"causing and caused sets overlap: {sorted(overlap)}")
    if fit.p < 1:
        raise DataError("Granger test requires a fitted lag order of at least 1")

    k = fit.n_vars
    m = fit.n_params
    name_idx = {n: i for i, n in enumerate(fit.var_names)}
    # Restriction r selects stacked coefficient (equation eq, design column c).
    eq_idx, col_idx = [], []
    for cname in caused_t:
        for xname in causing_t:
            for lag in range(fit.p):
                eq_idx.append(name_idx[cname])
                col_idx.append(1 + lag * k + name_idx[xname])
    eq = np.array(eq_idx)
    col = np.array(col_idx)

    params = fit.params_matrix()
    restricted = params[col, eq]
    # Covariance of the selected coefficients: sigma_u (x) (X'X)^-1 entries.
    cov = fit.sigma_u[eq[:, None], eq[None, :]] * fit.normal_matrix_inverse[
        col[:, None], col[None, :]
    ]
    try:
        chol = cholesky_lower(cov)
    except NotPositiveDefiniteError as exc:
        raise NumericError(f"restriction covariance is singular: {exc}") from None
    z = np.linalg.solve(chol, restricted)
    wald = float(z @ z)

    df_num = fit.p * len(causing_t) * len(caused_t)
    df_den = k * (fit.t_eff - k * fit.p - 1)
    if df_den < 1:
        raise DataError("not enough observations for the F reference distribution")
    statistic = wald / df_num
    p_value = f_sf(statistic, df_num, df_den)
    critical_value = f_ppf(1.0 - alpha, df_num, df_den)
    return GrangerResult(
        causing=causing_t,
        caused=caused_t,
        statistic=statistic,
        critical_value=critical_value,
        p_value=p_value,
        df_num=df_num,
        df_den=df_den,
        alpha=alpha,
        reject_null=p_value < alpha,
    )


def granger_all_pairs(fit: VarFit, causing: str, alpha: float = 0.05) -> list[GrangerResult]:
    """One test per remaining variable, in the fitted column order."""
    if causing not in fit.var_names:
        raise DataError(f"unknown variable {causing!r}; model has {fit.var_names}")
    if fit.n_vars < 2:
        raise DataError("all-pairs testing needs at least two variables")
    return [
        granger_test(fit, causing, name, alpha=alpha)
        for name in fit.var_names
        if name != causing
    ]
