"""Twin-deficit econometrics and growth-capital exchange-rate equilibrium.

The econometric half (``series``, ``stats``, ``regress``, ``inference``)
builds ARDL regressions and Granger-causality batteries from period-keyed
series. The model half (``equilibrium``, ``scenario``) evaluates the real
exchange rate that balances two economies' growth-capital positions and
simulates how an imbalance is vented or defended.
"""
from .equilibrium import (
    BilsonParams,
    EconomyState,
    EquilibriumResult,
    Formulation,
    SectoralAccounts,
    SolowParams,
    growth_side,
    implied_rer,
    log_imbalance,
    neutral_growth_rate,
    qtm_velocity,
    sectoral_residual,
    solow_marginal,
    solow_output,
    usd_generalised_rer,
)
from .inference import (
    ArdlSpec,
    CountrySpec,
    GrangerResult,
    build_ardl_design,
    fit_ardl,
    granger_test,
    india_yield_spec,
    replication_battery,
)
from .regress import DesignMatrix, OlsFit, ols_fit, restricted_rss
from .scenario import (
    DebtFinancing,
    DebtSource,
    Floating,
    Pegged,
    apply_debt_financing,
    classify_regime,
    neutral_rate_comparison,
    simulate,
    step,
)
from .series import (
    Frequency,
    TimeSeries,
    align_listwise,
    annual_to_quarterly,
    lag,
    natural_log,
    pct_change_yoy,
)
from .stats import f_cdf, regularized_incomplete_beta, student_t_cdf

__version__ = "0.1.0"
