"""Discrete-time currency-shock scenarios.

Each period the domestic economy is evaluated at its target growth rate
against a reference economy. The resulting log imbalance ``m`` is cleared
according to the exchange-rate regime:

* floating: the nominal rate rises by ``theta * m`` (log) and the domestic
  price level falls by ``(1 - theta) * m``, so the real rate rises by ``m``;
* pegged: the real rate is held and reserves fall by
  ``drain * |m| * reserves_scale``. When reserves cannot cover a period's
  drain the peg breaks: the real rate jumps to its implied value, reserves
  are exhausted and the regime becomes floating.

The vent share ``theta`` and drain coefficient are model closures chosen
for this simulator; they carry no empirical calibration.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Sequence, Union

import numpy as np

from .equilibrium import (
    BilsonParams,
    EconomyState,
    Formulation,
    implied_rer,
    neutral_growth_rate,
)
from .errors import DomainError
from .series import Frequency, format_period

__all__ = [
    "RegimeKind",
    "GrowthRegime",
    "Floating",
    "Pegged",
    "Event",
    "StepResult",
    "DebtSource",
    "DebtFinancing",
    "CapitalSchedule",
    "PeriodRecord",
    "ScenarioPath",
    "NeutralRateReport",
    "classify_regime",
    "step",
    "baseline_capital",
    "apply_debt_financing",
    "simulate",
    "neutral_rate_comparison",
    "TRAJECTORY_COLUMNS",
]

DEFAULT_VENT_SHARE = 0.5
DEFAULT_DRAIN = 0.1
DEFAULT_NEUTRAL_TOL = 1e-6
DEFAULT_MIN_DK = 1e-9

TRAJECTORY_COLUMNS = ("period", "rer", "price_level", "reserves", "k", "dk", "g_target", "g_neutral", "event")


class RegimeKind(enum.Enum):
    CAPITAL_DEFICIT = "CapitalDeficit"
    CAPITAL_NEUTRAL = "CapitalNeutral"
    CAPITAL_SURPLUS = "CapitalSurplus"


@dataclass(frozen=True)
class GrowthRegime:
    kind: RegimeKind
    margin: float
    neutral_rate: float


def classify_regime(e: EconomyState, target_g: float, tol: float = DEFAULT_NEUTRAL_TOL) -> GrowthRegime:
    """Compare a growth target with the capital-neutral rate ``alpha*dk/k``."""
    if tol < 0:
        raise ValueError("tolerance must be non-negative")
    g_star = neutral_growth_rate(e)
    margin = target_g - g_star
    if abs(margin) <= tol:
        kind = RegimeKind.CAPITAL_NEUTRAL
    elif margin > 0:
        kind = RegimeKind.CAPITAL_DEFICIT
    else:
        kind = RegimeKind.CAPITAL_SURPLUS
    return GrowthRegime(kind, margin, g_star)


@dataclass(frozen=True)
class Floating:
    vent_share: float = DEFAULT_VENT_SHARE

    def __post_init__(self):
        if not 0.0 <= self.vent_share <= 1.0:
            raise DomainError(f"vent share {self.vent_share} outside [0, 1]")

    @property
    def name(self) -> str:
        return "Floating"


@dataclass(frozen=True)
class Pegged:
    reserves: float
    drain: float = DEFAULT_DRAIN
    reserves_scale: float = 1.0
    post_crisis_vent_share: float = DEFAULT_VENT_SHARE

    def __post_init__(self):
        if not self.reserves >= 0:
            raise DomainError(f"reserves {self.reserves} must be non-negative")
        if not self.drain > 0:
            raise DomainError(f"drain coefficient {self.drain} must be positive")
        if not self.reserves_scale > 0:
            raise DomainError("reserves_scale must be positive")
        if not 0.0 <= self.post_crisis_vent_share <= 1.0:
            raise DomainError("post-crisis vent share outside [0, 1]")

    @property
    def name(self) -> str:
        return "Pegged"


PolicyRegime = Union[Floating, Pegged]


@dataclass(frozen=True)
class Event:
    kind: str
    period: int
    value: float

    def __str__(self) -> str:
        label = {"CrisisDevaluation": "jump", "FinancingStress": "shortfall"}.get(self.kind, "value")
        return f"{self.kind}({label}={self.value:.6f})"


@dataclass(frozen=True)
class StepResult:
    state: EconomyState
    rer: float
    price_level: float
    reserves: float
    policy: object
    imbalance: float
    spot_factor: float = 1.0
    event: Event | None = None


def step(
    state: EconomyState,
    reference: EconomyState,
    rer: float,
    policy: PolicyRegime,
    b: BilsonParams = BilsonParams(),
    f: Formulation = Formulation.PRICE_LEVEL,
    *,
    reserves: float | None = None,
    period: int = 0,
) -> StepResult:
    """Advance the exchange-rate block by one period.

    ``rer`` is the real rate going into the period. For a pegged regime the
    current reserve stock is ``reserves`` (defaulting to ``policy.reserves``).
    The returned ``spot_factor`` is the multiplicative change in the nominal
    rate, which lets callers track it without round-off when ``theta`` is 0.
    """
    if not rer > 0:
        raise DomainError(f"rer={rer} must be positive")
    eq = implied_rer(state, reference, b, f)
    m = eq.imbalance_at(rer)
    P = state.P

    if isinstance(policy, Floating):
        theta = policy.vent_share
        spot_factor = math.exp(theta * m)
        new_p = P * math.exp(-(1.0 - theta) * m)
        new_rer = rer * math.exp(m)
        res = 0.0 if reserves is None else reserves
        return StepResult(replace(state, P=new_p), new_rer, new_p, res, policy, m, spot_factor)

    if not isinstance(policy, Pegged):
        raise TypeError(f"unknown policy regime {policy!r}")
    res = policy.reserves if reserves is None else reserves
    drain = policy.drain * abs(m) * policy.reserves_scale
    if drain <= res:
        return StepResult(state, rer, P, res - drain, policy, m)

    jump = math.log(eq.implied_rer) - math.log(rer)
    event = Event("CrisisDevaluation", period, jump)
    return StepResult(
        state,
        eq.implied_rer,
        P,
        0.0,
        Floating(policy.post_crisis_vent_share),
        m,
        eq.implied_rer / rer,
        event,
    )


class DebtSource(enum.Enum):
    DOMESTIC = "domestic"
    INTERNATIONAL = "international"


@dataclass(frozen=True)
class DebtFinancing:
    """A borrowing of ``amount`` units of per-capita capital.

    ``service`` is either a constant per-period payment or a sequence whose
    ``j``-th entry is paid ``j + 1`` periods after borrowing (zero past its
    end).
    """

    source: DebtSource
    amount: float
    service: object = 0.0

    def __post_init__(self):
        object.__setattr__(self, "source", DebtSource(self.source))
        if not self.amount > 0:
            raise DomainError("debt amount must be positive")
        svc = self.service
        vals = [svc] if np.isscalar(svc) else list(svc)
        if any(v < 0 for v in vals):
            raise DomainError("debt service payments must be non-negative")
        if not np.isscalar(svc):
            object.__setattr__(self, "service", tuple(float(v) for v in svc))

    def service_at(self, j: int) -> float:
        if np.isscalar(self.service):
            return float(self.service)
        return self.service[j - 1] if 1 <= j <= len(self.service) else 0.0


@dataclass
class CapitalSchedule:
    k: np.ndarray
    dk: np.ndarray
    events: list = field(default_factory=list)
    ledger: list = field(default_factory=list)


def baseline_capital(k0: float, dk0: float, horizon: int) -> CapitalSchedule:
    """Capital accumulating as ``k[t+1] = k[t] + dk`` with constant ``dk``."""
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    dk = np.full(horizon, float(dk0))
    k = np.empty(horizon)
    k[0] = k0
    for t in range(1, horizon):
        k[t] = k[t - 1] + dk[t - 1]
    return CapitalSchedule(k, dk)


def apply_debt_financing(
    schedule: CapitalSchedule,
    d: DebtFinancing,
    at_period: int,
    min_dk: float = DEFAULT_MIN_DK,
) -> CapitalSchedule:
    """Overlay a debt-financing event on a capital schedule.

    International borrowing adds ``amount`` to ``k`` at ``at_period`` and
    subtracts the service payment from ``dk`` in every later period. If a
    payment would push ``dk`` below ``min_dk`` a ``FinancingStress`` event is
    logged and ``dk`` is floored there. Domestic borrowing only moves capital
    between domestic holders, so the aggregate paths are returned unchanged
    and the transfer is written to the ledger.
    """
    horizon = schedule.k.size
    if not 0 <= at_period < horizon:
        raise ValueError(f"at_period {at_period} outside horizon 0..{horizon - 1}")
    events = list(schedule.events)
    ledger = list(schedule.ledger)
    if d.source is DebtSource.DOMESTIC:
        ledger.append(f"period {at_period}: domestic transfer of {d.amount:g} (aggregate capital unchanged)")
        return CapitalSchedule(schedule.k.copy(), schedule.dk.copy(), events, ledger)

    dk = schedule.dk.copy()
    for t in range(at_period + 1, horizon):
        s = d.service_at(t - at_period)
        if s == 0:
            continue
        raw = dk[t] - s
        if raw < min_dk:
            warnings.warn(
                f"period {t}: debt service {s:g} exceeds capital development {dk[t]:g}; "
                f"dk floored at {min_dk:g}",
                RuntimeWarning,
                stacklevel=2,
            )
            events.append(Event("FinancingStress", t, s - dk[t]))
            raw = min_dk
        dk[t] = raw
    k = schedule.k.copy()
    k[at_period] += d.amount
    for t in range(at_period + 1, horizon):
        k[t] = k[t - 1] + dk[t - 1]
    ledger.append(f"period {at_period}: international borrowing of {d.amount:g}")
    return CapitalSchedule(k, dk, events, ledger)


@dataclass(frozen=True)
class PeriodRecord:
    period: int
    state: EconomyState
    rer: float
    spot: float
    price_level: float
    reserves: float
    regime: GrowthRegime
    policy: str
    imbalance: float
    events: tuple = ()


@dataclass
class ScenarioPath:
    records: list
    ledger: list = field(default_factory=list)
    start: tuple = (2000, 1)
    frequency: Frequency = Frequency.QUARTERLY

    def __len__(self):
        return len(self.records)

    def _col(self, fn):
        return np.array([fn(r) for r in self.records])

    @property
    def rer(self):
        return self._col(lambda r: r.rer)

    @property
    def spot(self):
        return self._col(lambda r: r.spot)

    @property
    def price_level(self):
        return self._col(lambda r: r.price_level)

    @property
    def reserves(self):
        return self._col(lambda r: r.reserves)

    @property
    def k(self):
        return self._col(lambda r: r.state.k)

    @property
    def dk(self):
        return self._col(lambda r: r.state.dk)

    @property
    def g_target(self):
        return self._col(lambda r: r.state.g_y)

    @property
    def g_neutral(self):
        return self._col(lambda r: r.regime.neutral_rate)

    @property
    def imbalance(self):
        return self._col(lambda r: r.imbalance)

    @property
    def events(self) -> list:
        return [e for r in self.records for e in r.events]

    def period_label(self, t: int) -> str:
        m = self.frequency.periods_per_year
        idx = self.start[0] * m + self.start[1] - 1 + t
        return format_period((idx // m, idx % m + 1), self.frequency)

    def rows(self):
        """Trajectory rows as strings, in ``TRAJECTORY_COLUMNS`` order."""
        for r in self.records:
            yield (
                self.period_label(r.period),
                repr(float(r.rer)),
                repr(float(r.price_level)),
                repr(float(r.reserves)),
                repr(float(r.state.k)),
                repr(float(r.state.dk)),
                repr(float(r.state.g_y)),
                repr(float(r.regime.neutral_rate)),
                ";".join(str(e) for e in r.events),
            )


def _target_path(target_g, horizon, schedule, initial):
    if isinstance(target_g, str):
        if target_g.lower() != "neutral":
            raise ValueError(f"target_g must be a number, a sequence or 'neutral', got {target_g!r}")
        return [initial.alpha * schedule.dk[t] / schedule.k[t] for t in range(horizon)]
    if np.isscalar(target_g):
        return [float(target_g)] * horizon
    vals = [float(v) for v in target_g]
    if len(vals) < horizon:
        raise ValueError(f"target path has {len(vals)} entries for horizon {horizon}")
    return vals


def _reference_path(reference, horizon, noise_sd, seed):
    if isinstance(reference, EconomyState):
        refs = [reference] * horizon
    else:
        refs = list(reference)
        if len(refs) < horizon:
            raise ValueError(f"reference path has {len(refs)} states for horizon {horizon}")
    if noise_sd > 0:
        rng = np.random.default_rng(seed)
        shocks = rng.standard_normal(horizon) * noise_sd
        refs = [replace(r, g_y=r.g_y * math.exp(z)) for r, z in zip(refs, shocks)]
    return refs[:horizon]


def simulate(
    initial: EconomyState,
    reference,
    policy: PolicyRegime,
    target_g,
    horizon: int,
    debt: DebtFinancing | None = None,
    *,
    debt_period: int = 0,
    b: BilsonParams = BilsonParams(),
    f: Formulation = Formulation.PRICE_LEVEL,
    rer0: float | None = None,
    min_dk: float = DEFAULT_MIN_DK,
    neutral_tol: float = DEFAULT_NEUTRAL_TOL,
    noise_sd: float = 0.0,
    seed: int | None = None,
    start: tuple = (2000, 1),
    frequency: Frequency = Frequency.QUARTERLY,
) -> ScenarioPath:
    """Run a scenario for ``horizon`` periods.

    Parameters
    ----------
    initial : EconomyState
        Domestic economy at period 0. Its ``k`` and ``dk`` seed the capital
        schedule; its own ``g_y`` only sets the default starting RER.
    reference : EconomyState or sequence of EconomyState
        Reference economy, constant or one state per period.
    policy : Floating or Pegged
    target_g : float, sequence of float, or ``"neutral"``
        Domestic growth target per period; ``"neutral"`` tracks
        ``alpha * dk / k``.
    debt : DebtFinancing, optional
        Applied at ``debt_period``.
    rer0 : float, optional
        Starting real rate. Defaults to the rate implied by ``initial`` as
        given, i.e. the equilibrium before the growth target is imposed.
    noise_sd, seed
        Optional log-normal noise on the reference growth rate.
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    schedule = baseline_capital(initial.k, initial.dk, horizon)
    if debt is not None:
        schedule = apply_debt_financing(schedule, debt, debt_period, min_dk)
    targets = _target_path(target_g, horizon, schedule, initial)
    refs = _reference_path(reference, horizon, noise_sd, seed)
    stress = {}
    for e in schedule.events:
        stress.setdefault(e.period, []).append(e)

    rer = implied_rer(initial, refs[0], b, f).implied_rer if rer0 is None else float(rer0)
    spot = rer * initial.P / refs[0].P
    price = initial.P
    reserves = policy.reserves if isinstance(policy, Pegged) else 0.0

    records = []
    for t in range(horizon):
        state = replace(initial, k=float(schedule.k[t]), dk=float(schedule.dk[t]), g_y=targets[t], P=price)
        regime = classify_regime(state, targets[t], neutral_tol)
        res = step(state, refs[t], rer, policy, b, f, reserves=reserves, period=t)
        events = tuple(stress.get(t, ())) + ((res.event,) if res.event else ())
        spot *= res.spot_factor
        rer, price, reserves, policy = res.rer, res.price_level, res.reserves, res.policy
        records.append(
            PeriodRecord(t, state, rer, spot, price, reserves, regime, policy.name, res.imbalance, events)
        )
    return ScenarioPath(records, schedule.ledger, start, frequency)


@dataclass(frozen=True)
class NeutralRateReport:
    rates: dict
    rows: tuple  # (label_a, label_b, g_a, g_b, spread, out_of_neutrality)
    max_spread: float

    @property
    def flagged(self):
        return [r for r in self.rows if r[5]]


def neutral_rate_comparison(economies: Sequence[EconomyState], max_spread: float = 0.01) -> NeutralRateReport:
    """Pairwise absolute spreads between capital-neutral growth rates."""
    economies = list(economies)
    if len(economies) < 2:
        raise ValueError("need at least two economies")
    rates = {e.label: neutral_growth_rate(e) for e in economies}
    if len(rates) != len(economies):
        raise ValueError("economy labels must be unique")
    rows = []
    for a, b in combinations(economies, 2):
        ga, gb = rates[a.label], rates[b.label]
        spread = abs(ga - gb)
        rows.append((a.label, b.label, ga, gb, spread, spread > max_spread))
    return NeutralRateReport(rates, tuple(rows), max_spread)
