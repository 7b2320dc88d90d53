"""Growth-capital equilibrium for the real exchange rate.

Each economy contributes a *growth side*

    price-level:  g_y * k * exp(psi1 * i) / (alpha * dk)
    monetary:     g_y * k * exp(eps * i) / (alpha * dk) * Y**(eta - 1) / V

and two economies balance when

    side(domestic) = RER * side(reference) * C

with ``C = exp(psi0)`` (price level) or ``C = exp(c0 + lambda * t)``
(monetary). ``RER`` is quoted domestic per reference, so a rise means the
domestic currency depreciates in real terms.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError, SingularityError

__all__ = [
    "Formulation",
    "EconomyState",
    "BilsonParams",
    "SolowParams",
    "SectoralAccounts",
    "EquilibriumResult",
    "qtm_velocity",
    "solow_output",
    "solow_marginal",
    "neutral_growth_rate",
    "growth_side",
    "balance_constant",
    "implied_rer",
    "usd_generalised_rer",
    "log_imbalance",
    "sectoral_residual",
]


class Formulation(enum.Enum):
    PRICE_LEVEL = "price"
    MONETARY = "monetary"

    @classmethod
    def parse(cls, value) -> "Formulation":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("-", "_")
        aliases = {"price": cls.PRICE_LEVEL, "price_level": cls.PRICE_LEVEL, "pricelevel": cls.PRICE_LEVEL,
                   "monetary": cls.MONETARY}
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown formulation {value!r}; use 'price' or 'monetary'") from None


@dataclass(frozen=True)
class EconomyState:
    """Snapshot of one economy.

    ``dk`` may be zero or negative here; the equilibrium functions reject a
    non-positive growth side when they need one.
    """

    label: str
    g_y: float
    k: float
    dk: float
    alpha: float
    i: float
    Y: float
    P: float
    M: float
    n: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"{self.label}: alpha={self.alpha} outside (0, 1)")
        for name in ("k", "n", "M", "P", "Y"):
            v = getattr(self, name)
            if not v > 0:
                raise DomainError(f"{self.label}: {name}={v} must be positive")
        for name in ("g_y", "dk", "i"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{self.label}: {name} must be finite")

    @property
    def y(self) -> float:
        """Per-capita output ``Y / n``."""
        return self.Y / self.n


@dataclass(frozen=True)
class BilsonParams:
    """Exchange-rate model coefficients.

    ``epsilon=None`` means "same as ``psi1``"; with ``eta = 1`` and
    ``c0 = lam = psi0 = 0`` the monetary and price-level forms coincide up
    to the velocity ratio.
    """

    psi0: float = 0.0
    psi1: float = 0.0
    epsilon: float | None = None
    c0: float = 0.0
    lam: float = 0.0
    eta: float = 1.0
    t: float = 0.0

    def __post_init__(self):
        if self.t < 0:
            raise DomainError(f"time index t={self.t} must be non-negative")
        if self.epsilon is None:
            object.__setattr__(self, "epsilon", self.psi1)


@dataclass(frozen=True)
class SolowParams:
    z: float = 1.0
    alpha: float = 0.3

    def __post_init__(self):
        if not self.z > 0:
            raise DomainError(f"z={self.z} must be positive")
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha={self.alpha} outside (0, 1)")


@dataclass(frozen=True)
class SectoralAccounts:
    S: float
    I: float
    G: float
    T: float
    NX: float


@dataclass(frozen=True)
class EquilibriumResult:
    formulation: Formulation
    implied_rer: float
    domestic_side: float
    reference_side: float
    constant: float = 1.0
    log_imbalance: float = 0.0

    def imbalance_at(self, observed_rer: float) -> float:
        if not observed_rer > 0:
            raise DomainError(f"observed RER must be positive, got {observed_rer}")
        return math.log(self.domestic_side) - math.log(self.reference_side * self.constant * observed_rer)


def qtm_velocity(e: EconomyState) -> float:
    """Velocity of money ``V = P * Y / M``."""
    return e.P * e.Y / e.M


def solow_output(p: SolowParams, k: float) -> float:
    """Cobb-Douglas per-capita output ``z * k**alpha``."""
    if not k > 0:
        raise DomainError(f"k={k} must be positive")
    return p.z * k ** p.alpha


def solow_marginal(p: SolowParams, k: float) -> float:
    """``dy/dk = alpha * y / k``."""
    return p.alpha * solow_output(p, k) / k


def neutral_growth_rate(e: EconomyState) -> float:
    """Capital-neutral growth rate ``g* = alpha * dk / k``.

    This is the growth rate at which ``g * y / dk`` equals the marginal
    product ``alpha * y / k``.
    """
    return e.alpha * e.dk / e.k


def growth_side(e: EconomyState, b: BilsonParams, f: Formulation = Formulation.PRICE_LEVEL) -> float:
    f = Formulation.parse(f)
    if e.dk == 0:
        raise SingularityError(f"{e.label}: dk = 0, growth side undefined")
    if f is Formulation.PRICE_LEVEL:
        side = e.g_y * e.k * math.exp(b.psi1 * e.i) / (e.alpha * e.dk)
    else:
        side = (
            e.g_y * e.k * math.exp(b.epsilon * e.i) / (e.alpha * e.dk)
            * e.Y ** (b.eta - 1.0) / qtm_velocity(e)
        )
    if not side > 0:
        raise SingularityError(
            f"{e.label}: growth side {side:.6g} is not positive (g_y={e.g_y}, dk={e.dk})"
        )
    return side


def balance_constant(b: BilsonParams, f: Formulation) -> float:
    """``exp(psi0)`` for the price-level form, ``exp(c0 + lam * t)`` otherwise."""
    if Formulation.parse(f) is Formulation.PRICE_LEVEL:
        return math.exp(b.psi0)
    return math.exp(b.c0 + b.lam * b.t)


def implied_rer(
    domestic: EconomyState,
    reference: EconomyState,
    b: BilsonParams = BilsonParams(),
    f: Formulation = Formulation.PRICE_LEVEL,
) -> EquilibriumResult:
    """RER (domestic per reference) that balances the two growth sides."""
    f = Formulation.parse(f)
    dom = growth_side(domestic, b, f)
    ref = growth_side(reference, b, f)
    c = balance_constant(b, f)
    return EquilibriumResult(f, dom / (ref * c), dom, ref, c, 0.0)


def usd_generalised_rer(
    x: EconomyState,
    usd: EconomyState,
    p_ratio: float,
    b: BilsonParams = BilsonParams(),
    f: Formulation = Formulation.PRICE_LEVEL,
) -> EquilibriumResult:
    """RER of ``x`` against the dollar medium, pinned through the U.S. economy.

    ``p_ratio`` is ``P_USD / P_$``. Because the USD/$ spot rate is fixed at
    one, the dollar-medium side times its balance constant equals
    ``p_ratio * side(usd)``, so no ``psi0`` (or ``c0 + lam*t``) factor
    appears here.
    """
    if not p_ratio > 0:
        raise DomainError(f"p_ratio={p_ratio} must be positive")
    f = Formulation.parse(f)
    dom = growth_side(x, b, f)
    ref = growth_side(usd, b, f)
    return EquilibriumResult(f, dom / (p_ratio * ref), dom, ref, p_ratio, 0.0)


def log_imbalance(
    domestic: EconomyState,
    reference: EconomyState,
    observed_rer: float,
    b: BilsonParams = BilsonParams(),
    f: Formulation = Formulation.PRICE_LEVEL,
) -> float:
    """``ln(side_dom) - ln(side_ref * C * observed_rer)``.

    Positive values mean the RER has to rise (domestic depreciation) to
    restore balance.
    """
    return implied_rer(domestic, reference, b, f).imbalance_at(observed_rer)


def sectoral_residual(a: SectoralAccounts) -> float:
    """``(S - I) - (G - T) - NX``; zero when the accounts are consistent."""
    return (a.S - a.I) - (a.G - a.T) - a.NX
