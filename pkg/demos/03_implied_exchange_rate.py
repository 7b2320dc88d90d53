"""
Implied real exchange rate
==========================

Two economies described by growth, capital and money. The implied real
exchange rate balances their growth-capital sides; the log imbalance says
how far an observed rate sits from it.
"""

from dataclasses import replace

import numpy as np

from rerbalance import report
from rerbalance.equilibrium import (
    BilsonParams,
    EconomyState,
    Formulation,
    growth_side,
    implied_rer,
    neutral_growth_rate,
    usd_generalised_rer,
)

home = EconomyState("home", g_y=0.07, k=15.0, dk=1.5, alpha=0.3, i=0.06, Y=120.0, P=1.0, M=60.0)
us = EconomyState("us", g_y=0.02, k=40.0, dk=2.0, alpha=0.35, i=0.04, Y=400.0, P=1.0, M=150.0)
b = BilsonParams(psi0=0.0, psi1=0.5)

print("neutral growth:", neutral_growth_rate(home), neutral_growth_rate(us))
print(report.render_equilibrium(implied_rer(home, us, b), observed_rer=1.0))
print(report.render_equilibrium(implied_rer(home, us, b, Formulation.MONETARY)))

# at its neutral growth rate an economy's side reduces to exp(psi1 * i)
at_neutral = replace(home, g_y=neutral_growth_rate(home))
print(growth_side(at_neutral, b), np.exp(b.psi1 * home.i))

# price ratio of a dollar-denominated reference changes the rate one for one in logs
for ratio in (0.8, 1.0, 1.25):
    print(ratio, usd_generalised_rer(home, us, ratio, b).implied_rer)

# growing faster than capital allows pushes the implied rate up
for g in np.linspace(0.02, 0.10, 5):
    print(f"g_y={g:.2f}  rer={implied_rer(replace(home, g_y=g), us, b).implied_rer:.4f}")
