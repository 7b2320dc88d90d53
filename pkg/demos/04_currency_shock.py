"""
Currency-shock scenarios
========================

A home economy targets growth above its capital-neutral rate. Under a peg
reserves drain until a crisis devaluation; under a float the imbalance is
vented through the exchange rate and the price level. A foreign loan adds
capital but its service eats into later capital growth.
"""

from rerbalance.equilibrium import BilsonParams, EconomyState
from rerbalance.scenario import DebtFinancing, Floating, Pegged, classify_regime, simulate

b = BilsonParams(psi1=0.5)
home = EconomyState("home", g_y=0.03, k=20.0, dk=2.0, alpha=0.3, i=0.05, Y=100.0, P=1.0, M=40.0)
abroad = EconomyState("abroad", g_y=0.03, k=40.0, dk=4.0, alpha=0.3, i=0.05, Y=200.0, P=1.0, M=80.0)
target = 0.08
print(classify_regime(home, target))

peg = simulate(home, abroad, Pegged(reserves=2.0, drain=0.1), target, 40, b=b)
for rec in peg.records[:12]:
    print(peg.period_label(rec.period), f"rer={rec.rer:.4f}", f"reserves={rec.reserves:.4f}", *map(str, rec.events))
print("events:", [str(e) for e in peg.events])

# vent share 0.5: half through the nominal rate, half through prices
flt = simulate(home, abroad, Floating(0.5), target, 40, b=b)
print("float  rer", flt.rer[[0, 9, 19, 39]].round(4), " P", flt.price_level[[0, 9, 19, 39]].round(4))

# borrowing abroad at period 10 with service 0.6 per period
loan = DebtFinancing("international", amount=15.0, service=0.6)
debt = simulate(home, abroad, Floating(0.5), "neutral", 40, loan, debt_period=10, b=b)
base = simulate(home, abroad, Floating(0.5), "neutral", 40, b=b)
print("g* without loan", base.g_neutral[[9, 11, 20, 39]].round(5))
print("g* with loan   ", debt.g_neutral[[9, 11, 20, 39]].round(5))
