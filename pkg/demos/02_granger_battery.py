"""
Granger-causality tables
========================

A pair with a real lag-1 link, a pair of independent series, and an
annual fiscal-deficit / current-account battery over three countries.
"""

import tempfile
from pathlib import Path

from rerbalance import report
from rerbalance.dataio import load_csv, write_series_csv
from rerbalance.inference import CountrySpec, granger_test, replication_battery
from rerbalance.synthetic import causal_pair, deficit_panel, noise_pair

x, y = causal_pair(n=500, seed=3)
print(report.render_granger_table(granger_test(x, y, 7), "x on y (causal)"))

x, y = noise_pair(n=500, seed=3)
print(report.render_granger_table(granger_test(x, y, 7), "x on y (independent)"))

# the battery reads one CSV per country, just like the CLI
tmp = Path(tempfile.mkdtemp())
countries = []
for seed, name in enumerate(["India", "Brazil", "Indonesia"]):
    path = tmp / f"{name.lower()}.csv"
    write_series_csv(deficit_panel(n=40, seed=seed), path)
    countries.append(CountrySpec(name, path))

cells = replication_battery(countries, loader=load_csv)
print(report.render_battery(cells))
