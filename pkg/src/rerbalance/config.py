"""YAML run configuration.

One file can drive every command. Top-level keys::

    params:       Bilson coefficients (psi0, psi1, epsilon, c0, lam, eta, t)
    formulation:  price | monetary
    economies:    label -> state fields (g_y, k, dk, alpha, i, Y, P, M, n)
    ardl:         ARDL layout (see ArdlSpec)
    battery:      {countries: [{name, data, pairs, max_lag}]}
    rer:          {domestic, reference, observed_rer, usd, p_ratio}
    simulate:     {domestic, reference, policy, target_g, horizon, debt, ...}
    neutral_rates: {economies: [...], max_spread}

Wherever an economy is expected, either a label from ``economies`` or an
inline mapping of state fields is accepted. Relative data paths resolve
against the config file's directory.
"""
from __future__ import annotations

from dataclasses import fields
from pathlib import Path

import yaml

from .equilibrium import BilsonParams, EconomyState, Formulation
from .errors import ConfigError, DomainError
from .inference import ArdlSpec, CountrySpec, india_yield_spec
from .scenario import DebtFinancing, Floating, Pegged
from .series import Frequency, parse_period

__all__ = ["RunConfig", "load_config"]

_STATE_FIELDS = {f.name for f in fields(EconomyState)}
_PARAM_FIELDS = {f.name for f in fields(BilsonParams)}


def _require_mapping(obj, where):
    if not isinstance(obj, dict):
        raise ConfigError(f"{where} must be a mapping")
    return obj


class RunConfig:
    def __init__(self, doc: dict, base_dir: Path = Path(".")):
        self.doc = _require_mapping(doc or {}, "config")
        self.base_dir = Path(base_dir)
        seed = self.doc.get("seed")
        if seed is not None and not (isinstance(seed, int) and 0 <= seed < 2**64):
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {seed!r}")

    def section(self, name: str) -> dict:
        if name not in self.doc:
            raise ConfigError(f"config has no '{name}' section")
        return _require_mapping(self.doc[name], name)

    # shared pieces

    def params(self, section: dict | None = None) -> BilsonParams:
        raw = dict(self.doc.get("params") or {})
        if section and section.get("params"):
            raw.update(section["params"])
        unknown = set(raw) - _PARAM_FIELDS
        if unknown:
            raise ConfigError(f"unknown params: {', '.join(sorted(unknown))}")
        try:
            return BilsonParams(**{k: float(v) if v is not None else None for k, v in raw.items()})
        except (DomainError, TypeError, ValueError) as exc:
            raise ConfigError(f"params: {exc}") from None

    def formulation(self, section: dict | None = None, override=None) -> Formulation:
        value = override or (section or {}).get("formulation") or self.doc.get("formulation") or "price"
        try:
            return Formulation.parse(value)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def economy(self, ref) -> EconomyState:
        if isinstance(ref, str):
            table = self.doc.get("economies") or {}
            if ref not in table:
                raise ConfigError(f"unknown economy label {ref!r}")
            raw = dict(_require_mapping(table[ref], f"economies.{ref}"))
            raw.setdefault("label", ref)
        else:
            raw = dict(_require_mapping(ref, "economy"))
            raw.setdefault("label", "economy")
        unknown = set(raw) - _STATE_FIELDS
        if unknown:
            raise ConfigError(f"economy {raw['label']!r}: unknown fields {', '.join(sorted(unknown))}")
        missing = _STATE_FIELDS - set(raw) - {"n"}
        if missing:
            raise ConfigError(f"economy {raw['label']!r}: missing fields {', '.join(sorted(missing))}")
        try:
            vals = {k: (str(v) if k == "label" else float(v)) for k, v in raw.items()}
            return EconomyState(**vals)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"economy {raw['label']!r}: {exc}") from None

    def path(self, p) -> Path:
        p = Path(p)
        return p if p.is_absolute() else self.base_dir / p

    # command sections

    def ardl_spec(self) -> tuple[ArdlSpec, str | None]:
        raw = dict(self.doc["ardl"] if "ardl" in self.doc else self.doc)
        title = raw.pop("title", None)
        preset = raw.pop("preset", None)
        if preset is not None:
            if preset != "india":
                raise ConfigError(f"unknown ARDL preset {preset!r}")
            return india_yield_spec(raw.get("dependent", "yield")), title

        def pairs(entries):
            out = []
            for e in entries or ():
                if isinstance(e, dict):
                    out.append((e["series"], e.get("transform", "level")))
                elif isinstance(e, (list, tuple)) and len(e) == 2:
                    out.append((str(e[0]), str(e[1])))
                else:
                    out.append((str(e), "level"))
            return tuple(out)

        try:
            spec = ArdlSpec(
                dependent=raw["dependent"],
                key_regressor=raw["key_regressor"],
                key_regressor_lags=int(raw.get("key_regressor_lags", 1)),
                ar_order=int(raw.get("ar_order", 2)),
                controls=pairs(raw.get("controls")),
                trailing_controls=pairs(raw.get("trailing_controls")),
                intercept=bool(raw.get("intercept", True)),
            )
        except KeyError as exc:
            raise ConfigError(f"ardl spec missing {exc.args[0]!r}") from None
        except ValueError as exc:
            raise ConfigError(f"ardl spec: {exc}") from None
        return spec, title

    def battery(self) -> list[CountrySpec]:
        sec = self.section("battery")
        out = []
        for entry in sec.get("countries") or []:
            entry = _require_mapping(entry, "battery country")
            if "name" not in entry or "data" not in entry:
                raise ConfigError("each battery country needs 'name' and 'data'")
            pairs = [tuple(p) for p in entry.get("pairs", [("fiscal_deficit", "cad")])]
            if any(len(p) != 2 for p in pairs):
                raise ConfigError(f"{entry['name']}: pairs must be [cause, effect]")
            out.append(
                CountrySpec(
                    name=str(entry["name"]),
                    data=self.path(entry["data"]),
                    pairs=pairs,
                    max_lag=entry.get("max_lag"),
                )
            )
        return out

    def policy(self, raw):
        raw = dict(_require_mapping(raw or {"type": "floating"}, "policy"))
        kind = str(raw.pop("type", "floating")).lower()
        try:
            if kind == "floating":
                return Floating(**{k: float(v) for k, v in raw.items()})
            if kind == "pegged":
                return Pegged(**{k: float(v) for k, v in raw.items()})
        except (TypeError, DomainError) as exc:
            raise ConfigError(f"policy: {exc}") from None
        raise ConfigError(f"policy type must be 'floating' or 'pegged', got {kind!r}")

    def debt(self, raw):
        if not raw:
            return None, 0
        raw = dict(_require_mapping(raw, "debt"))
        period = int(raw.pop("period", 0))
        try:
            return DebtFinancing(raw["source"], float(raw["amount"]), raw.get("service", 0.0)), period
        except KeyError as exc:
            raise ConfigError(f"debt missing {exc.args[0]!r}") from None
        except (ValueError, DomainError) as exc:
            raise ConfigError(f"debt: {exc}") from None

    def simulation(self, horizon_override=None) -> dict:
        sec = self.section("simulate")
        for key in ("domestic", "reference"):
            if key not in sec:
                raise ConfigError(f"simulate section needs '{key}'")
        ref = sec["reference"]
        reference = [self.economy(r) for r in ref] if isinstance(ref, list) else self.economy(ref)
        horizon = horizon_override if horizon_override is not None else sec.get("horizon")
        if horizon is None:
            raise ConfigError("horizon not given (config or --horizon)")
        debt, debt_period = self.debt(sec.get("debt"))
        start = sec.get("start", "2000-Q1")
        try:
            start_period, freq = parse_period(str(start))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        seed = sec.get("seed", self.doc.get("seed"))
        if seed is not None and not (isinstance(seed, int) and 0 <= seed < 2**64):
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {seed!r}")
        target = sec.get("target_g", "neutral")
        kwargs = dict(
            initial=self.economy(sec["domestic"]),
            reference=reference,
            policy=self.policy(sec.get("policy")),
            target_g=target,
            horizon=int(horizon),
            debt=debt,
            debt_period=debt_period,
            b=self.params(sec),
            f=self.formulation(sec),
            rer0=sec.get("rer0"),
            noise_sd=float(sec.get("noise_sd", 0.0)),
            seed=seed,
            start=start_period,
            frequency=freq,
        )
        for opt in ("min_dk", "neutral_tol"):
            if opt in sec:
                kwargs[opt] = float(sec[opt])
        return kwargs


def load_config(path) -> RunConfig:
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        try:
            doc = yaml.safe_load(fh)
        except yaml.YAMLError as exc:
            raise ConfigError(f"{path}: invalid YAML: {exc}") from None
    return RunConfig(doc or {}, path.parent)


def frequency_of(name: str) -> Frequency:
    return {"q": Frequency.QUARTERLY, "quarterly": Frequency.QUARTERLY,
            "a": Frequency.ANNUAL, "annual": Frequency.ANNUAL}[name.lower()]
