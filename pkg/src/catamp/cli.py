"""Command-line front end: figure-reproduction datasets, scans, checks.

Outputs are machine-readable and byte-deterministic for a fixed configuration:
CSV data (header row, 17 significant digits) plus a JSON sidecar with the
resolved parameters and feature metrics.  Exit codes: 0 success, 2 bad
configuration, 3 numeric warning escalated under --strict.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from dataclasses import asdict, dataclass, field

import numpy as np

from . import oracle
from .charfn import moment
from .coeffs import NearSingularDenominator
from .params import AmplifierParams, CatSpec, System
from .photon_stats import TruncationWarning, factorial_moments, single_pnd, sum_pnd
from .rho_terms import TermClass
from .squeezing import single_mode_squeezing, two_mode_squeezing
from .wigner import GridSpec, SupportWarning, count_peaks, wigner_cut, wigner_grid


class ConfigError(ValueError):
    """Invalid run configuration; the message names the offending field."""


class UnknownFigure(ConfigError):
    """Figure id is not one of the built-in presets."""


_ESCALATED = (TruncationWarning, SupportWarning, NearSingularDenominator)


# --- configuration ------------------------------------------------------------


_CAT_KINDS = {"even": 0.0, "odd": math.pi, "yurke_stoler": math.pi / 2}


def _cat_from_dict(d: dict, where: str) -> CatSpec:
    if not isinstance(d, dict):
        raise ConfigError(f"{where}: expected an object")
    try:
        amp_mag = float(d["amp_mag"])
    except KeyError:
        raise ConfigError(f"{where}.amp_mag: required") from None
    amp_phase = float(d.get("amp_phase", 0.0))
    if "kind" in d:
        kind = d["kind"]
        if kind not in _CAT_KINDS:
            raise ConfigError(f"{where}.kind: must be one of {sorted(_CAT_KINDS)}")
        rel = _CAT_KINDS[kind]
    else:
        rel = float(d.get("rel_phase", 0.0))
    try:
        return CatSpec(amp_mag, amp_phase, rel)
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from None


def _cat_to_dict(cat: CatSpec) -> dict:
    return {"amp_mag": cat.amp_mag, "amp_phase": cat.amp_phase, "rel_phase": cat.rel_phase}


def _params_from_dict(d: dict) -> AmplifierParams:
    if not isinstance(d, dict):
        raise ConfigError("params: expected an object")
    known = {"g", "pump_phase", "gamma1", "gamma2", "nbar1", "nbar2"}
    bad = set(d) - known
    if bad:
        raise ConfigError(f"params: unknown fields {sorted(bad)}")
    if "g" not in d:
        raise ConfigError("params.g: required")
    try:
        return AmplifierParams(**{k: float(v) for k, v in d.items()})
    except ValueError as exc:
        raise ConfigError(f"params: {exc}") from None


@dataclass
class RunConfig:
    """One command's full configuration; round-trips through JSON."""

    scenario: str
    cat1: CatSpec
    cat2: CatSpec
    params: AmplifierParams
    time: float
    observable: str = ""
    mode: int = 1
    k: int = 2
    n_max: int | None = None
    cut_y: float = -0.25
    grid: dict | None = None
    scan: dict | None = None
    out: str = "out.csv"
    format: str = "csv"

    @property
    def system(self) -> System:
        return System(self.cat1, self.cat2, self.params)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["cat1"] = _cat_to_dict(self.cat1)
        d["cat2"] = _cat_to_dict(self.cat2)
        d["params"] = {
            "g": self.params.g,
            "pump_phase": self.params.pump_phase,
            "gamma1": self.params.gamma1,
            "gamma2": self.params.gamma2,
            "nbar1": self.params.nbar1,
            "nbar2": self.params.nbar2,
        }
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        if not isinstance(d, dict):
            raise ConfigError("config: expected a JSON object")
        for key in ("cat1", "cat2", "params", "time"):
            if key not in d:
                raise ConfigError(f"{key}: required")
        fields = dict(d)
        cfg = cls(
            scenario=str(fields.pop("scenario", "run")),
            cat1=_cat_from_dict(fields.pop("cat1"), "cat1"),
            cat2=_cat_from_dict(fields.pop("cat2"), "cat2"),
            params=_params_from_dict(fields.pop("params")),
            time=float(fields.pop("time")),
        )
        for key in ("observable", "format", "out"):
            if key in fields:
                setattr(cfg, key, str(fields.pop(key)))
        for key in ("mode", "k"):
            if key in fields:
                setattr(cfg, key, int(fields.pop(key)))
        if "n_max" in fields:
            raw = fields.pop("n_max")
            cfg.n_max = None if raw is None else int(raw)
        if "cut_y" in fields:
            cfg.cut_y = float(fields.pop("cut_y"))
        for key in ("grid", "scan"):
            if key in fields:
                raw = fields.pop(key)
                if raw is not None and not isinstance(raw, dict):
                    raise ConfigError(f"{key}: expected an object")
                setattr(cfg, key, raw)
        if fields:
            raise ConfigError(f"config: unknown fields {sorted(fields)}")
        if cfg.time < 0:
            raise ConfigError("time: must be >= 0")
        if cfg.mode not in (1, 2):
            raise ConfigError("mode: must be 1 or 2")
        if cfg.format not in ("csv", "json"):
            raise ConfigError("format: must be 'csv' or 'json'")
        return cfg


def load_config(path: str) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = json.load(f)
    except OSError as exc:
        raise ConfigError(f"config file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file: invalid JSON ({exc})") from None
    return RunConfig.from_dict(raw)


# --- output writers -----------------------------------------------------------


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def write_csv(path: str, header: list[str], columns: list[np.ndarray]) -> None:
    rows = len(columns[0])
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(",".join(header) + "\r\n")
        for i in range(rows):
            f.write(",".join(_fmt(col[i]) for col in columns) + "\r\n")


def write_json(path: str, obj: dict) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(obj, f, sort_keys=True, indent=1)
        f.write("\n")


def _sidecar_path(out: str) -> str:
    stem = out[:-4] if out.endswith(".csv") else out
    return stem + ".meta.json"


def _emit(out: str, fmt: str, header: list[str], columns: list, meta: dict) -> list[str]:
    columns = [np.asarray(c) for c in columns]
    if fmt == "csv":
        write_csv(out, header, columns)
        side = _sidecar_path(out)
        write_json(side, meta)
        return [out, side]
    payload = dict(meta)
    payload["data"] = {
        h: [v if isinstance(v, str) else float(v) for v in c]
        for h, c in zip(header, columns)
    }
    write_json(out, payload)
    return [out]


# --- figure presets -------------------------------------------------------------

FIGURE_IDS = ("1a", "1b", "1c", "2a", "2b", "3", "4", "5",
              "6", "7a", "7b", "7c", "8a", "8b", "9a", "9b", "10")


def _ecs_pair(a1: float, a2: float, gamma: float = 0.0, nbar: float = 0.0) -> System:
    return System(
        CatSpec.even(a1),
        CatSpec.even(a2),
        AmplifierParams(g=1.0, pump_phase=math.pi / 2, gamma1=gamma, gamma2=gamma,
                        nbar1=nbar, nbar2=nbar),
    )


def _resolved(system: System, t: float, **extra) -> dict:
    return {
        "cat1": _cat_to_dict(system.cat1),
        "cat2": _cat_to_dict(system.cat2),
        "params": {
            "g": system.params.g,
            "pump_phase": system.params.pump_phase,
            "gamma1": system.params.gamma1,
            "gamma2": system.params.gamma2,
            "nbar1": system.params.nbar1,
            "nbar2": system.params.nbar2,
        },
        "time": t,
        **extra,
    }


def _figure_wigner(system: System, t: float, cut_y: float):
    grid = wigner_grid(system, t)
    xs, cut = wigner_cut(system, t, y=cut_y)
    nx, ny = grid.spec.nx, grid.spec.ny
    xcol = np.tile(grid.x, ny)
    ycol = np.repeat(grid.y, nx)
    wcol = grid.values.reshape(-1)
    wmax = float(grid.values.max())
    features = {
        "grid_min": float(grid.values.min()),
        "grid_max": wmax,
        "min_on_cut": float(cut.min()),
        "min_on_cut_rel": float(cut.min() / wmax),
        "cut_y": cut_y,
        "peak_count": count_peaks(grid),
        "integral": grid.integral(),
    }
    extra = {
        "cut": {"x": [float(v) for v in xs], "w": [float(v) for v in cut]},
        "grid_spec": asdict(grid.spec),
    }
    return ["x", "y", "w"], [xcol, ycol, wcol], features, extra


def _pnd_features(columns: dict[str, np.ndarray]) -> dict:
    out = {}
    for name, p in columns.items():
        out[f"odd_mass_{name}"] = float(np.sum(p[1::2]))
        out[f"argmax_{name}"] = int(np.argmax(p))
        out[f"total_{name}"] = float(np.sum(p))
    return out


def _figure(fig_id: str):
    """Return (header, columns, features, resolved-params) for one preset."""
    if fig_id in ("1a", "1b", "1c"):
        amps = {"1a": (2.0, 2.0), "1b": (3.0, 2.0), "1c": (2.0, 3.0)}[fig_id]
        system = _ecs_pair(*amps)
        header, cols, features, extra = _figure_wigner(system, 0.55, -0.25)
        return header, cols, features, _resolved(system, 0.55, **extra)

    if fig_id in ("2a", "2b"):
        gamma = 5.0 if fig_id == "2a" else 1.0  # 2g+3 / 2g-1 at g=1
        system = _ecs_pair(3.0, 2.0, gamma=gamma, nbar=1.0)
        header, cols, features, extra = _figure_wigner(system, 0.55, -0.25)
        return header, cols, features, _resolved(system, 0.55, **extra)

    if fig_id == "3":
        out = {}
        for label, pp in (("psi_plus", math.pi / 2), ("psi_minus", -math.pi / 2)):
            system = System(CatSpec.yurke_stoler(3.0), CatSpec.yurke_stoler(2.0),
                            AmplifierParams(g=1.0, pump_phase=pp))
            out[label] = single_pnd(1, system, 0.55, n_max=120).probs
        features = _pnd_features(out)
        n = np.arange(121)
        return (["n", "p_psi_plus", "p_psi_minus"], [n, out["psi_plus"], out["psi_minus"]],
                features, _resolved(system, 0.55, note="two pump phases +-pi/2"))

    if fig_id == "4":
        cats = (CatSpec.yurke_stoler(2.0), CatSpec.yurke_stoler(3.0))
        runs = {
            "undamped": AmplifierParams(g=1.0, pump_phase=math.pi / 2),
            "underdamped": AmplifierParams(g=1.0, pump_phase=math.pi / 2,
                                           gamma1=1.0, gamma2=1.0, nbar1=1.0, nbar2=1.0),
            "overdamped": AmplifierParams(g=1.0, pump_phase=math.pi / 2,
                                          gamma1=3.0, gamma2=3.0, nbar1=1.0, nbar2=1.0),
        }
        out = {}
        for label, params in runs.items():
            out[label] = single_pnd(1, System(*cats, params), 0.55, n_max=120).probs
        n = np.arange(121)
        sysref = System(*cats, runs["undamped"])
        return (["n", "p_undamped", "p_underdamped", "p_overdamped"],
                [n, out["undamped"], out["underdamped"], out["overdamped"]],
                _pnd_features(out),
                _resolved(sysref, 0.55, damped="underdamped gamma=2g-1, overdamped 2g+1, nbar=1"))

    if fig_id == "5":
        a1 = math.sqrt(0.7)
        a2sq = np.linspace(0.01, 6.0, 120)
        t = 0.2
        undamped = AmplifierParams(g=1.0, pump_phase=math.pi / 2)
        damp0 = AmplifierParams(g=1.0, pump_phase=math.pi / 2, gamma1=0.4, gamma2=0.4)
        damp01 = AmplifierParams(g=1.0, pump_phase=math.pi / 2, gamma1=0.4, gamma2=0.4,
                                 nbar1=0.1, nbar2=0.1)
        curves = {"q_ee": [], "q_ey": [], "q_eo": [], "q_ee_damped_nbar0": [],
                  "q_ee_damped_nbar01": []}
        for x2 in a2sq:
            a2 = math.sqrt(x2)
            curves["q_ee"].append(
                single_mode_squeezing(1, System(CatSpec.even(a1), CatSpec.even(a2), undamped), t).Q)
            curves["q_ey"].append(
                single_mode_squeezing(1, System(CatSpec.even(a1), CatSpec.yurke_stoler(a2), undamped), t).Q)
            curves["q_eo"].append(
                single_mode_squeezing(1, System(CatSpec.even(a1), CatSpec.odd(a2), undamped), t).Q)
            curves["q_ee_damped_nbar0"].append(
                single_mode_squeezing(1, System(CatSpec.even(a1), CatSpec.even(a2), damp0), t).Q)
            curves["q_ee_damped_nbar01"].append(
                single_mode_squeezing(1, System(CatSpec.even(a1), CatSpec.even(a2), damp01), t).Q)
        features = {f"min_{k}": float(np.min(v)) for k, v in curves.items()}
        sysref = System(CatSpec.even(a1), CatSpec.even(1.0), undamped)
        return (["alpha2_sq"] + list(curves),
                [a2sq] + [np.array(v) for v in curves.values()],
                features,
                _resolved(sysref, t, scan="alpha2_sq", damped="gamma=2g-1.6, nbar in {0, 0.1}"))

    if fig_id in ("6", "7a", "7b", "7c"):
        system = System(CatSpec.even(3.0), CatSpec.even(2.0),
                        AmplifierParams(g=1e4, pump_phase=math.pi / 2))
        t = 3e-4
        dist = sum_pnd(system, t)
        part = {
            "6": dist.probs,
            "7a": dist.class_parts[TermClass.MIXTURE],
            "7b": dist.class_parts[TermClass.SYM_INTERFERENCE],
            "7c": dist.class_parts[TermClass.ASYM_INTERFERENCE],
        }[fig_id]
        n = np.arange(dist.n_max + 1)
        features = {
            "odd_mass": float(np.sum(part[1::2])),
            "total": float(np.sum(part)),
            "min": float(np.min(part)),
            "max": float(np.max(part)),
            "n_max": dist.n_max,
        }
        return ["n", "p"], [n, part], features, _resolved(system, t, component=fig_id)

    if fig_id == "8a":
        system = System(CatSpec.yurke_stoler(3.0), CatSpec.yurke_stoler(2.0),
                        AmplifierParams(g=1.0, pump_phase=math.pi / 2))
        dist = sum_pnd(system, 0.55)
        n = np.arange(dist.n_max + 1)
        return (["n", "p"], [n, dist.probs], _pnd_features({"p": dist.probs}),
                _resolved(system, 0.55))

    if fig_id == "8b":
        cats = (CatSpec.yurke_stoler(3.0), CatSpec.yurke_stoler(2.0))
        runs = {
            "underdamped": AmplifierParams(g=0.5, pump_phase=math.pi / 2,
                                           gamma1=0.1, gamma2=0.1, nbar1=0.5, nbar2=0.5),
            "overdamped": AmplifierParams(g=0.5, pump_phase=math.pi / 2,
                                          gamma1=1.1, gamma2=1.1, nbar1=0.5, nbar2=0.5),
        }
        out = {label: sum_pnd(System(*cats, params), 0.55, n_max=100).probs
               for label, params in runs.items()}
        n = np.arange(101)
        sysref = System(*cats, runs["underdamped"])
        return (["n", "p_underdamped", "p_overdamped"],
                [n, out["underdamped"], out["overdamped"]],
                _pnd_features(out),
                _resolved(sysref, 0.55, damped="(g,nbar,gamma) = (0.5,0.5,2g-+0.9/0.1)"))

    if fig_id in ("9a", "9b"):
        psis = np.linspace(0.0, 2.0 * math.pi, 61)
        surf = np.empty((61, 61))
        for i, p1 in enumerate(psis):
            for j, p2 in enumerate(psis):
                system = System(CatSpec.even(0.7, p1), CatSpec.even(0.7, p2),
                                AmplifierParams(g=1.0, pump_phase=math.pi / 2))
                sq = two_mode_squeezing(system, 0.2)
                surf[i, j] = sq.S if fig_id == "9a" else sq.Q
        p1col = np.repeat(psis, 61)
        p2col = np.tile(psis, 61)
        vals = surf.reshape(-1)
        imin = int(np.argmin(vals))
        features = {
            "min": float(vals.min()),
            "max": float(vals.max()),
            "argmin_psi1": float(p1col[imin]),
            "argmin_psi2": float(p2col[imin]),
        }
        sysref = System(CatSpec.even(0.7), CatSpec.even(0.7),
                        AmplifierParams(g=1.0, pump_phase=math.pi / 2))
        return (["psi1", "psi2", "factor"], [p1col, p2col, vals], features,
                _resolved(sysref, 0.2, scan="psi1 x psi2",
                          component="S" if fig_id == "9a" else "Q"))

    if fig_id == "10":
        a1_grid = np.linspace(0.05, 3.0, 120)
        t, k = 0.2, 5
        undamped = AmplifierParams(g=0.5, pump_phase=math.pi / 2)
        under = AmplifierParams(g=0.5, pump_phase=math.pi / 2,
                                gamma1=0.4, gamma2=0.4, nbar1=0.5, nbar2=0.5)
        over = AmplifierParams(g=0.5, pump_phase=math.pi / 2,
                               gamma1=1.1, gamma2=1.1, nbar1=0.5, nbar2=0.5)
        curves = {"kc_oo": [], "kc_oe": [], "kc_oo_underdamped": [], "kc_oo_overdamped": []}
        for a1 in a1_grid:
            oo = System(CatSpec.odd(a1), CatSpec.odd(0.25), undamped)
            oe = System(CatSpec.odd(a1), CatSpec.even(0.25), undamped)
            curves["kc_oo"].append(factorial_moments(oo, t, k)[1])
            curves["kc_oe"].append(factorial_moments(oe, t, k)[1])
            curves["kc_oo_underdamped"].append(
                factorial_moments(System(CatSpec.odd(a1), CatSpec.odd(0.25), under), t, k)[1])
            curves["kc_oo_overdamped"].append(
                factorial_moments(System(CatSpec.odd(a1), CatSpec.odd(0.25), over), t, k)[1])
        features = {f"min_{name}": float(np.min(v)) for name, v in curves.items()}
        sysref = System(CatSpec.odd(1.0), CatSpec.odd(0.25), undamped)
        return (["alpha1"] + list(curves),
                [a1_grid] + [np.array(v) for v in curves.values()],
                features, _resolved(sysref, t, k=k, scan="alpha1"))

    raise UnknownFigure(f"unknown figure id {fig_id!r}; choose from {FIGURE_IDS}")


def cmd_figure(fig_id: str, out: str | None, fmt: str) -> list[str]:
    if fig_id not in FIGURE_IDS:
        raise UnknownFigure(f"unknown figure id {fig_id!r}; choose from {FIGURE_IDS}")
    header, cols, features, resolved = _figure(fig_id)
    out = out or f"figure_{fig_id}.{ 'csv' if fmt == 'csv' else 'json'}"
    meta = {"figure": fig_id, "features": features, "resolved": resolved}
    return _emit(out, fmt, header, cols, meta)


# --- generic commands ----------------------------------------------------------


_SCALAR_OBSERVABLES = ("S1", "Q1", "S2", "Q2", "S", "Q", "mean_n1", "mean_n2",
                       "kc_compound", "kc_single", "pnd_odd_mass", "wigner_min",
                       "wigner_cut_min")


def _eval_observable(cfg: RunConfig, system: System, t: float) -> float:
    name = cfg.observable
    if name in ("S1", "Q1", "S2", "Q2"):
        mode = 1 if name.endswith("1") else 2
        sq = single_mode_squeezing(mode, system, t)
        return sq.S if name.startswith("S") else sq.Q
    if name in ("S", "Q"):
        sq = two_mode_squeezing(system, t)
        return sq.S if name == "S" else sq.Q
    if name == "mean_n1":
        return moment(1, 1, 0, 0, system, t).real
    if name == "mean_n2":
        return moment(0, 0, 1, 1, system, t).real
    if name == "kc_compound":
        return factorial_moments(system, t, cfg.k, scope="compound")[1]
    if name == "kc_single":
        return factorial_moments(system, t, cfg.k, scope="single", mode=cfg.mode)[1]
    if name == "pnd_odd_mass":
        d = sum_pnd(system, t, n_max=cfg.n_max)
        return float(np.sum(d.probs[1::2]))
    if name == "wigner_min":
        return float(wigner_grid(system, t, _grid_spec(cfg, system, t), mode=cfg.mode).values.min())
    if name == "wigner_cut_min":
        return float(wigner_cut(system, t, y=cfg.cut_y, mode=cfg.mode)[1].min())
    raise ConfigError(f"observable: unknown {name!r}; choose from {_SCALAR_OBSERVABLES}")


_SCAN_FIELDS = {
    "t": None,
    "cat1.amp_mag": ("cat1", "amp_mag"), "cat1.amp_phase": ("cat1", "amp_phase"),
    "cat1.rel_phase": ("cat1", "rel_phase"),
    "cat2.amp_mag": ("cat2", "amp_mag"), "cat2.amp_phase": ("cat2", "amp_phase"),
    "cat2.rel_phase": ("cat2", "rel_phase"),
    "params.g": ("params", "g"), "params.pump_phase": ("params", "pump_phase"),
    "params.gamma1": ("params", "gamma1"), "params.gamma2": ("params", "gamma2"),
    "params.nbar1": ("params", "nbar1"), "params.nbar2": ("params", "nbar2"),
}


def _apply_field(cfg: RunConfig, fieldname: str, value: float) -> tuple[System, float]:
    if fieldname == "t":
        return cfg.system, float(value)
    group, attr = _SCAN_FIELDS[fieldname]
    c1 = _cat_to_dict(cfg.cat1)
    c2 = _cat_to_dict(cfg.cat2)
    p = {"g": cfg.params.g, "pump_phase": cfg.params.pump_phase,
         "gamma1": cfg.params.gamma1, "gamma2": cfg.params.gamma2,
         "nbar1": cfg.params.nbar1, "nbar2": cfg.params.nbar2}
    {"cat1": c1, "cat2": c2, "params": p}[group][attr] = float(value)
    try:
        return System(CatSpec(**c1), CatSpec(**c2), AmplifierParams(**p)), cfg.time
    except ValueError as exc:
        raise ConfigError(f"scan value {value} for {fieldname}: {exc}") from None


def _scan_values(scan: dict, key: str, vkey: str) -> np.ndarray:
    if key not in scan:
        raise ConfigError(f"scan.{key}: required")
    fieldname = scan[key]
    if fieldname not in _SCAN_FIELDS:
        raise ConfigError(f"scan.{key}: unknown field {fieldname!r}")
    vals = scan.get(vkey)
    if not isinstance(vals, list) or len(vals) == 0:
        raise ConfigError(f"scan.{vkey}: must be a non-empty list")
    return np.asarray([float(v) for v in vals])


def cmd_scan(cfg: RunConfig) -> list[str]:
    if not cfg.scan:
        raise ConfigError("scan: required for the scan command")
    if not cfg.observable:
        raise ConfigError("observable: required for the scan command")
    vals1 = _scan_values(cfg.scan, "parameter", "values")
    if "parameter2" in cfg.scan:
        vals2 = _scan_values(cfg.scan, "parameter2", "values2")
        rows1, rows2, rows_v = [], [], []
        for v1 in vals1:
            sys1, t1 = _apply_field(cfg, cfg.scan["parameter"], v1)
            for v2 in vals2:
                cfg1 = _replace_system(cfg, sys1, t1)
                sys2, t2 = _apply_field(cfg1, cfg.scan["parameter2"], v2)
                rows1.append(v1)
                rows2.append(v2)
                rows_v.append(_eval_observable(cfg, sys2, t2))
        header = [cfg.scan["parameter"], cfg.scan["parameter2"], cfg.observable]
        cols = [np.asarray(rows1), np.asarray(rows2), np.asarray(rows_v)]
    else:
        rows_v = []
        for v1 in vals1:
            system, t = _apply_field(cfg, cfg.scan["parameter"], v1)
            rows_v.append(_eval_observable(cfg, system, t))
        header = [cfg.scan["parameter"], cfg.observable]
        cols = [vals1, np.asarray(rows_v)]
    meta = {"scenario": cfg.scenario, "config": cfg.to_dict()}
    return _emit(cfg.out, cfg.format, header, cols, meta)


def _replace_system(cfg: RunConfig, system: System, t: float) -> RunConfig:
    out = RunConfig(scenario=cfg.scenario, cat1=system.cat1, cat2=system.cat2,
                    params=system.params, time=t, observable=cfg.observable,
                    mode=cfg.mode, k=cfg.k, n_max=cfg.n_max, cut_y=cfg.cut_y,
                    grid=cfg.grid, scan=cfg.scan, out=cfg.out, format=cfg.format)
    return out


def _grid_spec(cfg: RunConfig, system: System, t: float) -> GridSpec | None:
    if not cfg.grid:
        return None
    g = cfg.grid
    try:
        return GridSpec(
            x_min=float(g["x_min"]), x_max=float(g["x_max"]),
            y_min=float(g["y_min"]), y_max=float(g["y_max"]),
            nx=int(g.get("nx", 201)), ny=int(g.get("ny", 201)),
        )
    except KeyError as exc:
        raise ConfigError(f"grid.{exc.args[0]}: required") from None


def cmd_wigner(cfg: RunConfig) -> list[str]:
    system = cfg.system
    grid = wigner_grid(system, cfg.time, _grid_spec(cfg, system, cfg.time), mode=cfg.mode)
    xs, cut = wigner_cut(system, cfg.time, y=cfg.cut_y, mode=cfg.mode)
    xcol = np.tile(grid.x, grid.spec.ny)
    ycol = np.repeat(grid.y, grid.spec.nx)
    meta = {
        "scenario": cfg.scenario,
        "config": cfg.to_dict(),
        "features": {
            "grid_min": float(grid.values.min()),
            "grid_max": float(grid.values.max()),
            "min_on_cut": float(cut.min()),
            "peak_count": count_peaks(grid),
            "integral": grid.integral(),
        },
        "cut": {"x": [float(v) for v in xs], "w": [float(v) for v in cut]},
    }
    return _emit(cfg.out, cfg.format, ["x", "y", "w"],
                 [xcol, ycol, grid.values.reshape(-1)], meta)


def cmd_pnd(cfg: RunConfig) -> list[str]:
    system = cfg.system
    if cfg.observable == "single":
        dist = single_pnd(cfg.mode, system, cfg.time, n_max=cfg.n_max)
        header = ["n", "p"]
        cols = [np.arange(dist.n_max + 1), dist.probs]
        features = _pnd_features({"p": dist.probs})
    else:
        dist = sum_pnd(system, cfg.time, n_max=cfg.n_max)
        header = ["n", "p", "p_mixture", "p_sym_interference", "p_asym_interference"]
        cols = [np.arange(dist.n_max + 1), dist.probs,
                dist.class_parts[TermClass.MIXTURE],
                dist.class_parts[TermClass.SYM_INTERFERENCE],
                dist.class_parts[TermClass.ASYM_INTERFERENCE]]
        features = _pnd_features({"p": dist.probs})
    meta = {"scenario": cfg.scenario, "config": cfg.to_dict(), "features": features}
    return _emit(cfg.out, cfg.format, header, cols, meta)


def cmd_squeeze(cfg: RunConfig) -> list[str]:
    system = cfg.system
    single1 = single_mode_squeezing(1, system, cfg.time)
    single2 = single_mode_squeezing(2, system, cfg.time)
    compound = two_mode_squeezing(system, cfg.time)
    header = ["S1", "Q1", "S2", "Q2", "S", "Q"]
    cols = [np.array([v]) for v in
            (single1.S, single1.Q, single2.S, single2.Q, compound.S, compound.Q)]
    meta = {"scenario": cfg.scenario, "config": cfg.to_dict()}
    return _emit(cfg.out, cfg.format, header, cols, meta)


# --- oracle comparison ----------------------------------------------------------


def _oracle_deviations(system: System, t: float, dims: tuple[int, int],
                       wigner_extent: float, wigner_n: int) -> dict[str, float]:
    state = oracle.build_initial(system.cat1, system.cat2, *dims)
    evolved = oracle.evolve(state, system.params, t)
    out: dict[str, float] = {}

    p_sum = oracle.pnd_sum(evolved)
    d_sum = sum_pnd(system, t, n_max=len(p_sum) - 1)
    out["pnd_sum"] = float(np.max(np.abs(d_sum.probs - p_sum)))

    for mode in (1, 2):
        p1 = oracle.pnd_single(evolved, mode)
        d1 = single_pnd(mode, system, t, n_max=len(p1) - 1)
        out[f"pnd_single_{mode}"] = float(np.max(np.abs(d1.probs - p1)))

    ref = oracle.squeeze_factors(evolved)
    s1 = single_mode_squeezing(1, system, t)
    s2 = single_mode_squeezing(2, system, t)
    comp = two_mode_squeezing(system, t)
    out["squeeze"] = max(
        abs(s1.S - ref["S1"]), abs(s1.Q - ref["Q1"]),
        abs(s2.S - ref["S2"]), abs(s2.Q - ref["Q2"]),
        abs(comp.S - ref["S"]), abs(comp.Q - ref["Q"]),
    )

    xs = np.linspace(-wigner_extent, wigner_extent, wigner_n)
    z = xs[None, :] + 1j * xs[:, None]
    w_ref = oracle.wigner(evolved, z)
    grid = wigner_grid(system, t,
                       GridSpec(-wigner_extent, wigner_extent, -wigner_extent,
                                wigner_extent, wigner_n, wigner_n))
    out["wigner"] = float(np.max(np.abs(grid.values - w_ref)))
    return out


def cmd_oracle_check(envelope: str, out: str | None, fmt: str) -> list[str]:
    if envelope == "small":
        cases = [
            ("undamped", System(CatSpec.even(0.8), CatSpec.yurke_stoler(0.6, 0.4),
                                AmplifierParams(g=1.0, pump_phase=0.7)), 0.3, (16, 14)),
        ]
        extent, npts = 3.0, 21
    elif envelope == "full":
        cases = [
            ("undamped", System(CatSpec.even(1.2, 0.3), CatSpec.odd(0.9),
                                AmplifierParams(g=1.0, pump_phase=math.pi / 2)), 0.5, (26, 24)),
            ("underdamped", System(CatSpec.even(1.1), CatSpec.yurke_stoler(0.9),
                                   AmplifierParams(g=1.0, pump_phase=math.pi / 2,
                                                   gamma1=1.0, gamma2=1.0,
                                                   nbar1=0.5, nbar2=0.5)), 0.4, (22, 22)),
            ("overdamped", System(CatSpec.even(1.1), CatSpec.yurke_stoler(0.9),
                                  AmplifierParams(g=1.0, pump_phase=math.pi / 2,
                                                  gamma1=3.0, gamma2=3.0,
                                                  nbar1=0.5, nbar2=0.5)), 0.4, (22, 22)),
        ]
        extent, npts = 4.0, 41
    else:
        raise ConfigError("envelope: must be 'small' or 'full'")
    labels, observables, deviations = [], [], []
    for label, system, t, dims in cases:
        devs = _oracle_deviations(system, t, dims, extent, npts)
        for k, v in sorted(devs.items()):
            labels.append(label)
            observables.append(k)
            deviations.append(v)
    out = out or f"oracle_check_{envelope}.csv"
    meta = {"envelope": envelope, "max_abs_deviation": float(np.max(deviations))}
    return _emit(out, fmt, ["case", "observable", "max_abs_deviation"],
                 [np.array(labels, dtype=object), np.array(observables, dtype=object),
                  np.array(deviations)], meta)


# --- entry point ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catamp",
        description="Cat states through a dissipative parametric amplifier: "
                    "figure datasets, scans and reference checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_fig = sub.add_parser("figure", help="emit a built-in figure dataset")
    p_fig.add_argument("id", help=f"figure id, one of {', '.join(FIGURE_IDS)}")
    p_fig.add_argument("--out", default=None)
    p_fig.add_argument("--format", choices=("csv", "json"), default="csv")
    p_fig.add_argument("--strict", action="store_true",
                       help="exit 3 when a numeric warning fires")

    for name, help_text in (("scan", "sweep a parameter and record an observable"),
                            ("wigner", "phase-space grid and cut"),
                            ("pnd", "photon-number distribution"),
                            ("squeeze", "squeezing factors")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True)
        p.add_argument("--strict", action="store_true")

    p_oc = sub.add_parser("oracle-check",
                          help="compare closed forms against the Fock-space reference")
    p_oc.add_argument("--envelope", choices=("small", "full"), default="small")
    p_oc.add_argument("--out", default=None)
    p_oc.add_argument("--format", choices=("csv", "json"), default="csv")
    p_oc.add_argument("--strict", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            if args.command == "figure":
                written = cmd_figure(args.id, args.out, args.format)
            elif args.command == "scan":
                written = cmd_scan(load_config(args.config))
            elif args.command == "wigner":
                written = cmd_wigner(load_config(args.config))
            elif args.command == "pnd":
                written = cmd_pnd(load_config(args.config))
            elif args.command == "squeeze":
                written = cmd_squeeze(load_config(args.config))
            elif args.command == "oracle-check":
                written = cmd_oracle_check(args.envelope, args.out, args.format)
            else:  # pragma: no cover - argparse enforces the choices
                raise ConfigError(f"unknown command {args.command}")
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for path in written:
        print(path)
    numeric = [w for w in caught if issubclass(w.category, _ESCALATED)]
    for w in numeric:
        print(f"warning: {w.message}", file=sys.stderr)
    if numeric and args.strict:
        return 3
    return 0


def entry() -> None:  # console-script hook
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
