"""File formats: frame config JSON, signal CSV, coefficient JSON, reports."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .frames import CoefficientSet, NsgfSystem, make_windows

__all__ = [
    "load_config",
    "dump_config",
    "system_from_config",
    "read_signal_csv",
    "write_signal_csv",
    "coeffs_to_dict",
    "coeffs_from_dict",
    "write_json",
    "write_sweep_csv",
    "read_sweep_csv",
]


class ConfigError(ValueError):
    """Malformed or inconsistent configuration input."""


def load_config(path) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    for key in ("signal_length", "channels"):
        if key not in data:
            raise ConfigError(f"config missing required key {key!r}")
    return data


def dump_config(sys: NsgfSystem, ramp_width: float) -> dict:
    return {
        "signal_length": sys.L,
        "c_star": sys.c_star,
        "channels": [{"b": ch.b, "a": ch.a} for ch in sys.channels],
        "prototype": {"ramp_width": ramp_width},
    }


def system_from_config(data: dict) -> NsgfSystem:
    try:
        L = int(data["signal_length"])
        c_star = float(data.get("c_star", 0.25))
        ramp = float(data.get("prototype", {}).get("ramp_width", 0.125))
        spec = [(float(ch["b"]), ch["a"]) for ch in data["channels"]]
    except (TypeError, KeyError, ValueError) as exc:
        raise ConfigError(f"bad config field: {exc}") from exc
    if not spec:
        raise ConfigError("config must list at least one channel")
    return make_windows(L, spec, c_star=c_star, prototype=ramp)


def read_signal_csv(path) -> np.ndarray:
    """One sample per line: 'real' or 'real,imag'."""
    rows = []
    with open(path, newline="") as fh:
        for line in csv.reader(fh):
            if not line:
                continue
            try:
                re = float(line[0])
                im = float(line[1]) if len(line) > 1 else 0.0
            except ValueError as exc:
                raise ConfigError(f"bad signal sample {line!r}") from exc
            rows.append(complex(re, im))
    if not rows:
        raise ConfigError("signal file is empty")
    return np.array(rows)


def write_signal_csv(path, signal) -> None:
    signal = np.asarray(signal)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for z in signal:
            writer.writerow([repr(float(z.real)), repr(float(z.imag))])


def coeffs_to_dict(sys: NsgfSystem, coeffs: CoefficientSet) -> dict:
    channels = []
    for ch, c in zip(sys.channels, coeffs.entries):
        channels.append(
            {
                "b": ch.b,
                "a": ch.a,
                "n_shifts": ch.n_shifts,
                "coeffs": [[float(z.real), float(z.imag)] for z in c],
            }
        )
    return {"channels": channels}


def coeffs_from_dict(data: dict) -> CoefficientSet:
    try:
        entries = [
            np.array([complex(re, im) for re, im in ch["coeffs"]])
            for ch in data["channels"]
        ]
    except (TypeError, KeyError, ValueError) as exc:
        raise ConfigError(f"bad coefficient payload: {exc}") from exc
    return CoefficientSet(entries)


def write_json(path, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def write_sweep_csv(path, sweep) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["N", "error", "N_pow_alpha_times_error"])
        for n, e in zip(sweep.Ns, sweep.errors):
            writer.writerow([n, repr(e), repr(e * n**sweep.alpha)])


def read_sweep_csv(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header[:2] != ["N", "error"]:
            raise ConfigError("not a sweep CSV (expected header N,error,...)")
        Ns, errors = [], []
        for row in reader:
            if not row:
                continue
            Ns.append(int(row[0]))
            errors.append(float(row[1]))
    return Ns, errors
