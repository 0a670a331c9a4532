"""Reference frame layouts used by tests, scripts and the docs.

Channel offsets are chained so that the window plateaus tile the frequency
circle: with ramp width w the plateau of a channel with time step a covers a
fraction (1 - 2w) of its band, so the family is a frame whenever
sum (1 - 2w)/a >= 1 and the plateau intervals are placed end to end.
"""

from __future__ import annotations

from .frames import NsgfSystem, make_windows

__all__ = [
    "chained_channels",
    "flat_two_channel",
    "dyadic_six_channel",
    "irregular_eight_channel",
    "toy_three_channel",
    "named_config",
]

DEFAULT_RAMP = 0.125


def chained_channels(steps, ramp: float = DEFAULT_RAMP):
    """Offsets b_m placing consecutive plateaus [b + w/a, b + (1-w)/a] end to end."""
    if sum((1.0 - 2.0 * ramp) / a for a in steps) < 1.0:
        raise ValueError("plateaus too narrow to tile the circle; add channels")
    spec = []
    start = ramp / steps[0]
    for a in steps:
        spec.append(((start - ramp / a) % 1.0, a))
        start += (1.0 - 2.0 * ramp) / a
    return spec


def flat_two_channel(L: int = 1024) -> NsgfSystem:
    """Two flat half-band windows; an orthonormal basis (multiplier identically 1)."""
    return make_windows(L, [(0.0, 2), (0.5, 2)], prototype=0.0)


def dyadic_six_channel(L: int = 1024, ramp: float = DEFAULT_RAMP) -> NsgfSystem:
    return make_windows(L, chained_channels([2, 2, 4, 4, 8, 8], ramp), prototype=ramp)


def irregular_eight_channel(L: int = 1024, ramp: float = DEFAULT_RAMP) -> NsgfSystem:
    steps = [2, 4, 4, 8, 8, 16, 16, 16]
    return make_windows(L, chained_channels(steps, ramp), prototype=ramp)


def toy_three_channel(L: int = 16, ramp: float = DEFAULT_RAMP) -> NsgfSystem:
    """24 coefficients at L = 16; small enough for exhaustive subset search."""
    return make_windows(L, chained_channels([2, 2, 2], ramp), prototype=ramp)


_BUILDERS = {
    "flat_two_channel": flat_two_channel,
    "dyadic_six_channel": dyadic_six_channel,
    "irregular_eight_channel": irregular_eight_channel,
    "toy_three_channel": toy_three_channel,
}


def named_config(name: str, L: int | None = None) -> NsgfSystem:
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise ValueError(f"unknown config {name!r}; have {sorted(_BUILDERS)}") from None
    return builder() if L is None else builder(L)
