"""Stackelberg pricing game between a multicast transmitter and private jammers."""

import json as _json

from . import _core
from ._core import *  # noqa: F401,F403
from ._core import JamgameError


def run_fixed_price(config=None):
    """Fixed-price report rows (closed form vs oracle) as a list of dicts."""
    return _json.loads(_core.run_fixed_price(config or {}))


def run_equilibrium(config=None):
    """Equilibrium report rows as a list of dicts."""
    return _json.loads(_core.run_equilibrium(config or {}))


def run_monte_carlo(config=None):
    """Monte Carlo summary as a dict."""
    return _json.loads(_core.run_monte_carlo(config or {}))


__all__ = [name for name in dir(_core) if not name.startswith("_")] + [
    "JamgameError",
    "run_fixed_price",
    "run_equilibrium",
    "run_monte_carlo",
]
