"""Exceptions and resource caps shared across the library."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace


class FusionkitError(Exception):
    """Base class for all library-specific failures."""


class CapExceeded(FusionkitError):
    """A computation would exceed a configured resource cap."""

    def __init__(self, message: str, required: int | None = None):
        super().__init__(message)
        self.required = required


class SingularPointError(FusionkitError):
    """An evaluation point lies on (or numerically too close to) a wall
    where the Weyl denominator vanishes."""


class OracleMismatchError(FusionkitError):
    """A numeric oracle failed its internal consistency guard; treat as a
    verification failure, not as noise."""


@dataclass(frozen=True)
class Caps:
    """Resource limits.  Configuration, not constants: the E-series blows up
    quickly and the library must fail loudly instead of hanging."""

    weyl_order: int = 10**6
    dim: int = 10**5
    hilbert: int = 10**6


DEFAULT_CAPS = Caps()

ENV_CAPS_VAR = "FUSIONKIT_CAPS"


def caps_from_env(base: Caps = DEFAULT_CAPS, env: str | None = None) -> Caps:
    """Parse ``FUSIONKIT_CAPS`` (e.g. ``"dim=200000,hilbert=10000"``) on top
    of ``base``.  Unknown keys are rejected."""
    raw = os.environ.get(ENV_CAPS_VAR, "") if env is None else env
    caps = base
    for field in filter(None, (part.strip() for part in raw.split(","))):
        key, _, value = field.partition("=")
        if key not in ("weyl_order", "dim", "hilbert") or not value:
            raise ValueError(f"bad cap override {field!r} in {ENV_CAPS_VAR}")
        caps = replace(caps, **{key: int(value)})
    return caps
