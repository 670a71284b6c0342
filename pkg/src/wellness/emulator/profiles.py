"""Environment profiles and fault modes for the emulated sensor board.

The named profiles place each variable's bulk inside realistic indoor and
outdoor envelopes; they are qualitative scene descriptions, not fitted
distributions.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

from ..model import VARIABLES

SHAPES = ("constant", "normal", "lognormal")


@dataclass(frozen=True)
class VariableSpec:
    """Generator settings for one variable.

    For the lognormal shape, `mean` is the median scale and `stddev` is the
    log-space sigma. `drift_per_minute` shifts the location linearly over the
    session.
    """

    mean: float
    stddev: float = 0.0
    shape: str = "normal"
    drift_per_minute: float = 0.0

    def __post_init__(self):
        if self.stddev < 0:
            raise ValueError("stddev must be >= 0")
        if self.shape not in SHAPES:
            raise ValueError(f"unknown shape {self.shape!r}")


@dataclass(frozen=True)
class EnvironmentProfile:
    name: str
    temperature: VariableSpec
    humidity: VariableSpec
    pressure: VariableSpec
    luminosity: VariableSpec
    audio: VariableSpec
    seed: int = 1

    def spec(self, variable: str) -> VariableSpec:
        return getattr(self, variable)

    def with_seed(self, seed: int) -> "EnvironmentProfile":
        return replace(self, seed=seed)


@dataclass(frozen=True)
class FaultMode:
    """None, forced-zero variables (dying battery), or sample dropout."""

    kind: str = "none"  # none | zero_battery | dropout
    variables: frozenset[str] = field(default_factory=frozenset)
    dropout_probability: float = 0.0

    def __post_init__(self):
        if self.kind not in ("none", "zero_battery", "dropout"):
            raise ValueError(f"unknown fault kind {self.kind!r}")
        if not 0.0 <= self.dropout_probability <= 1.0:
            raise ValueError("dropout probability must lie in [0, 1]")
        unknown = self.variables - set(VARIABLES)
        if unknown:
            raise ValueError(f"unknown variables: {sorted(unknown)}")

    @classmethod
    def none(cls) -> "FaultMode":
        return cls()

    @classmethod
    def zero_battery(cls, variables) -> "FaultMode":
        return cls(kind="zero_battery", variables=frozenset(variables))

    @classmethod
    def dropout(cls, probability: float) -> "FaultMode":
        return cls(kind="dropout", dropout_probability=probability)


NO_FAULT = FaultMode.none()

DEFAULT_PROFILES: dict[str, EnvironmentProfile] = {
    "indoor_office": EnvironmentProfile(
        name="indoor_office",
        temperature=VariableSpec(23.0, 1.2),
        humidity=VariableSpec(40.0, 6.0),
        pressure=VariableSpec(1005.0, 4.0),
        luminosity=VariableSpec(320.0, 0.5, shape="lognormal"),
        audio=VariableSpec(48.0, 7.0),
    ),
    "outdoor_daylight": EnvironmentProfile(
        name="outdoor_daylight",
        temperature=VariableSpec(17.0, 4.0),
        humidity=VariableSpec(55.0, 10.0),
        pressure=VariableSpec(1008.0, 5.0),
        luminosity=VariableSpec(12000.0, 0.9, shape="lognormal"),
        audio=VariableSpec(55.0, 8.0),
    ),
    "late_night_dorm": EnvironmentProfile(
        name="late_night_dorm",
        temperature=VariableSpec(21.0, 1.0),
        humidity=VariableSpec(45.0, 6.0),
        pressure=VariableSpec(1004.0, 4.0),
        luminosity=VariableSpec(40.0, 0.9, shape="lognormal"),
        audio=VariableSpec(35.0, 6.0),
    ),
}

DEFAULT_PROFILE_NAME = "indoor_office"


def load_profile(name_or_path: str, seed: int | None = None) -> EnvironmentProfile:
    """Resolve a named default profile or read one from a JSON file."""
    if name_or_path in DEFAULT_PROFILES:
        profile = DEFAULT_PROFILES[name_or_path]
    else:
        path = Path(name_or_path)
        if not path.exists():
            known = ", ".join(sorted(DEFAULT_PROFILES))
            raise ValueError(f"no profile named {name_or_path!r} (known: {known})")
        data = json.loads(path.read_text())
        specs = {
            v: VariableSpec(
                mean=data[v]["mean"],
                stddev=data[v].get("stddev", 0.0),
                shape=data[v].get("shape", "normal"),
                drift_per_minute=data[v].get("drift_per_minute", 0.0),
            )
            for v in VARIABLES
        }
        profile = EnvironmentProfile(
            name=data.get("name", path.stem), seed=data.get("seed", 1), **specs
        )
    if seed is not None:
        profile = profile.with_seed(seed)
    return profile


def parse_fault(text: str) -> FaultMode:
    """Parse a fault flag: none | zero:<var,var,...> | drop:<probability>."""
    if text == "none":
        return FaultMode.none()
    if text.startswith("zero:"):
        names = [v.strip() for v in text[len("zero:"):].split(",") if v.strip()]
        if not names:
            raise ValueError("zero: fault needs at least one variable")
        return FaultMode.zero_battery(names)
    if text.startswith("drop:"):
        return FaultMode.dropout(float(text[len("drop:"):]))
    raise ValueError(f"cannot parse fault {text!r}")
