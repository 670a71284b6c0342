"""Emulated sensor board: profiles, deterministic streams, wire server."""

from .profiles import (
    DEFAULT_PROFILE_NAME,
    DEFAULT_PROFILES,
    NO_FAULT,
    EnvironmentProfile,
    FaultMode,
    VariableSpec,
    load_profile,
    parse_fault,
)
from .stream import (
    EmulatorClient,
    EmulatorServer,
    format_sample,
    generate_samples,
    parse_sample_line,
    snapshot,
    take_session,
)

__all__ = [
    "DEFAULT_PROFILES",
    "DEFAULT_PROFILE_NAME",
    "EmulatorClient",
    "EmulatorServer",
    "EnvironmentProfile",
    "FaultMode",
    "NO_FAULT",
    "VariableSpec",
    "format_sample",
    "generate_samples",
    "load_profile",
    "parse_fault",
    "parse_sample_line",
    "snapshot",
    "take_session",
]
