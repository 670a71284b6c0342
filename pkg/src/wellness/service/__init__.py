"""Ingestion service: protocol rules, append-only storage, HTTP surface."""

from .app import create_app
from .config import Experiment, Settings, demo_experiment, load_experiments
from .core import EnvelopeData, IngestService, Rejection, UnknownExperimentError
from .store import Participant, StorageFailureError, SubmissionStore

__all__ = [
    "EnvelopeData",
    "Experiment",
    "IngestService",
    "Participant",
    "Rejection",
    "Settings",
    "StorageFailureError",
    "SubmissionStore",
    "UnknownExperimentError",
    "create_app",
    "demo_experiment",
    "load_experiments",
]
