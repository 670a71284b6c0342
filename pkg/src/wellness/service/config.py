"""Service settings: data directory, experiment definitions, emulator address.

Environment variables:
    WELLNESS_DATA_DIR            journal directory (default ./wellness-data)
    WELLNESS_PORT                serve port (default 8000)
    WELLNESS_EXPERIMENT_CONFIG   path to an experiment JSON file
    WELLNESS_EMULATOR_ADDR       host:port of a running sensor emulator
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from datetime import date
from pathlib import Path

DEFAULT_PORT = 8000


@dataclass(frozen=True)
class Experiment:
    experiment_id: str
    name: str
    start_date: date
    end_date: date
    max_submissions_per_day: int = 3
    min_gap_hours: float = 2.0
    utc_offset_hours: float = 0.0  # participant-local day boundaries

    def __post_init__(self):
        if self.start_date > self.end_date:
            raise ValueError("experiment start date is after its end date")
        if self.max_submissions_per_day < 1:
            raise ValueError("max_submissions_per_day must be positive")
        if self.min_gap_hours < 0:
            raise ValueError("min_gap_hours must be non-negative")


def _experiment_from_dict(data: dict) -> Experiment:
    return Experiment(
        experiment_id=data["experiment_id"],
        name=data.get("name", data["experiment_id"]),
        start_date=date.fromisoformat(data["start_date"]),
        end_date=date.fromisoformat(data["end_date"]),
        max_submissions_per_day=data.get("max_submissions_per_day", 3),
        min_gap_hours=data.get("min_gap_hours", 2.0),
        utc_offset_hours=data.get("utc_offset_hours", 0.0),
    )


def load_experiments(path: str | Path) -> dict[str, Experiment]:
    data = json.loads(Path(path).read_text())
    experiments = [_experiment_from_dict(e) for e in data["experiments"]]
    return {e.experiment_id: e for e in experiments}


def demo_experiment() -> Experiment:
    return Experiment(
        experiment_id="demo",
        name="Demo experiment",
        start_date=date(2000, 1, 1),
        end_date=date(2099, 12, 31),
    )


@dataclass
class Settings:
    data_dir: Path
    experiments: dict[str, Experiment]
    emulator_addr: tuple[str, int] | None = None

    @classmethod
    def from_env(cls) -> "Settings":
        data_dir = Path(os.environ.get("WELLNESS_DATA_DIR", "wellness-data"))
        config_path = os.environ.get("WELLNESS_EXPERIMENT_CONFIG")
        if config_path:
            experiments = load_experiments(config_path)
        else:
            demo = demo_experiment()
            experiments = {demo.experiment_id: demo}
        emulator_addr = None
        raw_addr = os.environ.get("WELLNESS_EMULATOR_ADDR")
        if raw_addr:
            host, _, port = raw_addr.rpartition(":")
            emulator_addr = (host or "127.0.0.1", int(port))
        return cls(data_dir=data_dir, experiments=experiments,
                   emulator_addr=emulator_addr)
