"""Deterministic sample generation and the line-oriented stream server.

Wire protocol, newline-delimited text over TCP:

    server greeting:  SENSORTAG-EMU v1 <device_id> <profile_name>
    client commands:  START <rate_hz> | STOP | SNAPSHOT
    sample lines:     S <seq> <timestamp_ms> <temp> <rh> <hpa> <lux> <db>

Sample values print with 4 decimal places. seq starts at 1 and increments
every tick; a dropout fault skips the emission but still consumes the seq,
so gaps are observable downstream. Unrecognized commands get an `ERR` line.
"""
from __future__ import annotations

import random
import select
import socket
import socketserver
import threading
import time
from typing import Iterator

from ..model import PHYSICAL_RANGES, VARIABLES, SensorSample
from .profiles import NO_FAULT, EnvironmentProfile, FaultMode, VariableSpec

MAX_RATE_HZ = 100.0
_DROP_SEED_SALT = 0x9E3779B97F4A7C15


def _draw(spec: VariableSpec, rng: random.Random, elapsed_minutes: float) -> float:
    location = spec.mean + spec.drift_per_minute * elapsed_minutes
    if spec.shape == "constant":
        return location
    if spec.shape == "normal":
        return rng.gauss(location, spec.stddev)
    # lognormal: location acts as the median scale, stddev as log-sigma
    return location * rng.lognormvariate(0.0, spec.stddev)


def _clamp(variable: str, value: float) -> float:
    lo, hi = PHYSICAL_RANGES[variable]
    return min(hi, max(lo, value))


def generate_samples(
    profile: EnvironmentProfile,
    fault: FaultMode = NO_FAULT,
    rate_hz: float = 1.0,
    start_ms: int = 0,
) -> Iterator[SensorSample]:
    """Infinite stream of samples with synthetic, evenly spaced timestamps.

    The value sequence is fully determined by (profile, fault, seed): draws
    happen in a fixed variable order and the dropout decision uses its own
    derived generator, so dropped ticks never shift later values.
    """
    if not 0.0 < rate_hz <= MAX_RATE_HZ:
        raise ValueError(f"rate must lie in (0, {MAX_RATE_HZ}] Hz")
    value_rng = random.Random(profile.seed)
    drop_rng = random.Random(profile.seed ^ _DROP_SEED_SALT)
    period_ms = 1000.0 / rate_hz
    seq = 0
    while True:
        seq += 1
        elapsed_minutes = (seq - 1) * period_ms / 60_000.0
        values = {}
        for variable in VARIABLES:
            raw = _draw(profile.spec(variable), value_rng, elapsed_minutes)
            values[variable] = _clamp(variable, raw)
        if fault.kind == "zero_battery":
            for variable in fault.variables:
                values[variable] = 0.0
        dropped = (
            fault.kind == "dropout" and drop_rng.random() < fault.dropout_probability
        )
        if not dropped:
            yield SensorSample(
                seq=seq,
                timestamp_ms=int(round(start_ms + (seq - 1) * period_ms)),
                **values,
            )


def take_session(
    profile: EnvironmentProfile,
    fault: FaultMode = NO_FAULT,
    rate_hz: float = 1.0,
    count: int = 60,
    start_ms: int = 0,
) -> list[SensorSample]:
    """First `count` emitted samples of a stream (accelerated, no pacing)."""
    stream = generate_samples(profile, fault, rate_hz, start_ms)
    return [next(stream) for _ in range(count)]


def snapshot(profile: EnvironmentProfile, fault: FaultMode = NO_FAULT) -> SensorSample:
    """A single reading for the home-screen reasonability display (seq 0)."""
    rng = random.Random(profile.seed)
    values = {}
    for variable in VARIABLES:
        values[variable] = _clamp(variable, _draw(profile.spec(variable), rng, 0.0))
    if fault.kind == "zero_battery":
        for variable in fault.variables:
            values[variable] = 0.0
    return SensorSample(seq=0, timestamp_ms=int(time.time() * 1000), **values)


def format_sample(sample: SensorSample) -> str:
    return (
        f"S {sample.seq} {sample.timestamp_ms} "
        f"{sample.temperature:.4f} {sample.humidity:.4f} {sample.pressure:.4f} "
        f"{sample.luminosity:.4f} {sample.audio:.4f}"
    )


def parse_sample_line(line: str) -> SensorSample:
    parts = line.strip().split()
    if len(parts) != 8 or parts[0] != "S":
        raise ValueError(f"not a sample line: {line!r}")
    return SensorSample(
        seq=int(parts[1]),
        timestamp_ms=int(parts[2]),
        temperature=float(parts[3]),
        humidity=float(parts[4]),
        pressure=float(parts[5]),
        luminosity=float(parts[6]),
        audio=float(parts[7]),
    )


class _StreamHandler(socketserver.StreamRequestHandler):
    def handle(self):
        server: EmulatorServer = self.server  # type: ignore[assignment]
        self._send(
            f"SENSORTAG-EMU v1 {server.device_id} {server.profile.name}"
        )
        while True:
            line = self.rfile.readline()
            if not line:
                return  # client closed the connection
            command = line.decode("ascii", "replace").strip()
            if not command:
                continue
            if command == "SNAPSHOT":
                self._send(format_sample(snapshot(server.profile, server.fault)))
            elif command == "STOP":
                continue  # nothing streaming; harmless
            elif command.startswith("START"):
                if not self._stream(command, server):
                    return
            else:
                self._send(f"ERR unknown command {command!r}")

    def _stream(self, command: str, server: "EmulatorServer") -> bool:
        """Emit samples until STOP or disconnect. False when client is gone."""
        try:
            rate_hz = float(command.split()[1])
            if not 0.0 < rate_hz <= MAX_RATE_HZ:
                raise ValueError
        except (IndexError, ValueError):
            self._send("ERR usage: START <rate_hz in (0, 100]>")
            return True
        stream = generate_samples(
            server.profile, server.fault, rate_hz, start_ms=int(time.time() * 1000)
        )
        period = 1.0 / rate_hz
        next_tick = time.monotonic()
        while True:
            try:
                sample = next(stream)
            except StopIteration:  # pragma: no cover - stream is infinite
                return True
            try:
                self._send(format_sample(sample))
            except (BrokenPipeError, ConnectionResetError):
                return False
            next_tick += period
            while True:
                wait = max(0.0, next_tick - time.monotonic())
                readable, _, _ = select.select([self.connection], [], [], wait)
                if not readable:
                    break
                line = self.rfile.readline()
                if not line:
                    return False
                if line.decode("ascii", "replace").strip() == "STOP":
                    return True

    def _send(self, text: str):
        self.wfile.write((text + "\n").encode("ascii"))
        self.wfile.flush()


class EmulatorServer(socketserver.ThreadingTCPServer):
    """One emulated sensor board; each client connection gets its own stream."""

    allow_reuse_address = True
    daemon_threads = True

    def __init__(
        self,
        profile: EnvironmentProfile,
        fault: FaultMode = NO_FAULT,
        host: str = "127.0.0.1",
        port: int = 0,
        device_id: str = "emu-0001",
    ):
        self.profile = profile
        self.fault = fault
        self.device_id = device_id
        super().__init__((host, port), _StreamHandler)

    @property
    def address(self) -> tuple[str, int]:
        return self.server_address[0], self.server_address[1]

    def start_background(self, poll_interval: float = 0.05) -> threading.Thread:
        thread = threading.Thread(
            target=self.serve_forever, kwargs={"poll_interval": poll_interval},
            daemon=True,
        )
        thread.start()
        return thread


class EmulatorClient:
    """Small line-protocol client used by the service proxy and tests."""

    def __init__(self, host: str, port: int, timeout: float = 5.0):
        self._sock = socket.create_connection((host, port), timeout=timeout)
        self._file = self._sock.makefile("r", encoding="ascii", newline="\n")
        self.greeting = self._file.readline().strip()
        if not self.greeting.startswith("SENSORTAG-EMU v1 "):
            raise ConnectionError(f"unexpected greeting: {self.greeting!r}")

    def snapshot(self) -> SensorSample:
        self._command("SNAPSHOT")
        return parse_sample_line(self._file.readline())

    def start(self, rate_hz: float):
        self._command(f"START {rate_hz:g}")

    def stop(self):
        self._command("STOP")

    def read_samples(self, count: int) -> list[SensorSample]:
        return [parse_sample_line(self._file.readline()) for _ in range(count)]

    def collect_session(self, rate_hz: float, count: int) -> list[SensorSample]:
        """START, read `count` samples, STOP, and drain any in-flight lines."""
        self.start(rate_hz)
        samples = self.read_samples(count)
        self.stop()
        self._drain()
        return samples

    def close(self):
        self._file.close()
        self._sock.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    def _command(self, text: str):
        self._sock.sendall((text + "\n").encode("ascii"))

    def _drain(self):
        # samples already queued when STOP landed are discarded
        self._sock.settimeout(0.2)
        try:
            while True:
                if not self._file.readline():
                    break
        except (TimeoutError, OSError):
            pass
        finally:
            self._sock.settimeout(5.0)
