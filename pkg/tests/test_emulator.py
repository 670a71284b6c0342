from __future__ import annotations

import math
import statistics
import time

import pytest

from wellness.emulator import (
    DEFAULT_PROFILES,
    EmulatorClient,
    EmulatorServer,
    EnvironmentProfile,
    FaultMode,
    VariableSpec,
    format_sample,
    load_profile,
    parse_fault,
    parse_sample_line,
    snapshot,
    take_session,
)
from wellness.model import PHYSICAL_RANGES, VARIABLES, check_validity

from test_model import make_submission

CONSTANT_PROFILE = EnvironmentProfile(
    name="constant",
    temperature=VariableSpec(22.0, shape="constant"),
    humidity=VariableSpec(40.0, shape="constant"),
    pressure=VariableSpec(1013.0, shape="constant"),
    luminosity=VariableSpec(300.0, shape="constant"),
    audio=VariableSpec(45.0, shape="constant"),
    seed=7,
)


class TestGeneration:
    def test_constant_profile_values_identical(self):
        samples = take_session(CONSTANT_PROFILE, count=10)
        assert [s.seq for s in samples] == list(range(1, 11))
        for s in samples:
            assert (s.temperature, s.humidity, s.pressure, s.luminosity, s.audio) == (
                22.0, 40.0, 1013.0, 300.0, 45.0
            )

    def test_zero_battery_forces_exact_zero_and_fails_validity(self):
        fault = FaultMode.zero_battery({"humidity"})
        samples = take_session(DEFAULT_PROFILES["indoor_office"], fault, count=12)
        assert all(s.humidity == 0.0 for s in samples)
        submission = make_submission(samples)
        verdict = check_validity(submission, samples)
        assert not verdict.valid
        assert verdict.reason.variable == "humidity"

    def test_fixed_seed_reproduces_byte_identical_lines(self):
        profile = DEFAULT_PROFILES["indoor_office"].with_seed(99)
        first = [format_sample(s) for s in take_session(profile, count=50)]
        second = [format_sample(s) for s in take_session(profile, count=50)]
        assert first == second

    def test_different_seeds_differ(self):
        base = DEFAULT_PROFILES["indoor_office"]
        a = take_session(base.with_seed(1), count=5)
        b = take_session(base.with_seed(2), count=5)
        assert a != b

    def test_values_clamped_to_physical_ranges(self):
        wild = EnvironmentProfile(
            name="wild",
            temperature=VariableSpec(84.0, 30.0),
            humidity=VariableSpec(99.0, 30.0),
            pressure=VariableSpec(1099.0, 60.0),
            luminosity=VariableSpec(150_000.0, 2.0, shape="lognormal"),
            audio=VariableSpec(139.0, 40.0),
            seed=3,
        )
        for sample in take_session(wild, count=500):
            for variable in VARIABLES:
                lo, hi = PHYSICAL_RANGES[variable]
                assert lo <= sample.value(variable) <= hi

    def test_dropout_consumes_seq_without_shifting_values(self):
        profile = DEFAULT_PROFILES["indoor_office"].with_seed(5)
        plain = take_session(profile, count=40)
        dropped = take_session(profile, FaultMode.dropout(0.3), count=20)
        assert len({s.seq for s in dropped}) == 20
        assert max(s.seq for s in dropped) > 20  # gaps happened
        by_seq = {s.seq: s for s in plain}
        for sample in dropped:
            if sample.seq in by_seq:
                assert sample.temperature == by_seq[sample.seq].temperature

    def test_timestamps_follow_rate(self):
        samples = take_session(CONSTANT_PROFILE, rate_hz=10.0, count=5)
        deltas = [b.timestamp_ms - a.timestamp_ms
                  for a, b in zip(samples, samples[1:])]
        assert deltas == [100] * 4

    def test_session_volume_tracks_duration_times_rate(self):
        # over a window of duration T at rate f the stream covers floor(T*f)
        # ticks, +-1 at the boundary
        for rate, duration_s in ((1.0, 30.0), (4.0, 7.5), (25.0, 2.0)):
            samples = take_session(CONSTANT_PROFILE, rate_hz=rate,
                                   count=int(duration_s * rate) + 2)
            window_end = duration_s * 1000.0
            inside = [s for s in samples if s.timestamp_ms < window_end]
            assert abs(len(inside) - duration_s * rate) <= 1

    def test_long_run_mean_converges(self):
        profile = EnvironmentProfile(
            name="mean-check",
            temperature=VariableSpec(25.0, 2.0),
            humidity=VariableSpec(50.0, 5.0),
            pressure=VariableSpec(1000.0, 3.0),
            luminosity=VariableSpec(500.0, 0.0, shape="constant"),
            audio=VariableSpec(60.0, 4.0),
            seed=12345,
        )
        n = 10_000
        samples = take_session(profile, count=n)
        for variable, spec in (("temperature", profile.temperature),
                               ("humidity", profile.humidity),
                               ("audio", profile.audio)):
            mean = statistics.fmean(s.value(variable) for s in samples)
            assert abs(mean - spec.mean) <= 3 * spec.stddev / math.sqrt(n)

    def test_rate_bounds(self):
        with pytest.raises(ValueError):
            take_session(CONSTANT_PROFILE, rate_hz=0.0, count=1)
        with pytest.raises(ValueError):
            take_session(CONSTANT_PROFILE, rate_hz=101.0, count=1)


class TestSnapshot:
    def test_constant_profile_returns_constants(self):
        sample = snapshot(CONSTANT_PROFILE)
        assert sample.seq == 0
        assert sample.temperature == 22.0

    def test_seeded_snapshot_reproducible(self):
        profile = DEFAULT_PROFILES["late_night_dorm"].with_seed(77)
        a, b = snapshot(profile), snapshot(profile)
        assert (a.temperature, a.humidity, a.pressure, a.luminosity, a.audio) == (
            b.temperature, b.humidity, b.pressure, b.luminosity, b.audio
        )

    def test_zero_battery_all_variables(self):
        fault = FaultMode.zero_battery(VARIABLES)
        sample = snapshot(CONSTANT_PROFILE, fault)
        assert all(sample.value(v) == 0.0 for v in VARIABLES)


class TestFaultParsing:
    def test_parse_forms(self):
        assert parse_fault("none") == FaultMode.none()
        zero = parse_fault("zero:humidity,audio")
        assert zero.kind == "zero_battery"
        assert zero.variables == frozenset({"humidity", "audio"})
        drop = parse_fault("drop:0.25")
        assert drop.dropout_probability == 0.25

    def test_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_fault("zap:everything")
        with pytest.raises(ValueError):
            parse_fault("drop:1.5")
        with pytest.raises(ValueError):
            parse_fault("zero:flux")

    def test_named_profiles_load(self):
        assert load_profile("indoor_office").name == "indoor_office"
        with pytest.raises(ValueError):
            load_profile("mars_surface")


@pytest.fixture()
def running_server():
    server = EmulatorServer(CONSTANT_PROFILE, device_id="emu-test")
    server.start_background()
    yield server
    server.shutdown()
    server.server_close()


class TestWireProtocol:
    def test_greeting(self, running_server):
        host, port = running_server.address
        with EmulatorClient(host, port) as client:
            assert client.greeting == "SENSORTAG-EMU v1 emu-test constant"

    def test_snapshot_line(self, running_server):
        host, port = running_server.address
        with EmulatorClient(host, port) as client:
            sample = client.snapshot()
        assert sample.seq == 0
        assert sample.temperature == 22.0

    def test_start_stop_stream(self, running_server):
        host, port = running_server.address
        with EmulatorClient(host, port) as client:
            samples = client.collect_session(rate_hz=50.0, count=10)
        assert [s.seq for s in samples] == list(range(1, 11))
        assert all(s.pressure == 1013.0 for s in samples)

    def test_sample_count_tracks_duration(self, running_server):
        # over T seconds at f Hz the stream yields floor(T*f) +- 1 samples
        host, port = running_server.address
        rate, duration = 50.0, 0.5
        with EmulatorClient(host, port) as client:
            client.start(rate)
            received = []
            deadline = time.monotonic() + duration
            client._sock.settimeout(0.5)
            while time.monotonic() < deadline:
                received.append(client._file.readline())
            client.stop()
        expected = duration * rate
        assert abs(len(received) - expected) <= expected * 0.4 + 1

    def test_format_round_trip(self):
        sample = take_session(DEFAULT_PROFILES["indoor_office"], count=1)[0]
        line = format_sample(sample)
        parsed = parse_sample_line(line)
        assert parsed.seq == sample.seq
        assert parsed.temperature == pytest.approx(sample.temperature, abs=5e-5)
        assert line.split()[3] == f"{sample.temperature:.4f}"

    def test_unknown_command_gets_err(self, running_server):
        import socket

        host, port = running_server.address
        with socket.create_connection((host, port), timeout=5.0) as sock:
            reader = sock.makefile("r", encoding="ascii")
            assert reader.readline().startswith("SENSORTAG-EMU v1 ")
            sock.sendall(b"HELLO\n")
            assert reader.readline().startswith("ERR ")
            sock.sendall(b"START fast\n")
            assert reader.readline().startswith("ERR usage")
