"""Shared fixtures: the two worked circuit cases and the five-harmonic
bench recording used by the measurement tests."""

from __future__ import annotations

import math

import pytest
from hypothesis import HealthCheck, settings

from gapower import (
    BasisLayout,
    HarmonicComponent,
    SeriesRLC,
    SpectralSignal,
    to_phasor,
)

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# Two-harmonic source driving a series RLC at omega = 1 rad/s.
OMEGA1_F0_HZ = 1.0 / (2.0 * math.pi)

# Five-odd-harmonic 50 Hz bench recording: (order, rms, phase_rad) rows
# measured at 15.625 kHz over 200 ms.
BENCH_F0_HZ = 50.0
BENCH_FS_HZ = 15625.0
BENCH_SAMPLES = 3125
BENCH_VOLTAGE_ROWS = (
    (1, 233.92, -1.57),
    (3, 0.46, -2.61),
    (5, 4.74, 1.28),
    (7, 4.02, -0.07),
    (9, 0.42, -2.60),
)
BENCH_CURRENT_ROWS = (
    (1, 2.33, -0.72),
    (3, 0.93, 1.85),
    (5, 0.45, -1.69),
    (7, 0.49, 1.70),
    (9, 0.16, -1.44),
)


def rows_to_signal(rows, fundamental_hz: float) -> SpectralSignal:
    return SpectralSignal(
        fundamental_hz,
        harmonics=tuple(HarmonicComponent(k, r, p) for k, r, p in rows),
    )


@pytest.fixture
def two_harmonic_source() -> SpectralSignal:
    return SpectralSignal(
        OMEGA1_F0_HZ,
        harmonics=(
            HarmonicComponent(1, 100.0, 0.0),
            HarmonicComponent(3, 100.0, 0.0),
        ),
    )


@pytest.fixture
def rlc_equal_conductance() -> SeriesRLC:
    # both harmonics see |Z| = sqrt(2): admittances 0.5 +/- 0.5 plane
    return SeriesRLC(r=1.0, l=0.5, c=2.0 / 3.0)


@pytest.fixture
def rlc_unequal_conductance() -> SeriesRLC:
    return SeriesRLC(r=1.0, l=0.5, c=2.0 / 7.0)


@pytest.fixture
def two_harmonic_phasor(two_harmonic_source):
    layout = BasisLayout.for_signals(two_harmonic_source)
    return to_phasor(two_harmonic_source, layout)


@pytest.fixture
def bench_signals() -> tuple[SpectralSignal, SpectralSignal]:
    return (
        rows_to_signal(BENCH_VOLTAGE_ROWS, BENCH_F0_HZ),
        rows_to_signal(BENCH_CURRENT_ROWS, BENCH_F0_HZ),
    )


@pytest.fixture
def bench_phasors(bench_signals):
    u_sig, i_sig = bench_signals
    layout = BasisLayout.for_signals(u_sig, i_sig)
    return to_phasor(u_sig, layout), to_phasor(i_sig, layout)
