"""Sampled-waveform ingestion and coherent harmonic extraction.

Extraction is a plain rectangular-window DFT and therefore requires the
window to span an integer number of fundamental periods (at least two);
non-coherent windows are rejected instead of being corrected.  Phases are
referenced to ``sin(k*w*t)`` at the start of the window, which makes the
output of ``dft_extract`` feed straight into ``to_phasor``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import WaveformError
from .phasor import HarmonicComponent, SpectralSignal, reconstruct

_HEADER_RE = re.compile(r"#\s*fs_hz\s*=\s*(\S+)")


@dataclass(frozen=True, eq=False)
class SampledWaveform:
    """Uniformly sampled real signal."""

    samples: np.ndarray
    sample_rate_hz: float
    label: str = ""

    def __post_init__(self):
        arr = np.array(self.samples, dtype=float, copy=True)
        if arr.ndim != 1 or arr.size == 0:
            raise WaveformError("samples must form a non-empty 1-D sequence")
        if not np.all(np.isfinite(arr)):
            raise WaveformError("samples must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)
        if not (math.isfinite(self.sample_rate_hz) and self.sample_rate_hz > 0):
            raise WaveformError(
                f"sample rate must be > 0 Hz, got {self.sample_rate_hz}"
            )
        if self.label not in ("", "voltage", "current"):
            raise WaveformError(
                f"label must be 'voltage' or 'current', got {self.label!r}"
            )

    @property
    def n(self) -> int:
        return int(self.samples.size)

    @property
    def duration_s(self) -> float:
        return self.samples.size / self.sample_rate_hz


def load_csv(source) -> tuple[SampledWaveform, SampledWaveform]:
    """Read an aligned voltage/current recording.

    The format is a ``# fs_hz=<rate>`` header line followed by ``u,i``
    rows.  ``source`` may be a path or an open text stream.  Parse errors
    carry the offending line number.
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            return _parse_rows(fh)
    return _parse_rows(source)


def _parse_rows(lines) -> tuple[SampledWaveform, SampledWaveform]:
    numbered = enumerate(lines, start=1)
    header = None
    for lineno, raw in numbered:
        text = raw.strip()
        if text:
            header = (lineno, text)
            break
    if header is None:
        raise WaveformError("empty input: expected a '# fs_hz=<rate>' header")
    lineno, text = header
    match = _HEADER_RE.fullmatch(text)
    if match is None:
        raise WaveformError(
            f"line {lineno}: expected header '# fs_hz=<rate>', got {text!r}"
        )
    try:
        rate = float(match.group(1))
    except ValueError:
        raise WaveformError(
            f"line {lineno}: sample rate {match.group(1)!r} is not a number"
        ) from None
    if not (math.isfinite(rate) and rate > 0):
        raise WaveformError(f"line {lineno}: sample rate must be > 0 Hz")

    u_vals: list[float] = []
    i_vals: list[float] = []
    for lineno, raw in numbered:
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        fields = [f.strip() for f in text.split(",")]
        if len(fields) == 1:
            raise WaveformError(
                f"line {lineno}: found a single column; rows must be 'u,i'"
            )
        if len(fields) != 2:
            raise WaveformError(
                f"line {lineno}: expected 2 comma-separated values, got {len(fields)}"
            )
        try:
            u_vals.append(float(fields[0]))
            i_vals.append(float(fields[1]))
        except ValueError:
            raise WaveformError(
                f"line {lineno}: non-numeric value in {text!r}"
            ) from None
    if not u_vals:
        raise WaveformError("no data rows found after the header")
    return (
        SampledWaveform(np.array(u_vals), rate, "voltage"),
        SampledWaveform(np.array(i_vals), rate, "current"),
    )


def rms(w: SampledWaveform) -> float:
    """Root mean square of the samples."""
    return float(np.sqrt(np.mean(w.samples**2)))


def dft_extract(
    w: SampledWaveform,
    fundamental_hz: float,
    n: int,
    interharmonic_orders: tuple[float, ...] = (),
) -> SpectralSignal:
    """Harmonic content of a coherently sampled window.

    Parameters
    ----------
    w:
        The sampled window; must cover >= 2 whole fundamental periods.
    fundamental_hz:
        Fundamental frequency the orders refer to.
    n:
        Highest integer order to extract.  Every extracted order must sit
        strictly below the Nyquist bin.
    interharmonic_orders:
        Fractional orders to extract as well; each must fall exactly on a
        DFT bin, i.e. order * periods must be an integer.

    Components below 1e-12 of the window's total rms are dropped.
    """
    if not (math.isfinite(fundamental_hz) and fundamental_hz > 0):
        raise WaveformError(f"fundamental must be > 0 Hz, got {fundamental_hz}")
    if n < 1:
        raise WaveformError(f"max order must be >= 1, got {n}")
    size = w.n
    periods_exact = size * fundamental_hz / w.sample_rate_hz
    m = round(periods_exact)
    if abs(periods_exact - m) > 1e-6:
        raise WaveformError(
            "window must span an integer number of fundamental periods, "
            f"got {periods_exact:.6f}"
        )
    if m < 2:
        raise WaveformError(
            f"window must span at least 2 fundamental periods, got {m}"
        )

    spectrum = np.fft.rfft(np.asarray(w.samples))
    floor = 1e-12 * rms(w)
    scale = math.sqrt(2.0) / size

    def extract(order: float) -> HarmonicComponent | None:
        b_exact = order * m
        b = round(b_exact)
        if abs(b_exact - b) > 1e-9:
            raise WaveformError(
                f"order {order} does not fall on a DFT bin ({m} periods sampled)"
            )
        if b >= size / 2:
            raise WaveformError(
                f"order {order} is at or beyond the Nyquist limit; "
                "a higher sample rate is needed"
            )
        z = spectrum[b]
        amp = abs(z) * scale
        if amp < floor or amp == 0.0:
            return None
        # sqrt(2)*X*sin(k w t + p) puts sqrt(2)*X*(S/2)*(sin p - j cos p)
        # into its bin, hence the rotated atan2.
        return HarmonicComponent(order, amp, math.atan2(z.real, -z.imag))

    harmonics = [c for c in (extract(float(k)) for k in range(1, n + 1)) if c]
    inter = [c for c in (extract(float(o)) for o in interharmonic_orders) if c]
    dc = float(spectrum[0].real) / size
    if abs(dc) < floor:
        dc = 0.0
    return SpectralSignal(
        fundamental_hz=fundamental_hz,
        dc=dc,
        harmonics=tuple(harmonics),
        interharmonics=tuple(inter),
    )


def thd(s: SpectralSignal) -> float:
    """Total harmonic distortion: rms above the fundamental over the
    fundamental's rms.  Interharmonics and DC are not counted."""
    fundamental = next((c for c in s.harmonics if c.order == 1.0), None)
    if fundamental is None:
        raise WaveformError("THD needs a fundamental component with rms > 0")
    rest = sum(c.rms**2 for c in s.harmonics if c.order >= 2.0)
    return math.sqrt(rest) / fundamental.rms


def active_power(u: SampledWaveform, i: SampledWaveform) -> float:
    """Mean of the instantaneous power samples."""
    if u.n != i.n:
        raise WaveformError(f"length mismatch: {u.n} voltage vs {i.n} current samples")
    if not math.isclose(u.sample_rate_hz, i.sample_rate_hz, rel_tol=1e-9):
        raise WaveformError("sample-rate mismatch between voltage and current")
    return float(np.mean(u.samples * i.samples))


def sample_signal(
    signal: SpectralSignal,
    sample_rate_hz: float,
    n_samples: int,
    label: str = "",
) -> SampledWaveform:
    """Synthesize a waveform from its spectral description."""
    if n_samples < 1:
        raise WaveformError(f"sample count must be >= 1, got {n_samples}")
    t = np.arange(n_samples) / float(sample_rate_hz)
    return SampledWaveform(reconstruct(signal, t), sample_rate_hz, label)
