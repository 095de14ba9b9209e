"""Pitch tracking, linear prediction, formants, and MFCCs.

All routines are pure: identical inputs give bit-identical outputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.fft

from .audio import FrameTrack
from .errors import SingularAutocorrelation

DEFAULT_FMIN_HZ = 60.0
DEFAULT_FMAX_HZ = 400.0
DEFAULT_VOICING_THRESHOLD = 0.45
DEFAULT_N_MELS = 26
DEFAULT_N_MFCC = 13
DEFAULT_MEL_FLOOR = 1e-10
DEFAULT_MAX_FORMANT_BW_HZ = 400.0


@dataclass(frozen=True)
class PitchTrack:
    """Per-frame fundamental frequency estimates.

    Unvoiced frames carry NaN in f0_hz and False in voiced; nacf_peak keeps
    the normalized-autocorrelation peak for every frame (0 for silence).
    """

    f0_hz: np.ndarray
    nacf_peak: np.ndarray
    voiced: np.ndarray

    def __len__(self) -> int:
        return len(self.f0_hz)

    @property
    def voicing_fraction(self) -> float:
        if len(self.voiced) == 0:
            return 0.0
        return float(np.count_nonzero(self.voiced)) / len(self.voiced)


def normalized_autocorrelation(x: np.ndarray) -> np.ndarray:
    """nacf[tau] = <x[:n-tau], x[tau:]> / (||x[:n-tau]|| ||x[tau:]||).

    A perfectly periodic frame scores exactly 1 at its period lag; the
    normalization repairs the linear taper of the raw estimator.
    """
    x = np.asarray(x, dtype=np.float64)
    n = len(x)
    nfft = 1 << int(np.ceil(np.log2(2 * n)))
    spec = np.fft.rfft(x, nfft)
    raw = np.fft.irfft(spec * np.conj(spec), nfft)[:n]
    csum = np.concatenate([[0.0], np.cumsum(x * x)])
    taus = np.arange(n)
    e_head = csum[n - taus]              # energy of x[:n-tau]
    e_tail = csum[n] - csum[taus]        # energy of x[tau:]
    denom = np.sqrt(e_head * e_tail)
    with np.errstate(divide="ignore", invalid="ignore"):
        nacf = np.where(denom > 0.0, raw / denom, 0.0)
    return np.clip(nacf, -1.0, 1.0)


def _refine_peak(nacf: np.ndarray, lag: int, lo: int, hi: int) -> float:
    """Parabolic interpolation of the autocorrelation peak lag."""
    if lag <= lo or lag >= hi:
        return float(lag)
    left, mid, right = nacf[lag - 1], nacf[lag], nacf[lag + 1]
    denom = left - 2.0 * mid + right
    if abs(denom) < 1e-12:
        return float(lag)
    delta = 0.5 * (left - right) / denom
    return lag + float(np.clip(delta, -0.5, 0.5))


def pitch_track(track: FrameTrack, fmin_hz: float = DEFAULT_FMIN_HZ,
                fmax_hz: float = DEFAULT_FMAX_HZ,
                voicing_threshold: float = DEFAULT_VOICING_THRESHOLD) -> PitchTrack:
    """Autocorrelation pitch tracker over a frame track.

    The frame mean is removed before correlation so small DC offsets do not
    bias the estimate. Degenerate (silent) frames are marked unvoiced.
    """
    rate = track.sample_rate_hz
    if not (0.0 < fmin_hz < fmax_hz < rate / 2.0):
        raise ValueError("need 0 < fmin < fmax < sample_rate/2")

    n_frames = len(track)
    f0 = np.full(n_frames, np.nan)
    peaks = np.zeros(n_frames)
    voiced = np.zeros(n_frames, dtype=bool)

    frame_len = track.frames.shape[1]
    lag_min = max(1, int(np.ceil(rate / fmax_hz)))
    lag_max = min(frame_len - 1, int(np.floor(rate / fmin_hz)))

    for i in range(n_frames):
        x = track.frames[i]
        x = x - x.mean()
        if lag_min > lag_max or not np.any(x):
            continue
        nacf = normalized_autocorrelation(x)
        window = nacf[lag_min:lag_max + 1]
        lag = lag_min + int(np.argmax(window))
        peaks[i] = nacf[lag]
        if nacf[lag] >= voicing_threshold:
            refined = _refine_peak(nacf, lag, lag_min, lag_max)
            voiced[i] = True
            f0[i] = float(np.clip(rate / refined, fmin_hz, fmax_hz))
    return PitchTrack(f0_hz=f0, nacf_peak=peaks, voiced=voiced)


def lpc(frame: np.ndarray, order: int) -> np.ndarray:
    """Levinson-Durbin linear-prediction coefficients a_1..a_order.

    The model is x_t ~= sum_k a_k x_{t-k}; the corresponding all-pole
    polynomial is A(z) = 1 - sum_k a_k z^{-k}.
    """
    frame = np.asarray(frame, dtype=np.float64)
    n = len(frame)
    if not 0 < order < n:
        raise ValueError("need 0 < order < frame length")
    r = np.array([frame[: n - k] @ frame[k:] for k in range(order + 1)])
    if r[0] <= 0.0:
        raise SingularAutocorrelation("zero-energy frame")

    a = np.zeros(order + 1)
    a[0] = 1.0
    err = r[0]
    for i in range(1, order + 1):
        acc = r[i] - a[1:i] @ r[1:i][::-1]
        k = acc / err
        prev = a.copy()
        a[i] = k
        a[1:i] = prev[1:i] - k * prev[1:i][::-1]
        err *= max(1.0 - k * k, 1e-12)
    return a[1:]


def formants(coeffs: np.ndarray, sample_rate_hz: int,
             max_bandwidth_hz: float = DEFAULT_MAX_FORMANT_BW_HZ) -> list[float]:
    """Resonance frequencies from LPC pole angles, sorted ascending.

    Keeps roots with positive imaginary part whose bandwidth (from the pole
    radius) does not exceed max_bandwidth_hz. May return fewer than two.
    """
    coeffs = np.asarray(coeffs, dtype=np.float64)
    poly = np.concatenate([[1.0], -coeffs])
    roots = np.roots(poly)
    rate = float(sample_rate_hz)
    found = []
    for z in roots:
        if z.imag <= 1e-9:
            continue
        radius = abs(z)
        if radius <= 0.0:
            continue
        bandwidth = -rate * np.log(radius) / np.pi
        if bandwidth > max_bandwidth_hz:
            continue
        found.append(float(np.arctan2(z.imag, z.real) * rate / (2.0 * np.pi)))
    return sorted(found)


def hz_to_mel(f):
    return 2595.0 * np.log10(1.0 + np.asarray(f, dtype=np.float64) / 700.0)


def mel_to_hz(m):
    return 700.0 * (10.0 ** (np.asarray(m, dtype=np.float64) / 2595.0) - 1.0)


def mel_filterbank(n_mels: int, n_fft: int, sample_rate_hz: int,
                   fmin_hz: float = 0.0, fmax_hz: float | None = None) -> np.ndarray:
    """Triangular mel filters evaluated on the rfft frequency grid."""
    if fmax_hz is None:
        fmax_hz = sample_rate_hz / 2.0
    edges_hz = mel_to_hz(np.linspace(hz_to_mel(fmin_hz), hz_to_mel(fmax_hz), n_mels + 2))
    freqs = np.fft.rfftfreq(n_fft, d=1.0 / sample_rate_hz)
    left = edges_hz[:-2, None]
    center = edges_hz[1:-1, None]
    right = edges_hz[2:, None]
    rising = (freqs[None, :] - left) / np.maximum(center - left, 1e-12)
    falling = (right - freqs[None, :]) / np.maximum(right - center, 1e-12)
    return np.clip(np.minimum(rising, falling), 0.0, None)


def mfcc(frame: np.ndarray, sample_rate_hz: int, n_mels: int = DEFAULT_N_MELS,
         n_mfcc: int = DEFAULT_N_MFCC, mel_floor: float = DEFAULT_MEL_FLOOR) -> np.ndarray:
    """MFCCs of one frame: power spectrum, mel filterbank, floored log, DCT-II."""
    if n_mfcc > n_mels:
        raise ValueError("n_mfcc must not exceed n_mels")
    frame = np.asarray(frame, dtype=np.float64)
    power = np.abs(np.fft.rfft(frame)) ** 2
    bank = mel_filterbank(n_mels, len(frame), sample_rate_hz)
    log_mel = np.log(np.maximum(bank @ power, mel_floor))
    return scipy.fft.dct(log_mel, type=2, norm="ortho")[:n_mfcc]


def mfcc_track(track: FrameTrack, n_mels: int = DEFAULT_N_MELS,
               n_mfcc: int = DEFAULT_N_MFCC, mel_floor: float = DEFAULT_MEL_FLOOR) -> np.ndarray:
    """MFCC matrix [n_frames, n_mfcc] for a whole frame track."""
    if n_mfcc > n_mels:
        raise ValueError("n_mfcc must not exceed n_mels")
    power = np.abs(np.fft.rfft(track.frames, axis=1)) ** 2
    bank = mel_filterbank(n_mels, track.frames.shape[1], track.sample_rate_hz)
    log_mel = np.log(np.maximum(power @ bank.T, mel_floor))
    return scipy.fft.dct(log_mel, type=2, norm="ortho", axis=1)[:, :n_mfcc]
