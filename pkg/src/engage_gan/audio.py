"""WAV ingestion, framing, and frame-level energy utilities."""

from __future__ import annotations

import csv
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ClipTooShort, MalformedHeader, UnsupportedChannels, UnsupportedEncoding

WINDOW_TYPES = ("rectangular", "hann", "hamming")

_PCM_SCALE = {16: 32768.0, 32: 2147483648.0}
_PCM_DTYPE = {16: "<i2", 32: "<i4"}


@dataclass(frozen=True)
class AudioClip:
    """Mono PCM audio held as float64 samples in [-1, 1]."""

    samples: np.ndarray
    sample_rate_hz: int
    source_id: str = ""

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64)
        if samples.ndim != 1:
            raise ValueError("AudioClip samples must be a 1-D sequence")
        if self.sample_rate_hz <= 0:
            raise ValueError("sample_rate_hz must be positive")
        object.__setattr__(self, "samples", samples)

    @property
    def duration_s(self) -> float:
        return len(self.samples) / self.sample_rate_hz


@dataclass(frozen=True)
class FrameTrack:
    """Windowed analysis frames cut from one clip at a fixed hop."""

    frames: np.ndarray            # [n_frames, frame_len] after windowing
    frame_len_ms: float
    hop_ms: float
    start_times_s: np.ndarray     # [n_frames], seconds
    sample_rate_hz: int
    window: str = "rectangular"

    def __len__(self) -> int:
        return self.frames.shape[0]


def _read_chunks(raw: bytes):
    """Yield (chunk_id, payload) pairs from a RIFF body."""
    pos = 12
    while pos + 8 <= len(raw):
        chunk_id = raw[pos:pos + 4]
        (size,) = struct.unpack_from("<I", raw, pos + 4)
        payload = raw[pos + 8:pos + 8 + size]
        if len(payload) < size:
            raise MalformedHeader(f"chunk {chunk_id!r} truncated ({len(payload)} of {size} bytes)")
        yield chunk_id, payload
        pos += 8 + size + (size & 1)  # chunks are word-aligned


def load_wav(path) -> AudioClip:
    """Decode a mono 16/32-bit PCM RIFF/WAVE file to an AudioClip.

    Multi-channel files are rejected; callers must pre-mix to mono.
    """
    path = Path(path)
    raw = path.read_bytes()
    if len(raw) < 12 or raw[0:4] != b"RIFF" or raw[8:12] != b"WAVE":
        raise MalformedHeader(f"{path}: not a RIFF/WAVE file")

    fmt = None
    data = None
    for chunk_id, payload in _read_chunks(raw):
        if chunk_id == b"fmt " and fmt is None:
            if len(payload) < 16:
                raise MalformedHeader(f"{path}: fmt chunk too short")
            fmt = struct.unpack_from("<HHIIHH", payload, 0)
        elif chunk_id == b"data" and data is None:
            data = payload
    if fmt is None or data is None:
        raise MalformedHeader(f"{path}: missing fmt or data chunk")

    audio_format, channels, sample_rate, _, _, bits = fmt
    if audio_format != 1:
        raise UnsupportedEncoding(f"{path}: WAV format code {audio_format}, only integer PCM (1) supported")
    if bits not in _PCM_SCALE:
        raise UnsupportedEncoding(f"{path}: {bits}-bit PCM not supported (16/32 only)")
    if channels != 1:
        raise UnsupportedChannels(f"{path}: {channels} channels, expected mono")

    width = bits // 8
    usable = len(data) - (len(data) % width)
    ints = np.frombuffer(data[:usable], dtype=_PCM_DTYPE[bits])
    samples = ints.astype(np.float64) / _PCM_SCALE[bits]
    return AudioClip(samples=samples, sample_rate_hz=sample_rate, source_id=path.name)


def save_wav(path, clip: AudioClip) -> None:
    """Write a clip as mono 16-bit PCM (test fixtures and synth output)."""
    samples = np.clip(clip.samples, -1.0, 1.0)
    ints = np.round(samples * 32767.0).astype("<i2")
    data = ints.tobytes()
    rate = clip.sample_rate_hz
    header = b"RIFF" + struct.pack("<I", 36 + len(data)) + b"WAVE"
    header += b"fmt " + struct.pack("<IHHIIHH", 16, 1, 1, rate, rate * 2, 2, 16)
    header += b"data" + struct.pack("<I", len(data))
    Path(path).write_bytes(header + data)


def window_coefficients(window: str, length: int) -> np.ndarray:
    if window == "rectangular":
        return np.ones(length)
    if window == "hann":
        return np.hanning(length)
    if window == "hamming":
        return np.hamming(length)
    raise ValueError(f"unknown window {window!r}, expected one of {WINDOW_TYPES}")


def frame_signal(clip: AudioClip, frame_len_ms: float, hop_ms: float,
                 window: str = "rectangular") -> FrameTrack:
    """Cut a clip into overlapping windowed frames.

    Frame count is floor((len_ms - frame_len_ms) / hop_ms) + 1, evaluated in
    the sample domain so it is exact.
    """
    if frame_len_ms <= 0 or hop_ms <= 0:
        raise ValueError("frame_len_ms and hop_ms must be positive")
    rate = clip.sample_rate_hz
    frame_len = int(round(frame_len_ms * rate / 1000.0))
    hop = int(round(hop_ms * rate / 1000.0))
    if frame_len < 1 or hop < 1:
        raise ValueError("frame and hop must span at least one sample")
    n = len(clip.samples)
    if n < frame_len:
        raise ClipTooShort(f"clip has {n} samples, frame needs {frame_len}")

    n_frames = (n - frame_len) // hop + 1
    idx = np.arange(frame_len)[None, :] + hop * np.arange(n_frames)[:, None]
    frames = clip.samples[idx] * window_coefficients(window, frame_len)[None, :]
    start_times = np.arange(n_frames) * (hop_ms / 1000.0)
    return FrameTrack(frames=frames, frame_len_ms=frame_len_ms, hop_ms=hop_ms,
                      start_times_s=start_times, sample_rate_hz=rate, window=window)


def energy_contour(track: FrameTrack) -> np.ndarray:
    """Per-frame RMS energy (non-negative)."""
    return np.sqrt(np.mean(track.frames ** 2, axis=1))


def dump_frame_values(track: FrameTrack, values: np.ndarray, path) -> None:
    """Dump per-frame values as CSV with header `frame_index,start_s,value...`."""
    values = np.atleast_2d(np.asarray(values, dtype=np.float64))
    if values.shape[0] == 1 and len(track) != 1:
        values = values.T
    if values.shape[0] != len(track):
        raise ValueError("values must have one row per frame")
    n_cols = values.shape[1]
    header = ["frame_index", "start_s"] + [f"value{i}" if n_cols > 1 else "value" for i in range(n_cols)]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for i in range(len(track)):
            writer.writerow([i, repr(float(track.start_times_s[i]))] + [repr(float(v)) for v in values[i]])
