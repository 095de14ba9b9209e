"""Exception types shared across the package."""


class EngageGanError(Exception):
    """Base class for all package-specific errors."""


# -- audio / DSP ---------------------------------------------------------

class MalformedHeader(EngageGanError):
    """WAV file with a broken or truncated RIFF structure."""


class UnsupportedEncoding(EngageGanError):
    """WAV sample format other than 16/32-bit integer PCM."""


class UnsupportedChannels(EngageGanError):
    """WAV with more than one channel; callers must pre-mix to mono."""


class ClipTooShort(EngageGanError):
    """Audio shorter than the minimum required by the operation."""


class SingularAutocorrelation(EngageGanError):
    """Zero-energy frame; the autocorrelation normal equations are singular."""


class NoVoicedFrames(EngageGanError):
    """No voiced frames found where voiced speech is required."""


# -- affective providers -------------------------------------------------

class EmptyLexicon(EngageGanError):
    """Affect lexicon contains no entries."""


class MissingVideoAffect(EngageGanError):
    """Requested clip id absent from the video-affect store (strict policy)."""


class DimensionMismatch(EngageGanError):
    """Vector or matrix dimensions do not match the declared contract."""


# -- neural network ------------------------------------------------------

class StaleTape(EngageGanError):
    """Computation tape reused after the network parameters were mutated."""


# -- training ------------------------------------------------------------

class EmptyBatch(EngageGanError):
    """Batch with zero rows passed where at least one sample is required."""


class InconsistentFeatureDim(EngageGanError):
    """Samples in a dataset do not all share the same feature dimension."""


# -- data pipeline -------------------------------------------------------

class ManifestError(EngageGanError):
    """Manifest file violates the clip-record schema."""


class LengthMismatch(EngageGanError):
    """Sequences that must have equal length do not."""


class OutOfRange(EngageGanError):
    """Value outside the documented input range of a label transform."""


class WindowOutOfStream(EngageGanError):
    """Requested label window extends past the annotation stream."""


class UnanchoredSequence(EngageGanError):
    """Word sequence whose first or last word has no assigned time bin."""


class NonMonotonicBins(EngageGanError):
    """Assigned word bins decrease along the sequence."""


class InsufficientSpeakers(EngageGanError):
    """Too few distinct speakers for a speaker-exclusive split."""


# -- evaluation ----------------------------------------------------------

class EmptyInput(EngageGanError):
    """Empty sequence passed to a metric or aggregator."""


class DegenerateVariance(EngageGanError):
    """Constant series passed where non-zero variance is required."""
