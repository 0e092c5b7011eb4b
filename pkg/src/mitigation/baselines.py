import math

import numpy
from scipy.ndimage import uniform_filter1d
from scipy.signal import get_window

from src.config.config import MAD_TO_SIGMA, ENVELOPE_EPSILON, ENVELOPE_GUARD_PERIODS
from src.config.types import MitigationConfig, ReplaceMode
from src.radar.simulator import normalize_frame


def passthrough(frame: numpy.ndarray) -> numpy.ndarray:
    return frame


def robust_scale(frame: numpy.ndarray) -> float:
    return MAD_TO_SIGMA * float(numpy.median(numpy.abs(frame - numpy.median(frame))))


def tdt_mitigate(frame: numpy.ndarray, config: MitigationConfig = MitigationConfig()) -> numpy.ndarray:
    """Time domain thresholding: blanks samples whose magnitude exceeds beta times the robust scale."""
    sigma = robust_scale(frame)
    if sigma == 0:
        return frame.copy()

    outliers = numpy.abs(frame) > config.tdt_beta * sigma
    cleaned = frame.astype(numpy.float64)
    if config.tdt_replace == ReplaceMode.LinearInterpolate and not outliers.all():
        indices = numpy.arange(len(frame))
        cleaned[outliers] = numpy.interp(indices[outliers], indices[~outliers], frame[~outliers])
    else:
        cleaned[outliers] = 0.0

    return normalize_frame(cleaned, allow_zero=True)


def sliding_rms(frame: numpy.ndarray, window: int) -> numpy.ndarray:
    return numpy.sqrt(uniform_filter1d(frame ** 2, size=window, mode='reflect'))


def envelope_window_length(frame: numpy.ndarray, config: MitigationConfig = MitigationConfig()) -> int:
    """Length of the sliding envelope window for this frame, never shorter than `envelope_window`.

    The window covers `ENVELOPE_GUARD_PERIODS` times the power-weighted mean period of the frame and the same
    multiple of the beat period set by the spread of its dominant spectral lines, so a stationary sum of tones has a
    flat envelope. Broadband bursts spread the lines and keep the window short. A return value equal to the frame
    length means the whole frame is one window.
    """
    length = len(frame)
    power = numpy.abs(numpy.fft.rfft(frame * get_window('hann', length)))[1:length // 2] ** 2
    if not power.any():
        return config.envelope_window
    power = power / power.max()
    bins = numpy.arange(1, length // 2)

    mean_period = float(numpy.sum(power * length / bins) / power.sum())
    # Squared power weights the strong lines and ignores the noise floor.
    weights = power ** 2 / numpy.sum(power ** 2)
    spread = float(numpy.sqrt(numpy.sum(weights * (bins - numpy.sum(weights * bins)) ** 2)))
    beat_period = length / spread if spread > 0 else math.inf

    window = ENVELOPE_GUARD_PERIODS * max(mean_period, beat_period)
    if window >= length:
        return length
    return max(config.envelope_window, 2 * math.ceil(window / 2) + 1)


def envelope_mitigate(frame: numpy.ndarray, config: MitigationConfig = MitigationConfig()) -> numpy.ndarray:
    """Threshold-free suppression: every sample is divided by its local RMS envelope."""
    frame = frame.astype(numpy.float64)
    window = envelope_window_length(frame, config)
    if window >= len(frame):
        envelope = numpy.full(len(frame), numpy.sqrt(numpy.mean(frame ** 2)))
    else:
        envelope = sliding_rms(frame, window)
    return normalize_frame(frame / numpy.maximum(envelope, ENVELOPE_EPSILON), allow_zero=True)
