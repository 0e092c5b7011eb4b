import numpy
from scipy.signal import get_window

from src.config.config import SPEED_OF_LIGHT, FRAME_LENGTH, POWER_FLOOR_DB, PEAK_THRESHOLD_ABOVE_MEDIAN_DB, \
    PEAK_DOMINANCE_BINS, SRINR_TARGET_CELLS, SRINR_GUARD_CELLS
from src.config.types import WindowKind
from src.helpers.errors import ShapeMismatchError, NoTargetsInSpectrumError
from src.helpers.validation import validate, validate_finite
from src.radar.types import VictimRadar, Target
from src.spectral.types import RangeSpectrum, RangeDopplerMap, Peak

_SCIPY_WINDOWS = {WindowKind.Rectangular: 'boxcar', WindowKind.Hann: 'hann'}


def _to_db(power: numpy.ndarray) -> numpy.ndarray:
    with numpy.errstate(divide='ignore'):
        return numpy.maximum(10 * numpy.log10(power), POWER_FLOOR_DB)


def _window(kind: WindowKind, length: int) -> numpy.ndarray:
    return get_window(_SCIPY_WINDOWS[WindowKind(kind)], length)


def _range_bins(frames: numpy.ndarray, window: WindowKind) -> numpy.ndarray:
    length = frames.shape[-1]
    return numpy.fft.rfft(frames * _window(window, length), axis=-1)[..., :length // 2]


def range_per_bin(victim: VictimRadar, length: int = FRAME_LENGTH) -> float:
    return SPEED_OF_LIGHT * (victim.sample_rate_hz / length) / (2 * victim.slope)


def range_fft(frame: numpy.ndarray, victim: VictimRadar, window: WindowKind = WindowKind.Hann) -> RangeSpectrum:
    validate(
        condition=frame.shape == (FRAME_LENGTH,),
        error=f'Range FFT expects a frame of {FRAME_LENGTH} samples.',
        context=frame.shape,
        exception=ShapeMismatchError
    )
    validate_finite(frame, 'frame')

    return RangeSpectrum(
        bins=_to_db(numpy.abs(_range_bins(frame, window)) ** 2),
        bin_width_hz=victim.sample_rate_hz / FRAME_LENGTH,
        range_per_bin_m=range_per_bin(victim),
    )


def normalized_doppler(velocity_mps: float, victim: VictimRadar) -> float:
    """Doppler frequency in cycles per chirp."""
    return 2 * velocity_mps / SPEED_OF_LIGHT * victim.carrier_frequency_hz * victim.chirp_duration_s


def doppler_fft(
        frames: numpy.ndarray,
        victim: VictimRadar,
        range_window: WindowKind = WindowKind.Hann,
        doppler_window: WindowKind = WindowKind.Rectangular,
) -> RangeDopplerMap:
    validate(
        condition=frames.ndim == 2 and frames.shape == (victim.num_chirps, FRAME_LENGTH),
        error=f'Doppler FFT expects {victim.num_chirps} chirps of {FRAME_LENGTH} samples.',
        context=frames.shape,
        exception=ShapeMismatchError
    )
    validate_finite(frames, 'frames')

    range_bins = _range_bins(frames, range_window)
    doppler = numpy.fft.fft(range_bins * _window(doppler_window, victim.num_chirps)[:, numpy.newaxis], axis=0)

    return RangeDopplerMap(
        power_db=_to_db(numpy.abs(doppler) ** 2),
        range_per_bin_m=range_per_bin(victim),
        velocity_per_bin_mps=SPEED_OF_LIGHT / (
            2 * victim.carrier_frequency_hz * victim.chirp_duration_s * victim.num_chirps
        ),
    )


def estimate_velocity(doppler_map: RangeDopplerMap) -> float:
    doppler_bin, _ = numpy.unravel_index(numpy.argmax(doppler_map.power_db), doppler_map.power_db.shape)
    num_chirps = doppler_map.power_db.shape[0]
    signed_bin = doppler_bin if doppler_bin < num_chirps / 2 else doppler_bin - num_chirps
    return float(signed_bin * doppler_map.velocity_per_bin_mps)


def detect_peaks(spectrum: RangeSpectrum, max_peaks: int) -> list[Peak]:
    validate(condition=max_peaks >= 1, error='max_peaks has to be at least 1.', context=max_peaks)

    bins = spectrum.bins
    threshold = float(numpy.median(bins)) + PEAK_THRESHOLD_ABOVE_MEDIAN_DB
    peaks = []
    for index in numpy.flatnonzero(bins > threshold):
        start = max(0, index - PEAK_DOMINANCE_BINS)
        neighbourhood = bins[start:index + PEAK_DOMINANCE_BINS + 1]
        # Plateaus report their first bin only.
        if start + int(numpy.argmax(neighbourhood)) == index:
            peaks.append(Peak(
                bin=int(index), range_m=float(index * spectrum.range_per_bin_m), power_db=float(bins[index])
            ))

    peaks.sort(key=lambda peak: (-peak.power_db, peak.bin))
    return peaks[:max_peaks]


def srinr(spectrum: RangeSpectrum, true_targets: list[Target], victim: VictimRadar) -> float:
    """Signal to remaining interference plus noise ratio in dB.

    Target cells are the bins within one bin of each true beat frequency, guard cells extend them by three more
    bins on each side, every other bin is the residual floor.
    """
    validate(condition=len(true_targets) >= 1, error='SRINR needs at least one target.', context=true_targets)

    count = len(spectrum.bins)
    target_cells = numpy.zeros(count, dtype=bool)
    excluded = numpy.zeros(count, dtype=bool)
    for target in true_targets:
        beat_frequency = target.beat_frequency(victim)
        # Tones above the cutoff never reach the spectrum.
        if beat_frequency > victim.lpf_cutoff_hz:
            continue
        center = min(int(round(beat_frequency / spectrum.bin_width_hz)), count - 1)
        target_cells[max(0, center - SRINR_TARGET_CELLS):center + SRINR_TARGET_CELLS + 1] = True
        excluded[max(0, center - SRINR_TARGET_CELLS - SRINR_GUARD_CELLS):
                 center + SRINR_TARGET_CELLS + SRINR_GUARD_CELLS + 1] = True

    if not target_cells.any():
        raise NoTargetsInSpectrumError('None of the targets falls inside the range spectrum.')
    if excluded.all():
        raise NoTargetsInSpectrumError('Target and guard cells leave no bins for the residual floor.')

    power = spectrum.power
    return float(10 * numpy.log10(power[target_cells].mean() / power[~excluded].mean()))
