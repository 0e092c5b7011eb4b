from enum import Enum

from pydantic import BaseModel, validator, root_validator

from src.config.config import radar_bounds, scene_bounds, baselines_defaults, training_defaults


class WaveformKind(str, Enum):
    Sawtooth = 'sawtooth-CS'
    Triangle = 'triangle-FMCW'


class ReplaceMode(str, Enum):
    Zero = 'zero'
    LinearInterpolate = 'linear-interpolate'


class WindowKind(str, Enum):
    Rectangular = 'rectangular'
    Hann = 'hann'


class MethodName(str, Enum):
    Passthrough = 'none'
    Tdt = 'tdt'
    Envelope = 'envelope'
    Proposed = 'proposed'


def _check_ordered(values: dict, pairs: list[tuple[str, str]]) -> dict:
    for low, high in pairs:
        if low in values and high in values and values[low] > values[high]:
            raise ValueError(f"'{low}' ({values[low]}) has to be less or equal to '{high}' ({values[high]}).")
    return values


# noinspection PyMethodParameters
class RadarBounds(BaseModel):
    f_min: float = radar_bounds['f_min']
    f_max: float = radar_bounds['f_max']
    B_min: float = radar_bounds['B_min']
    B_max: float = radar_bounds['B_max']
    Tchirp_min: float = radar_bounds['Tchirp_min']
    Tchirp_max: float = radar_bounds['Tchirp_max']
    f_s: float = radar_bounds['f_s']
    lpf_cutoff: float = radar_bounds['lpf_cutoff']
    num_chirps: int = radar_bounds['num_chirps']

    class Config:
        extra = 'forbid'

    @validator('*')
    def positive(cls, value):
        if not value > 0:
            raise ValueError('radar parameters have to be positive')
        return value

    @root_validator(skip_on_failure=True)
    def ordered(cls, values: dict) -> dict:
        values = _check_ordered(values, [('f_min', 'f_max'), ('B_min', 'B_max'), ('Tchirp_min', 'Tchirp_max')])
        if values['lpf_cutoff'] > values['f_s'] / 2:
            raise ValueError("'lpf_cutoff' cannot exceed half of 'f_s'.")
        return values


# noinspection PyMethodParameters
class SceneBounds(BaseModel):
    range_min: float = scene_bounds['range_min']
    range_max: float = scene_bounds['range_max']
    velocity_min_kmh: float = scene_bounds['velocity_min_kmh']
    velocity_max_kmh: float = scene_bounds['velocity_max_kmh']
    targets_min: int = scene_bounds['targets_min']
    targets_max: int = scene_bounds['targets_max']
    interferers_min: int = scene_bounds['interferers_min']
    interferers_max: int = scene_bounds['interferers_max']
    snr_min_db: float = scene_bounds['snr_min_db']
    snr_max_db: float = scene_bounds['snr_max_db']
    interferer_gain_min: float = scene_bounds['interferer_gain_min']
    interferer_gain_max: float = scene_bounds['interferer_gain_max']

    class Config:
        extra = 'forbid'

    @validator('range_min', 'targets_min', 'interferer_gain_min')
    def strictly_positive(cls, value):
        if not value > 0:
            raise ValueError('has to be positive')
        return value

    @validator('interferers_min')
    def non_negative(cls, value):
        if value < 0:
            raise ValueError('cannot be negative')
        return value

    @root_validator(skip_on_failure=True)
    def ordered(cls, values: dict) -> dict:
        return _check_ordered(values, [
            ('range_min', 'range_max'), ('velocity_min_kmh', 'velocity_max_kmh'), ('targets_min', 'targets_max'),
            ('interferers_min', 'interferers_max'), ('snr_min_db', 'snr_max_db'),
            ('interferer_gain_min', 'interferer_gain_max'),
        ])


# noinspection PyMethodParameters
class MitigationConfig(BaseModel):
    tdt_beta: float = baselines_defaults['tdt_beta']
    tdt_replace: ReplaceMode = ReplaceMode(baselines_defaults['tdt_replace'])
    envelope_window: int = baselines_defaults['envelope_window']

    class Config:
        extra = 'forbid'

    @validator('tdt_beta')
    def positive_beta(cls, value: float) -> float:
        if not value > 0:
            raise ValueError('tdt_beta has to be positive')
        return value

    @validator('envelope_window')
    def odd_window(cls, value: int) -> int:
        if value < 3 or value % 2 == 0:
            raise ValueError('envelope_window has to be odd and at least 3')
        return value


# noinspection PyMethodParameters
class TrainConfig(BaseModel):
    batch_size: int = training_defaults['batch_size']
    learning_rate: float = training_defaults['learning_rate']
    hidden_size: int = training_defaults['hidden_size']
    num_layers: int = training_defaults['num_layers']
    dropout_rate: float = training_defaults['dropout_rate']
    epochs: int = training_defaults['epochs']
    clip_norm: float = training_defaults['clip_norm']
    seed: int = training_defaults['seed']
    checkpoint_every: int = training_defaults['checkpoint_every']
    val_fraction: float = training_defaults['val_fraction']
    seq_len: int = training_defaults['seq_len']

    class Config:
        extra = 'forbid'

    @validator('batch_size', 'learning_rate', 'hidden_size', 'num_layers', 'clip_norm', 'checkpoint_every', 'seq_len')
    def positive(cls, value):
        if not value > 0:
            raise ValueError('has to be positive')
        return value

    @validator('epochs', 'seed')
    def non_negative(cls, value: int) -> int:
        if value < 0:
            raise ValueError('cannot be negative')
        return value

    @validator('dropout_rate')
    def dropout_range(cls, value: float) -> float:
        if not 0 <= value < 1:
            raise ValueError('dropout_rate has to be in [0, 1)')
        return value

    @validator('val_fraction')
    def fraction_range(cls, value: float) -> float:
        if not 0 < value < 1:
            raise ValueError('val_fraction has to be in (0, 1)')
        return value


class ScenarioConfig(BaseModel):
    radar: RadarBounds = RadarBounds()
    scene: SceneBounds = SceneBounds()
    baselines: MitigationConfig = MitigationConfig()
    training: TrainConfig = TrainConfig()

    class Config:
        extra = 'forbid'
