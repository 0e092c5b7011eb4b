SPEED_OF_LIGHT = 3e8

# Length of every input / label sequence. Longer chirps are cut, shorter ones are zero-padded.
FRAME_LENGTH = 416

NUM_CHIRPS = 75

# Worst case beat frequency is 2 * (200 MHz / 20 us) * 130 m / c ~ 8.67 MHz, which has to stay below Nyquist.
DEFAULT_SAMPLE_RATE_HZ = 20e6

# Radar simulator random parameters.
radar_bounds = {
    'f_min': 76e9,
    'f_max': 78e9,
    'B_min': 100e6,
    'B_max': 200e6,
    'Tchirp_min': 20e-6,
    'Tchirp_max': 40e-6,
    'f_s': DEFAULT_SAMPLE_RATE_HZ,
    'lpf_cutoff': DEFAULT_SAMPLE_RATE_HZ / 2,
    'num_chirps': NUM_CHIRPS,
}

scene_bounds = {
    'range_min': 1.0,
    'range_max': 130.0,
    'velocity_min_kmh': 0.0,
    'velocity_max_kmh': 50.0,
    'targets_min': 1,
    'targets_max': 2,
    'interferers_min': 1,
    'interferers_max': 4,
    'snr_min_db': 10.0,
    'snr_max_db': 30.0,
    # Interferer amplitude relative to the strongest target, drawn log-uniform.
    'interferer_gain_min': 0.5,
    'interferer_gain_max': 5.0,
}

baselines_defaults = {
    'tdt_beta': 3.0,
    'tdt_replace': 'zero',
    'envelope_window': 31,
}

# Deep learning hyperparameters.
training_defaults = {
    'batch_size': 128,
    'learning_rate': 1e-3,
    'hidden_size': 100,
    'num_layers': 3,
    'dropout_rate': 0.3,
    'epochs': 30,
    'clip_norm': 1.0,
    'seed': 0,
    'checkpoint_every': 100,
    'val_fraction': 0.1,
    'seq_len': FRAME_LENGTH,
}

adam_defaults = {
    'beta1': 0.9,
    'beta2': 0.999,
    'epsilon': 1e-8,
}

# SRINR cell geometry, in bins around each true beat frequency.
SRINR_TARGET_CELLS = 1
SRINR_GUARD_CELLS = 3

# Peak detection rule.
PEAK_THRESHOLD_ABOVE_MEDIAN_DB = 12.0
PEAK_DOMINANCE_BINS = 3

POWER_FLOOR_DB = -300.0

ENVELOPE_EPSILON = 1e-6

# The envelope window spans at least this many periods of the frame's tones and of the beats between its spectral lines.
ENVELOPE_GUARD_PERIODS = 4

MAD_TO_SIGMA = 1.4826

MAX_FRAME_RESAMPLES = 10

# Recorded in every checkpoint: reset gate applied to the recurrent candidate term, bidirectional outputs summed,
# residual connections from the second layer on.
ARCHITECTURE_TAG = 'bigru-resetafter-sum-res2-v1'
MERGE_MODE = 'sum'

# Victim radar assumed by the mitigate command for the range axis of its spectra.
mitigate_defaults = {
    'carrier_frequency_hz': 77e9,
    'sweep_bandwidth_hz': 150e6,
    'chirp_duration_s': 30e-6,
    'sample_rate_hz': DEFAULT_SAMPLE_RATE_HZ,
}
