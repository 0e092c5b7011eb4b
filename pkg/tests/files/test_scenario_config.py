import pytest

from src.config.types import ReplaceMode
from src.files.scenario_config import load_scenario_config
from src.helpers.errors import ConfigKeyError, UsageError


def _write(tmp_path, text: str):
    path = tmp_path / 'scenario.ini'
    path.write_text(text)
    return path


def test_missing_keys_keep_their_defaults(tmp_path):
    config = load_scenario_config(_write(tmp_path, '[scene]\nrange_min = 99\nrange_max = 101\n\n'
                                                   '[baselines]\ntdt_replace = linear-interpolate\n'))

    assert (config.scene.range_min, config.scene.range_max) == (99.0, 101.0)
    assert config.scene.snr_min_db == 10.0
    assert config.baselines.tdt_replace == ReplaceMode.LinearInterpolate
    assert config.radar.f_s == 20e6
    assert config.training.batch_size == 128


def test_training_section_overrides_hyperparameters(tmp_path):
    config = load_scenario_config(_write(tmp_path, '[training]\nhidden_size = 32\nepochs = 5\n'))
    assert (config.training.hidden_size, config.training.epochs, config.training.num_layers) == (32, 5, 3)


def test_unknown_key_is_named(tmp_path):
    with pytest.raises(ConfigKeyError) as error:
        load_scenario_config(_write(tmp_path, '[scene]\nrang_min = 5\n'))

    assert error.value.key == 'scene.rang_min'
    assert error.value.exit_code == 1


def test_unknown_section_is_named(tmp_path):
    with pytest.raises(ConfigKeyError) as error:
        load_scenario_config(_write(tmp_path, '[antenna]\ngain = 5\n'))
    assert error.value.key == 'antenna'


def test_keys_are_case_sensitive(tmp_path):
    with pytest.raises(ConfigKeyError):
        load_scenario_config(_write(tmp_path, '[radar]\nb_min = 1e8\n'))
    assert load_scenario_config(_write(tmp_path, '[radar]\nB_min = 1.2e8\n')).radar.B_min == 1.2e8


@pytest.mark.parametrize('text', [
    '[scene]\nrange_min = 50\nrange_max = 10\n',
    '[radar]\nlpf_cutoff = 15e6\n',
    '[baselines]\nenvelope_window = 30\n',
    '[training]\ndropout_rate = 1.5\n',
    '[scene]\nrange_min = far\n',
])
def test_invalid_values_are_usage_errors(tmp_path, text):
    with pytest.raises(UsageError):
        load_scenario_config(_write(tmp_path, text))


def test_missing_file_is_a_usage_error(tmp_path):
    with pytest.raises(UsageError):
        load_scenario_config(tmp_path / 'nothing.ini')
