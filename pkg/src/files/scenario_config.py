from configparser import ConfigParser, Error as ConfigParserError
from pathlib import Path
from typing import Union

from pydantic import ValidationError

from src.config.types import ScenarioConfig
from src.helpers.errors import ConfigKeyError, UsageError
from src.helpers.validation import validate


def _section_keys() -> dict[str, set[str]]:
    return {name: set(field.type_.__fields__) for name, field in ScenarioConfig.__fields__.items()}


def load_scenario_config(path: Union[str, Path]) -> ScenarioConfig:
    """Reads an INI file with optional [radar], [scene], [baselines] and [training] sections.

    Missing keys keep their defaults. Unknown sections and keys are rejected so that a typo never silently falls back
    to a default.
    """
    validate(condition=Path(path).is_file(), error='Configuration file does not exist.', context=str(path),
             exception=UsageError)

    parser = ConfigParser(interpolation=None)
    parser.optionxform = str
    try:
        parser.read(path, encoding='utf-8')
    except ConfigParserError as error:
        raise UsageError(f'Configuration file {path} cannot be parsed: {error}')

    for key in parser.defaults():
        raise ConfigKeyError(f'DEFAULT.{key}')

    known = _section_keys()
    values = {}
    for section in parser.sections():
        if section not in known:
            raise ConfigKeyError(section, 'Unknown configuration section')
        for key, value in parser.items(section):
            if key not in known[section]:
                raise ConfigKeyError(f'{section}.{key}')
        values[section] = dict(parser.items(section))

    try:
        return ScenarioConfig.parse_obj(values)
    except ValidationError as error:
        raise UsageError(f'Invalid configuration in {path}:\n{error}')
