from abc import ABC, abstractmethod
from argparse import ArgumentParser, Namespace
from typing import Optional

from src.config.types import ScenarioConfig
from src.files.scenario_config import load_scenario_config
from src.network.checkpoint import load_network
from src.network.types import GruNetwork


class AbstractCommand(ABC):
    name: str
    help: str

    def __init__(self, arguments: Namespace):
        self.__arguments = arguments

    @staticmethod
    @abstractmethod
    def add_arguments(parser: ArgumentParser) -> None: pass

    @abstractmethod
    def run(self) -> None: pass

    def _get_arguments(self) -> Namespace:
        return self.__arguments

    def _get_config(self) -> ScenarioConfig:
        path = getattr(self.__arguments, 'config', None)
        return load_scenario_config(path) if path else ScenarioConfig()

    def _get_network(self) -> Optional[GruNetwork]:
        path = getattr(self.__arguments, 'model', None)
        return load_network(path) if path else None
