from argparse import ArgumentParser

from src.commands.AbstractCommand import AbstractCommand
from src.helpers.errors import UsageError
from src.helpers.validation import validate
from src.files.rimd import RimdWriter
from src.radar.dataset import generate_dataset


class GenerateCommand(AbstractCommand):
    name = 'generate'
    help = 'Simulate a dataset of interfered / clean beat signal frames and save it as a RIMD file.'

    @staticmethod
    def add_arguments(parser: ArgumentParser) -> None:
        parser.add_argument(
            'config',
            help='Scenario configuration (INI). Keys that are not given keep their defaults.',
            nargs='?',
            type=str
        )
        parser.add_argument('--count', help='Number of frames to generate.', type=int, required=True)
        parser.add_argument('--seed', help='Base seed, every frame is derived from it.', type=int, default=0)
        parser.add_argument('--out', help='Target RIMD file. An existing file is overwritten.', type=str,
                            required=True)

    def run(self) -> None:
        arguments = self._get_arguments()
        validate(condition=arguments.count >= 1, error='--count has to be at least 1.', context=arguments.count,
                 exception=UsageError)
        validate(condition=arguments.seed >= 0, error='--seed cannot be negative.', context=arguments.seed,
                 exception=UsageError)
        config = self._get_config()

        with RimdWriter(arguments.out, arguments.count, config.radar.f_s, arguments.seed) as writer:
            summary = generate_dataset(arguments.count, arguments.seed, writer, config)

        print(f'\nDataset saved as {arguments.out}. '
              f'Frames: {summary.count}, resampled: {summary.resampled}, elapsed: {summary.elapsed_s:.2f} s.')
