from argparse import ArgumentParser
from pathlib import Path

from pydantic import ValidationError

from src.commands.AbstractCommand import AbstractCommand
from src.config.config import FRAME_LENGTH, mitigate_defaults
from src.config.types import MethodName, WindowKind
from src.files.reports import write_spectra
from src.helpers.data_frames import read_single_column, write_single_column
from src.helpers.errors import DegenerateFrameError, FormatError, UsageError
from src.mitigation.methods import get_mitigation_method
from src.radar.simulator import normalize_frame
from src.radar.types import VictimRadar
from src.spectral.spectrum import range_fft


class MitigateCommand(AbstractCommand):
    name = 'mitigate'
    help = f'Clean a single {FRAME_LENGTH}-sample beat signal frame (CSV, one value per line).'

    @staticmethod
    def add_arguments(parser: ArgumentParser) -> None:
        parser.add_argument('--in', dest='source', help=f'Input CSV with {FRAME_LENGTH} values, one per line.',
                            type=str, required=True)
        parser.add_argument('--model', help='RIMC checkpoint, required by the "proposed" method.', type=str)
        parser.add_argument(
            '--out',
            help='Output CSV for the cleaned frame. The input and output range spectra are saved next to it as '
                 '"<name>.spectra.csv".',
            type=str,
            required=True
        )
        parser.add_argument(
            '--method',
            help='Mitigation method.',
            choices=[method.value for method in MethodName],
            default=MethodName.Proposed.value
        )
        parser.add_argument('--config', help='Scenario configuration (INI), its [baselines] section is used.',
                            type=str)
        parser.add_argument('--sample-rate', help='Sample rate in Hz, for the spectra axes.', type=float,
                            default=mitigate_defaults['sample_rate_hz'])
        parser.add_argument('--sweep-bandwidth', help='Victim sweep bandwidth in Hz, for the range axis.',
                            type=float, default=mitigate_defaults['sweep_bandwidth_hz'])
        parser.add_argument('--chirp-duration', help='Victim chirp duration in s, for the range axis.', type=float,
                            default=mitigate_defaults['chirp_duration_s'])

    def __get_victim(self) -> VictimRadar:
        arguments = self._get_arguments()
        try:
            return VictimRadar(
                carrier_frequency_hz=mitigate_defaults['carrier_frequency_hz'],
                sweep_bandwidth_hz=arguments.sweep_bandwidth,
                chirp_duration_s=arguments.chirp_duration,
                sample_rate_hz=arguments.sample_rate,
                lpf_cutoff_hz=arguments.sample_rate / 2,
            )
        except ValidationError as error:
            raise UsageError(f'Invalid radar parameters:\n{error}')

    def run(self) -> None:
        arguments = self._get_arguments()
        victim = self.__get_victim()
        method = get_mitigation_method(MethodName(arguments.method), self._get_config().baselines,
                                       self._get_network())

        frame = read_single_column(arguments.source, FRAME_LENGTH)
        try:
            frame = normalize_frame(frame)
        except DegenerateFrameError:
            raise FormatError(f'Input frame {arguments.source} has zero or non-finite energy and cannot be normalized.')
        cleaned = method.mitigate(frame)

        output = Path(arguments.out)
        spectra_path = output.with_name(f'{output.stem}.spectra.csv')
        write_single_column(str(output), cleaned)
        write_spectra(spectra_path, {
            'input': range_fft(frame, victim, WindowKind.Hann),
            'output': range_fft(cleaned, victim, WindowKind.Hann),
        })
        print(f'\nCleaned frame ({method.label}) saved as {output}, range spectra as {spectra_path}.')
