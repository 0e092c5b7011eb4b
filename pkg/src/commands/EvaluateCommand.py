from argparse import ArgumentParser

from src.commands.AbstractCommand import AbstractCommand
from src.config.types import MethodName
from src.files.reports import write_report, SpectraDirectoryWriter
from src.files.rimd import read_rimd
from src.helpers.errors import UsageError
from src.helpers.validation import validate
from src.mitigation.methods import parse_method_names
from src.spectral.evaluation import evaluate_methods


class EvaluateCommand(AbstractCommand):
    name = 'evaluate'
    help = 'Compare mitigation methods by SRINR over the frames of a RIMD dataset.'

    @staticmethod
    def add_arguments(parser: ArgumentParser) -> None:
        parser.add_argument('--data', help='RIMD dataset to evaluate on.', type=str, required=True)
        parser.add_argument('--model', help='RIMC checkpoint, required by the "proposed" method.', type=str)
        parser.add_argument(
            '--methods',
            help='Comma separated methods out of: none, tdt, envelope, proposed.',
            type=str,
            default='none,tdt,envelope'
        )
        parser.add_argument('--report', help='Target JSON report file.', type=str, required=True)
        parser.add_argument('--spectra-dir', help='Directory for per-frame range spectra CSV files.', type=str)
        parser.add_argument('--config', help='Scenario configuration (INI), its [baselines] section is used.',
                            type=str)

    def run(self) -> None:
        arguments = self._get_arguments()
        methods = parse_method_names(arguments.methods)
        validate(
            condition=not arguments.model or MethodName.Proposed in methods,
            error='--model is only used by the "proposed" method.',
            context=arguments.methods,
            exception=UsageError
        )
        config = self._get_config()
        network = self._get_network()
        dataset = read_rimd(arguments.data)

        report = evaluate_methods(
            dataset,
            methods,
            network,
            config.baselines,
            SpectraDirectoryWriter(arguments.spectra_dir) if arguments.spectra_dir else None,
        )
        write_report(arguments.report, report)
        for name, value in report.aggregate.items():
            print(f'  {report.method_labels[name]}: mean SRINR {value:.3f} dB')
