import argparse
import logging
import sys
from typing import Optional, NoReturn

from src.commands.AbstractCommand import AbstractCommand
from src.commands.EvaluateCommand import EvaluateCommand
from src.commands.GenerateCommand import GenerateCommand
from src.commands.MitigateCommand import MitigateCommand
from src.commands.TrainCommand import TrainCommand
from src.helpers.errors import RimError, UsageError

COMMANDS: list[type[AbstractCommand]] = [GenerateCommand, TrainCommand, EvaluateCommand, MitigateCommand]


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with 1, exit code 2 is reserved for file format errors."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(UsageError.exit_code, f'{self.prog}: error: {message}\n')


def build_argument_parser() -> ArgumentParser:
    argument_parser = ArgumentParser('rim.py', description='Radar interference mitigation toolkit.')
    subparsers = argument_parser.add_subparsers(dest='command', required=True, metavar='command')
    for command in COMMANDS:
        command.add_arguments(subparsers.add_parser(command.name, help=command.help, description=command.help))
    return argument_parser


def main(argv: Optional[list[str]] = None) -> int:
    logging.basicConfig(level=logging.INFO, format='%(levelname)s: %(message)s')
    try:
        arguments = build_argument_parser().parse_args(argv)
    except SystemExit as exit_request:
        return int(exit_request.code or 0)

    command = next(command for command in COMMANDS if command.name == arguments.command)
    try:
        command(arguments).run()
    except RimError as error:
        logging.error(str(error))
        return error.exit_code
    except OSError as error:
        logging.error(f'{error.filename or ""}: {error.strerror or error}')
        return UsageError.exit_code

    return 0


if __name__ == '__main__':
    sys.exit(main())
