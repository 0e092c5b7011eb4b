from argparse import ArgumentParser
from logging import info
from pathlib import Path

from src.commands.AbstractCommand import AbstractCommand
from src.files.reports import write_json_lines
from src.files.rimd import read_rimd
from src.training.trainer import train, split_train_validation, final_checkpoint_path


class TrainCommand(AbstractCommand):
    name = 'train'
    help = 'Train the residual bidirectional GRU on a RIMD dataset and save RIMC checkpoints.'

    @staticmethod
    def add_arguments(parser: ArgumentParser) -> None:
        parser.add_argument('--data', help='Training RIMD file.', type=str, required=True)
        parser.add_argument(
            '--val',
            help='Validation RIMD file. Without it a deterministic share of --data (val_fraction) is held out.',
            type=str
        )
        parser.add_argument('--config', help='Scenario configuration (INI) with an optional [training] section.',
                            type=str)
        parser.add_argument(
            '--ckpt-out',
            help='Best checkpoint path. The last network is saved next to it as "<name>.final.rimc" and the training '
                 'log as "<name>.log.jsonl".',
            type=str,
            required=True
        )

    def run(self) -> None:
        arguments = self._get_arguments()
        config = self._get_config().training

        train_data = read_rimd(arguments.data)
        if arguments.val:
            val_data = read_rimd(arguments.val)
        else:
            train_data, val_data = split_train_validation(train_data, config.val_fraction)
        info(f'Training on {len(train_data)} frames, validating on {len(val_data)} frames.')

        _, log = train(config, train_data, val_data, arguments.ckpt_out)

        checkpoint = Path(arguments.ckpt_out)
        log_path = checkpoint.with_name(f'{checkpoint.stem}.log.jsonl')
        write_json_lines(log_path, log.records())

        if not log.epochs:
            print('\nNo epochs configured, nothing was trained.')
            return
        best = log.best_epoch
        print(f'\nBest checkpoint (epoch {best.epoch + 1}) saved as {checkpoint}, '
              f'final checkpoint as {final_checkpoint_path(checkpoint)}, training log as {log_path}.')
