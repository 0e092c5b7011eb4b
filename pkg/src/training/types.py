from typing import Optional

from pydantic import BaseModel


class BatchRecord(BaseModel):
    epoch: int
    batch: int
    step: int
    loss: float
    grad_norm: float


class EpochRecord(BaseModel):
    epoch: int
    step: int
    train_loss: float
    val_loss: Optional[float] = None
    # Wall clock seconds spent on the epoch, validation included. The only field that differs between reruns.
    elapsed_s: float = 0.0


class TrainLog(BaseModel):
    batches: list[BatchRecord] = []
    epochs: list[EpochRecord] = []
    checkpoints: list[str] = []

    @property
    def step_count(self) -> int:
        return self.batches[-1].step if self.batches else 0

    @property
    def best_epoch(self) -> Optional[EpochRecord]:
        """Epoch with the lowest validation loss, or the lowest train loss when nothing was validated. Ties keep the
        earliest epoch."""
        if not self.epochs:
            return None
        return min(self.epochs, key=lambda record: record.train_loss if record.val_loss is None else record.val_loss)

    def records(self) -> list[dict]:
        """Batch and epoch records in step order, tagged with their kind."""
        rows = [dict(kind='batch', **record.dict()) for record in self.batches] \
            + [dict(kind='epoch', **record.dict()) for record in self.epochs]
        return sorted(rows, key=lambda row: (row['step'], row['kind'] == 'epoch'))
