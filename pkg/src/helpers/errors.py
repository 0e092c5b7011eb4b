class RimError(Exception):
    exit_code = 1


class UsageError(RimError):
    exit_code = 1


class ConfigKeyError(UsageError):

    def __init__(self, key: str, message: str = 'Unknown configuration key'):
        super().__init__(f"{message}: '{key}'")
        self.key = key


class FormatError(RimError):
    exit_code = 2


class CorruptFileError(FormatError):

    def __init__(self, message: str, offset: int):
        super().__init__(f'{message} (at byte offset {offset})')
        self.offset = offset


class VersionMismatchError(FormatError):
    pass


class ShapeTableError(FormatError):
    pass


# The frame data cannot be scored: no true target is visible in its spectrum.
class NoTargetsInSpectrumError(FormatError, ValueError):
    pass


class NumericAbortError(RimError):
    exit_code = 3


# A frame with zero or non-finite energy. Generation only hits this when the configuration allows silent scenes.
class DegenerateFrameError(UsageError, ValueError):
    pass


class MissingModelError(UsageError):
    pass


class MissingTraceError(ValueError):
    pass


class ShapeMismatchError(ValueError):
    pass
