from logging import warning


def show_warning_once(group: str, message: str) -> None:
    if group not in show_warning_once.already_shown:
        warning(f'!!! {group} !!!\n{message}\n')
        show_warning_once.already_shown[group] = True


def show_envelope_reconstruction_warning_once() -> None:
    show_warning_once(
        group="Envelope Method",
        message="The threshold-free envelope method is reconstructed from a brief description and "
                "has no reference implementation.\nIts numbers are reported as 'envelope (reconstruction)' and may "
                "differ from the algorithm it is modelled on."
    )


def show_equal_slope_warning_once() -> None:
    show_warning_once(
        group="Equal Slope Interferer",
        message="A sawtooth interferer has the same chirp slope as the victim radar.\nIts difference frequency is "
                "constant, so it either covers the whole chirp or never passes the low pass filter."
    )


def show_resampled_frames_warning_once(resampled: int) -> None:
    show_warning_once(
        group="Resampled Frames",
        message=f"{resampled} frame(s) could not be normalized (all-zero signal) and were drawn again from a new "
                "scene.\nThe dataset summary counts them."
    )


show_warning_once.already_shown = {}
