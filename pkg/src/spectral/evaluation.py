from typing import Optional, Callable

import numpy

from src.config.types import MethodName, MitigationConfig, WindowKind
from src.helpers.errors import UsageError, NoTargetsInSpectrumError
from src.helpers.validation import validate
from src.mitigation.AbstractMitigationMethod import AbstractMitigationMethod
from src.mitigation.methods import get_mitigation_method
from src.network.types import GruNetwork
from src.radar.dataset import FrameDataset
from src.radar.simulator import interference_support
from src.spectral.spectrum import range_fft, srinr, detect_peaks
from src.spectral.types import EvalReport, ScenarioResult, RangeSpectrum, LocalizationResult

SpectraSink = Callable[[int, dict[str, RangeSpectrum]], None]


def evaluate_methods(
        dataset: FrameDataset,
        methods: list[MethodName],
        network: Optional[GruNetwork] = None,
        config: MitigationConfig = MitigationConfig(),
        spectra_sink: Optional[SpectraSink] = None,
        max_peaks: int = 4,
) -> EvalReport:
    validate(condition=len(dataset) > 0, error='Evaluation needs at least one frame.', context=len(dataset),
             exception=UsageError)
    validate(condition=len(methods) > 0, error='Evaluation needs at least one method.', context=methods,
             exception=UsageError)

    # Resolving every method first fails fast on a missing model before any work is done.
    mitigation_methods: list[AbstractMitigationMethod] = [
        get_mitigation_method(name, config, network) for name in dict.fromkeys(methods)
    ]
    outputs = {method.name.value: method.mitigate_normalized(dataset.inputs) for method in mitigation_methods}

    per_scenario = []
    for index, record in enumerate(dataset.records):
        victim = record.scene.victim
        spectra = {}
        for name, mitigated in outputs.items():
            spectrum = range_fft(mitigated[index], victim, WindowKind.Hann)
            spectra[name] = spectrum
            try:
                srinr_db = srinr(spectrum, record.scene.targets, victim)
            except NoTargetsInSpectrumError as error:
                raise NoTargetsInSpectrumError(f'Frame {record.index} cannot be scored: {error}')
            per_scenario.append(ScenarioResult(
                scene_id=record.scene.scene_id,
                frame_index=record.index,
                method=name,
                srinr_db=srinr_db,
                detected_ranges_m=[peak.range_m for peak in detect_peaks(spectrum, max_peaks)],
            ))
        if spectra_sink is not None:
            spectra_sink(record.index, spectra)

    aggregate = {
        name: float(numpy.mean([row.srinr_db for row in per_scenario if row.method == name])) for name in outputs
    }
    return EvalReport(
        per_scenario=per_scenario,
        aggregate=aggregate,
        method_labels={method.name.value: method.label for method in mitigation_methods},
        scenario_count=len(dataset),
    )


def interference_localization(dataset: FrameDataset, outputs: numpy.ndarray) -> list[LocalizationResult]:
    """Squared error against the label restricted to the true interference support, before and after mitigation.

    Frames whose chirp is not hit by any interferer are skipped.
    """
    results = []
    for index, record in enumerate(dataset.records):
        support = interference_support(record.scene, record.chirp_index)
        if not support.any():
            continue
        label = dataset.labels[index][support]
        results.append(LocalizationResult(
            frame_index=record.index,
            support_size=int(support.sum()),
            input_error=float(numpy.mean((dataset.inputs[index][support] - label) ** 2)),
            output_error=float(numpy.mean((outputs[index][support] - label) ** 2)),
        ))

    return results
