from typing import Optional

from src.config.types import MethodName, MitigationConfig
from src.helpers.errors import MissingModelError, UsageError
from src.helpers.validation import validate
from src.mitigation.AbstractMitigationMethod import AbstractMitigationMethod
from src.network.types import GruNetwork


def parse_method_names(value: str) -> list[MethodName]:
    names = [name.strip() for name in value.split(',') if name.strip()]
    known = [method.value for method in MethodName]
    for name in names:
        validate(
            condition=name in known,
            error=f"Unknown mitigation method '{name}'. Available methods: {known}",
            context=value,
            exception=UsageError
        )
    validate(condition=len(names) > 0, error='At least one method has to be given.', context=value,
             exception=UsageError)
    return [MethodName(name) for name in names]


def get_mitigation_method(
        name: MethodName, config: MitigationConfig = MitigationConfig(), network: Optional[GruNetwork] = None
) -> AbstractMitigationMethod:
    if name == MethodName.Passthrough:
        from src.mitigation.PassthroughMitigationMethod import PassthroughMitigationMethod
        return PassthroughMitigationMethod()
    if name == MethodName.Tdt:
        from src.mitigation.TdtMitigationMethod import TdtMitigationMethod
        return TdtMitigationMethod(config)
    if name == MethodName.Envelope:
        from src.mitigation.EnvelopeMitigationMethod import EnvelopeMitigationMethod
        return EnvelopeMitigationMethod(config)
    if name == MethodName.Proposed:
        if network is None:
            raise MissingModelError("The 'proposed' method needs a trained model (--model).")
        from src.mitigation.NetworkMitigationMethod import NetworkMitigationMethod
        return NetworkMitigationMethod(network)

    raise UsageError(f'Incorrect mitigation method {name}.')
