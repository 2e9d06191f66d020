from hyperext.arrangement import invariants
from hyperext.commands.base_command import BaseCommand, CommandResult
from hyperext.exactq import Hyperplane
from hyperext.extension import classify_extensions
from hyperext.io import (
    arrangement_to_dict,
    bundle_to_dict,
    classification_to_dict,
    dumps,
    restriction_report_to_dict,
)
from hyperext.restriction import classify_restrictions, restrict_to
from hyperext.state import RunConfig


class ClassifyCommand(BaseCommand):
    """One report entry per stratum of ``L(Ã)``."""

    def __init__(self, config: RunConfig):
        super().__init__("classify", config)

    def execute(self) -> CommandResult:
        payload = classification_to_dict(classify_extensions(self.load()))
        payload["seed"] = self.config.seed
        return CommandResult(dumps(payload))


class ClassifyRestrictionsCommand(BaseCommand):
    def __init__(self, config: RunConfig):
        super().__init__("classify-restrictions", config)

    def execute(self) -> CommandResult:
        report = classify_restrictions(self.load(), self.config.seed)
        return CommandResult(dumps(restriction_report_to_dict(report)))


class RestrictCommand(BaseCommand):
    """Restrict to the hyperplane given by ``--normal`` and ``--offset``."""

    def __init__(self, config: RunConfig):
        super().__init__("restrict", config)

    def execute(self) -> CommandResult:
        arrangement = self.load()
        if self.config.normal is None:
            raise ValueError("restrict needs --normal")
        fld = arrangement.field
        hyperplane = Hyperplane(fld.vector(self.config.normal), fld.coerce(self.config.offset), fld)
        restricted = restrict_to(arrangement, hyperplane)
        payload = {"arrangement": arrangement_to_dict(restricted), "invariants": bundle_to_dict(invariants(restricted))}
        return CommandResult(dumps(payload))


def get_classify(config: RunConfig) -> ClassifyCommand:
    return ClassifyCommand(config)


def get_classify_restrictions(config: RunConfig) -> ClassifyRestrictionsCommand:
    return ClassifyRestrictionsCommand(config)


def get_restrict(config: RunConfig) -> RestrictCommand:
    return RestrictCommand(config)
