from abc import ABC, abstractmethod
from typing import NamedTuple

import structlog

from hyperext.arrangement import Arrangement
from hyperext.io import ArrangementFileError, load_arrangement
from hyperext.state import RunConfig

log = structlog.get_logger()


class CommandResult(NamedTuple):
    text: str
    exit_code: int = 0


class BaseCommand(ABC):
    def __init__(self, name: str, config: RunConfig):
        self.name = name
        self.config = config

    def load(self) -> Arrangement:
        if self.config.input is None:
            raise ArrangementFileError("--input", f"{self.name} needs an arrangement file")
        arrangement = load_arrangement(self.config.input)
        log.info(f"{self.name} loaded {len(arrangement)} hyperplanes", dim=arrangement.dim, source=str(self.config.input))
        return arrangement

    @abstractmethod
    def execute(self) -> CommandResult: ...

    def run(self) -> CommandResult:
        result = self.execute()
        if self.config.output is not None:
            self.config.output.write_text(result.text)
            log.info(f"{self.name} wrote {self.config.output}", exit_code=result.exit_code)
        return result
