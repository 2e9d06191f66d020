import structlog

from hyperext.commands.base_command import BaseCommand, CommandResult
from hyperext.finitefield import count_complement, good_prime, reduce_mod_p
from hyperext.state import RunConfig

log = structlog.get_logger()


class FfCountCommand(BaseCommand):
    """Print ``#M(A_p)`` for the prime given by ``--p``.

    Without ``--p`` a rational arrangement is counted at its smallest good
    prime above the configured floor.
    """

    def __init__(self, config: RunConfig):
        super().__init__("ff-count", config)

    def execute(self) -> CommandResult:
        arrangement = self.load()
        p = self.config.prime
        if arrangement.field.is_prime:
            if p not in (None, arrangement.field.modulus):
                raise ValueError(f"file is over {arrangement.field}, --p asks for {p}")
            reduced = arrangement
        else:
            if p is None:
                p, _ = good_prime(arrangement, self.config.prime_floor)
                log.info(f"ff-count chose p={p}")
            reduced = reduce_mod_p(arrangement, p)
        return CommandResult(f"{count_complement(reduced, self.config.count_budget)}\n")


def get_ff_count(config: RunConfig) -> FfCountCommand:
    return FfCountCommand(config)
