from hyperext.arrangement import build_semilattice, invariants
from hyperext.commands.base_command import BaseCommand, CommandResult
from hyperext.io import bundle_to_dict, dumps, lattice_to_dict, lattice_to_dot
from hyperext.state import RunConfig


class InvariantsCommand(BaseCommand):
    """Print the invariant bundle of the input arrangement."""

    def __init__(self, config: RunConfig):
        super().__init__("invariants", config)

    def execute(self) -> CommandResult:
        arrangement = self.load()
        payload = bundle_to_dict(invariants(arrangement))
        payload.update(
            dim=arrangement.dim,
            hyperplanes=len(arrangement),
            essential=arrangement.is_essential,
            central=arrangement.is_central,
            lattice_size=len(build_semilattice(arrangement)),
        )
        return CommandResult(dumps(payload))


class LatticeCommand(BaseCommand):
    """Export ``L(A)`` as JSON or as a DOT digraph."""

    def __init__(self, config: RunConfig):
        super().__init__("lattice", config)

    def execute(self) -> CommandResult:
        lattice = build_semilattice(self.load())
        if self.config.fmt == "dot":
            return CommandResult(lattice_to_dot(lattice))
        return CommandResult(dumps(lattice_to_dict(lattice)))


def get_invariants(config: RunConfig) -> InvariantsCommand:
    return InvariantsCommand(config)


def get_lattice(config: RunConfig) -> LatticeCommand:
    return LatticeCommand(config)
