from hyperext.adjoint import induced_adjoint
from hyperext.arrangement import build_semilattice
from hyperext.commands.base_command import BaseCommand, CommandResult
from hyperext.io import adjoint_to_dict, dumps
from hyperext.nbc import affine_circuits, cij_via_nbc, nbc_sets
from hyperext.state import RunConfig


class AdjointCommand(BaseCommand):
    """Emit ``Ã`` with provenance, together with ``σA°`` and ``Ā``."""

    def __init__(self, config: RunConfig):
        super().__init__("adjoint", config)

    def execute(self) -> CommandResult:
        adjoint = induced_adjoint(self.load())
        payload = adjoint_to_dict(adjoint)
        payload["lattice_size"] = len(build_semilattice(adjoint.induced))
        return CommandResult(dumps(payload))


class NbcCommand(BaseCommand):
    """Circuits, broken circuits and NBC sets under the requested order."""

    def __init__(self, config: RunConfig):
        super().__init__("nbc", config)

    def execute(self) -> CommandResult:
        arrangement = self.load()
        order = self.config.order
        catalog = affine_circuits(arrangement, order)
        sets = {str(k): [list(s) for s in nbc_sets(arrangement, k, order)] for k in range(arrangement.dim + 1)}
        payload = {
            "order": list(catalog.order),
            "circuits": [list(c) for c in catalog.circuits],
            "brokenCircuits": [list(b) for b in catalog.broken_circuits],
            "nbc": sets,
            "counts": [len(sets[str(k)]) for k in range(arrangement.dim + 1)],
            "cij": [list(row) for row in cij_via_nbc(arrangement, order)],
        }
        return CommandResult(dumps(payload))


def get_adjoint(config: RunConfig) -> AdjointCommand:
    return AdjointCommand(config)


def get_nbc(config: RunConfig) -> NbcCommand:
    return NbcCommand(config)
