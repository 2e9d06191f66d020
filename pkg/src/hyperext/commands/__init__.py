"""Command implementations for the hyperext CLI."""

from typing import Callable

from hyperext.commands.adjoint import get_adjoint, get_nbc
from hyperext.commands.base_command import BaseCommand, CommandResult
from hyperext.commands.classify import get_classify, get_classify_restrictions, get_restrict
from hyperext.commands.finitefield import get_ff_count
from hyperext.commands.lattice import get_invariants, get_lattice
from hyperext.commands.render import get_render
from hyperext.commands.verify import get_verify
from hyperext.state import Command, RunConfig

FACTORIES: dict[Command, Callable[[RunConfig], BaseCommand]] = {
    Command.INVARIANTS: get_invariants,
    Command.LATTICE: get_lattice,
    Command.NBC: get_nbc,
    Command.ADJOINT: get_adjoint,
    Command.CLASSIFY: get_classify,
    Command.CLASSIFY_RESTRICTIONS: get_classify_restrictions,
    Command.RESTRICT: get_restrict,
    Command.FF_COUNT: get_ff_count,
    Command.VERIFY: get_verify,
    Command.RENDER: get_render,
}


def get_command(config: RunConfig) -> BaseCommand:
    return FACTORIES[config.command](config)


__all__ = [
    'BaseCommand',
    'CommandResult',
    'FACTORIES',
    'get_command',
]
