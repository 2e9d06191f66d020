from hyperext.commands.base_command import BaseCommand, CommandResult
from hyperext.render import render_svg
from hyperext.state import RunConfig


class RenderCommand(BaseCommand):
    def __init__(self, config: RunConfig):
        super().__init__("render", config)

    def execute(self) -> CommandResult:
        return CommandResult(render_svg(self.load(), self.config.window))


def get_render(config: RunConfig) -> RenderCommand:
    return RenderCommand(config)
