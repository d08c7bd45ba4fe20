import logging
import os
import sys
from typing import Optional

import rich
import rich_click as click
from rich.console import Console
from rich.logging import RichHandler
from rich.padding import Padding
from rich.style import Style
from rich.syntax import Syntax
from rich.table import Table
from rich.text import Text

from graded_kernel.config import GeneralConfig, KernelConfig
from graded_kernel.errors import TaskFileError
from graded_kernel.grading import Window
from graded_kernel.helpers import TEMPLATE_PATH, get_version, set_thread_count
from graded_kernel.tasks import REGISTRY, Overrides, TaskParameters, load_document, run_document


class RichLogo:

    STYLE = Style(bold=True, color="white")

    def __rich_console__(self, console, options):
        logo_path = os.path.join(TEMPLATE_PATH, "logo.txt")
        with open(logo_path, mode="r") as file:
            logo_string: str = file.read()
            text = Text(logo_string, style=self.STYLE)
            pad = Padding(text, (1, 1))
            yield pad


class RichHelp:

    def __rich_console__(self, console, options):
        yield "Graded Kernel Command Line Interface.\n"
        yield Text((
            "Exact computations with graded rings, graded modules, derived quotients, gradedwise "
            "completions and coactions. Rings, modules and the tasks to run on them are declared "
            "in a YAML task file, which is executed with the 'run' command:"
        ))
        yield Padding(Syntax((
            "gradk run tasks.yaml --window 0..8"
        ), lexer="bash", theme="monokai", line_numbers=False), (1, 5))
        yield Text((
            "The flags --window, --depth and --precision override the values of the task file and "
            "of the user config. A machine readable report with one JSON record per task is "
            "written with --format machine. The exit code is 0 when every task passes, 1 when a "
            "check fails or a task errors and 2 when the task file does not parse or validate."
        ))
        yield Padding(Syntax((
            "gradk run tasks.yaml --format machine --output report.jsonl"
        ), lexer="bash", theme="monokai", line_numbers=False), (1, 5))
        yield Text("The available task keywords are listed by 'gradk ops'.\n")


class RichTaskList:

    def __init__(self, registry: dict):
        self.registry = registry

    def __rich_console__(self, console, options):
        table = Table(
            show_header=True,
            header_style="bold magenta",
            expand=True,
            title="Available Task Keywords",
        )
        table.add_column("Keyword", style="bold", no_wrap=True)
        table.add_column("Operations", ratio=2)
        table.add_column("Parameters", ratio=2)

        shared = set(TaskParameters.model_fields)
        for keyword in sorted(self.registry):
            definition = self.registry[keyword]
            parameters = [name for name in definition.params.model_fields if name not in shared]
            table.add_row(keyword, ", ".join(definition.operations), ", ".join(parameters))

        yield table


class RichConfig:

    def __init__(self, path: str, config: GeneralConfig):
        self.path = path
        self.config = config

    def __rich_console__(self, console, options):
        table = Table(show_header=True, header_style="bold magenta", title=self.path)
        table.add_column("Key", style="bold", no_wrap=True)
        table.add_column("Value")
        for key, value in self.config.model_dump().items():
            table.add_row(key, str(value))

        yield table


class WindowType(click.ParamType):
    """
    A click parameter type for degree weight windows of the form ``LO..HI`` with rational
    bounds, e.g. ``0..8`` or ``-1/2..3``. The validated text is passed on unchanged.
    """

    name = "window"

    def convert(self, value, param, ctx):
        if value is None:
            return None
        try:
            Window.parse(value)
        except (ValueError, ZeroDivisionError) as exc:
            self.fail(f"'{value}' is not a window of the form LO..HI: {exc}", param, ctx)

        return str(value)


class GradK(click.RichGroup):

    def __init__(self, *args, **kwargs):

        super().__init__(*args, **kwargs)

        self.rich_logo = RichLogo()
        self.rich_help = RichHelp()

        # This dict will store the global options that are passed to the gradk base command.
        self.options: dict[str, any] = {}

        # ~ registering commands
        self.add_command(self.run_command)
        self.add_command(self.ops_command)

        self.config_group.add_command(self.show_config_command)
        self.add_command(self.config_group)

        # ~ user config
        # Only the folder location is resolved here. The file itself is created and loaded by
        # the commands that need it, so that tests can swap in a temporary folder.
        self.kernel_config: KernelConfig = KernelConfig()

    def format_help(self, ctx: click.Context, formatter: click.HelpFormatter) -> None:
        # Before printing the help text we want to print the logo
        rich.print(self.rich_logo)

        rich.print(self.rich_help)

        self.format_usage(ctx, formatter)
        self.format_options(ctx, formatter)
        self.format_commands(ctx, formatter)
        self.format_epilog(ctx, formatter)

    def load_general_config(self) -> GeneralConfig:
        general_config = self.kernel_config.load_general_config()
        set_thread_count(general_config.threads)
        return general_config

    # == "config" commands ==

    @click.group("config", short_help="Commands to interact with the user configuration.")
    @click.pass_obj
    def config_group(self):
        pass

    @click.command("show", short_help="Show the defaults of the user configuration.")
    @click.pass_obj
    def show_config_command(self):
        """
        Prints the validated content of the general_config.yaml file in the user config folder.
        """
        general_config = self.load_general_config()
        rich.print(RichConfig(self.kernel_config.general_config_path, general_config))

    # == "ops" command ==

    @click.command("ops", short_help="List the task keywords of task files.")
    @click.pass_obj
    def ops_command(self):
        """
        Lists every keyword that may be used as the "op" of a task, with the kernel operations it
        reaches and its specific parameters.
        """
        rich.print(RichTaskList(REGISTRY))

    # == "run" command ==

    @click.command("run", short_help="Run all tasks of a task file and print the report.")
    @click.argument("task_file", type=click.Path(exists=True, dir_okay=False))
    @click.option("--window", "-w", type=WindowType(), default=None,
                  help="Degree weight window LO..HI for all tasks.")
    @click.option("--depth", "-d", type=click.IntRange(min=0), default=None,
                  help="Number of stages of towers and telescopes.")
    @click.option("--precision", "-p", type=click.IntRange(min=0), default=None,
                  help="Precision n of completions (the stage M/I^n).")
    @click.option("--strict-undetermined", is_flag=True, default=False,
                  help="Treat UNDETERMINED results as failures.")
    @click.option("--format", "-f", "format_", type=click.Choice(["human", "machine"]), default=None,
                  help="Report format, human readable table or one JSON record per line.")
    @click.option("--output", "-o", type=click.Path(dir_okay=False), default=None,
                  help="Write the report to this file instead of stdout.")
    @click.pass_obj
    def run_command(self,
                    task_file: str,
                    window: Optional[str],
                    depth: Optional[int],
                    precision: Optional[int],
                    strict_undetermined: bool,
                    format_: Optional[str],
                    output: Optional[str],
                    ):
        """
        Runs the tasks of TASK_FILE in order and prints the report.
        """
        general_config = self.load_general_config()
        overrides = Overrides(window=window, depth=depth, precision=precision)
        strict = strict_undetermined or general_config.strict_undetermined

        # 1) loading the task file
        # Parse and validation errors of the file itself abort with exit code 2 before any
        # task is executed.
        try:
            document = load_document(task_file, general_config, overrides)
            click.echo(f"✅ loaded task file: {task_file} ({len(document.spec.tasks)} tasks)", err=True)
            report = run_document(document, general_config, overrides, strict)
        except TaskFileError as exc:
            click.echo(f"⚠️ {task_file}: {exc.diagnostic()}", err=True)
            sys.exit(exc.exit_code)

        # 2) the report
        text = report.render(format_ or general_config.format, general_config.console_width)
        if output is not None:
            with open(output, mode="w") as file:
                file.write(text)
            click.echo(f"✅ wrote report @ {output}", err=True)
        else:
            click.echo(text, nl=False)

        counts = ", ".join(f"{count} {status.lower()}" for status, count in report.counts.items() if count)
        marker = "✅" if report.passed else "⚠️"
        click.echo(f"{marker} {counts or 'no tasks'}", err=True)
        sys.exit(report.exit_code)


@click.group(cls=GradK, invoke_without_command=True)
@click.option("--verbose", is_flag=True, help="Log the steps of the computations to stderr.")
@click.option("--version", "-v", is_flag=True, help="Show the version.")
@click.pass_context
def gradk(ctx: click.Context,
          verbose: bool,
          version: bool,
          ) -> None:

    # For the --version flag we literally only print the version string and exit, much like the
    # help flag works.
    if version:
        version_string: str = get_version()
        click.echo(version_string)
        sys.exit(0)

    if verbose:
        logging.basicConfig(
            level=logging.DEBUG,
            format="%(message)s",
            handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
            force=True,
        )

    ctx.obj = ctx.command
    options = {
        "verbose":  verbose,
        "version":  version,
    }
    ctx.command.options.update(options)

    if ctx.invoked_subcommand is None:
        click.echo(ctx.get_help())


if __name__ == "__main__":
    gradk()
