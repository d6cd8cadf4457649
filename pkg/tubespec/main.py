import sys
import uuid
from typing import Optional, Sequence

import typer

from tubespec.api import lattice, oracle, scans, spectrum
from tubespec.core.config.app_config import set_config
from tubespec.core.error_handlers import EXIT_OK, handle_command_error
from tubespec.core.logging import error_context

app = typer.Typer(
    name="tubespec",
    help="Spectral lab for the Friedrichs Laplacian on singular hyperbolic tubes",
    no_args_is_help=True,
    add_completion=False,
    pretty_exceptions_enable=False,
)

# register commands
spectrum.register(app)
lattice.register(app)
scans.register(app)
oracle.register(app)


def _subcommand(args: Sequence[str]) -> Optional[str]:
    return next((arg for arg in args if not arg.startswith("-")), None)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command and return its exit code: 0 ok, 1 domain error, 2 usage error."""
    args = list(sys.argv[1:] if argv is None else argv)
    with error_context(run_id=uuid.uuid4().hex[:12], command=_subcommand(args)):
        try:
            result = typer.main.get_command(app).main(
                args=args, prog_name="tubespec", standalone_mode=False
            )
        except Exception as e:
            return handle_command_error(e)
        finally:
            # each run reads the environment afresh
            set_config(None)
    return result if isinstance(result, int) else EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
