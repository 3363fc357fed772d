"""
Command-line front end.

Every subcommand is a Django management command deriving from ``MitlCommand``,
so ``python manage.py sat ...`` and ``python -m mitl.cli sat ...`` behave the
same. Exit codes: 0 for success or a true verdict, 1 for a false verdict,
2 for usage and input errors.
"""
import json
import logging
import os
import sys
from typing import Iterable, List, Optional, Sequence

from django.core.management.base import BaseCommand, CommandError

from mitl.analysis import SearchBounds
from mitl.exceptions import MitlError
from mitl.forms import BoundsForm, form_errors

logger = logging.getLogger(__name__)

COMMANDS = (
    'parse', 'normalize', 'classify', 'eval', 'compile', 'extract',
    'run', 'sat', 'equiv', 'bench', 'size-report',
)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2


def alphabet_arg(text: str) -> tuple:
    """``a,b,c`` to a sorted tuple of letters."""
    letters = tuple(sorted({part.strip() for part in text.split(',') if part.strip()}))
    if not letters:
        raise ValueError("empty alphabet")
    return letters


class FalseVerdict(CommandError):
    """Raised after the output is written when the answer is negative."""

    def __init__(self, message: str):
        super().__init__(message, returncode=EXIT_FALSE)


class MitlCommand(BaseCommand):
    """
    Base class of the toolkit commands.

    Adds the global ``--alphabet``, ``--bounds`` and ``--format`` options and
    turns toolkit errors into exit code 2. Subclasses implement
    ``add_command_arguments`` and ``run_command``.
    """
    requires_system_checks = []

    def add_arguments(self, parser):
        parser.add_argument(
            '--alphabet',
            type=alphabet_arg,
            help='Comma-separated event letters, e.g. a,b,c',
        )
        parser.add_argument(
            '--bounds',
            help='Witness search bounds N,g,Tmax: word length, grid denominator, largest stamp',
        )
        parser.add_argument(
            '--format',
            choices=('text', 'json'),
            default='text',
            help='Output format',
        )
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def handle(self, *args, **options):
        self.options = options
        try:
            self.run_command(**options)
        except CommandError:
            raise
        except MitlError as exc:
            logger.debug("Command %s failed", type(self).__module__, exc_info=True)
            raise CommandError(str(exc), returncode=EXIT_USAGE) from exc

    def run_command(self, **options):
        raise NotImplementedError('subclasses of MitlCommand must provide a run_command() method')

    # Options

    @property
    def json_mode(self) -> bool:
        return self.options.get('format') == 'json'

    @property
    def alphabet(self) -> Optional[tuple]:
        return self.options.get('alphabet')

    def bounds(self, alphabet: Iterable[str] = ()) -> Optional[SearchBounds]:
        """Parsed ``--bounds``; None when the option is absent."""
        text = self.options.get('bounds')
        if not text:
            return None
        form = BoundsForm.from_text(text)
        if not form.is_valid():
            raise CommandError(f"Invalid --bounds {text!r}: {form_errors(form)}", returncode=EXIT_USAGE)
        return form.bounds(alphabet)

    # Output

    def emit(self, data: dict, lines: Sequence[str]):
        """Write ``data`` as JSON in json mode, else the text ``lines``."""
        if self.json_mode:
            self.stdout.write(json.dumps(data, indent=2))
        else:
            for line in lines:
                self.stdout.write(line)

    def verdict(self, value: bool, message: str):
        """Exit 1 for a false verdict; the output has already been written."""
        if not value:
            raise FalseVerdict(message)


def command_name(name: str) -> str:
    return name.replace('-', '_')


def usage() -> str:
    return 'usage: mitl <command> [options]\ncommands: ' + ', '.join(COMMANDS)


def dispatch(argv: Sequence[str]) -> int:
    """
    Run one command line, e.g. ``['sat', '--formula', 'a & !a']``.

    Returns:
        The exit code
    """
    from django.core.management import load_command_class

    argv = list(argv)
    if not argv or argv[0] in ('-h', '--help'):
        sys.stdout.write(usage() + '\n')
        return EXIT_OK if argv else EXIT_USAGE
    name = argv[0]
    if name not in COMMANDS and command_name(name) not in map(command_name, COMMANDS):
        sys.stderr.write(f"Unknown command {name!r}\n{usage()}\n")
        return EXIT_USAGE

    command = load_command_class('mitl', command_name(name))
    try:
        command.run_from_argv(['mitl', command_name(name)] + argv[1:])
    except SystemExit as exc:
        if exc.code is None:
            return EXIT_OK
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'mitl_toolkit.settings')
    import django
    django.setup()
    return dispatch(sys.argv[1:] if argv is None else argv)


if __name__ == '__main__':
    sys.exit(main())
