import sys

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from bayes_factor import __version__
from bayes_factor.exceptions import ComputationError, ValidationError
from bayes_factor.pipeline import RunConfig
from bayes_factor.rendering import OutputFormat, render_serialized


class BayesFactorCommand(BaseCommand):
    """
    Shared plumbing of the bayes_factor commands: the --format flag, the
    version banner at --verbosity 2, rendering of the result rows to stdout
    and the mapping of domain errors onto exit codes (1 invalid input,
    2 computation failure).
    """

    subcommand = None

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)

        # bad flags are invalid input, exit 1 like every other validation error
        def error(message):
            if not parser.called_from_command_line:
                raise CommandError(f'Error: {message}', returncode = 1)
            parser.print_usage(sys.stderr)
            parser.exit(1, f'{parser.prog}: error: {message}\n')

        parser.error = error
        return parser

    def add_arguments(self, parser):
        parser.add_argument(
            '--format',
            dest = 'output_format',
            choices = [fmt.value for fmt in OutputFormat],
            default = None,
            help = f"Output format (default: {settings.BAYES_FACTOR['OUTPUT_FORMAT']})",
        )
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def run(self, config: RunConfig, options):
        """Return (serializer class, instances) for the rows to print"""
        raise NotImplementedError

    def handle(self, *args, **options):
        if options['verbosity'] >= 2:
            self.stderr.write(self.style.WARNING(f'bayes_factor {__version__}: {self.subcommand}'))

        try:
            config = RunConfig.from_options(self.subcommand, **options)
            serializer_class, instances = self.run(config, options)
            output = render_serialized(
                serializer_class,
                instances,
                config.output_format,
                settings.BAYES_FACTOR['SIGNIFICANT_DIGITS'],
            )
        except ValidationError as e:
            raise CommandError(str(e), returncode = 1)
        except ComputationError as e:
            raise CommandError(str(e), returncode = 2)

        self.stdout.write(output, ending = '')
