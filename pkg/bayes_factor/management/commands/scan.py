from django.conf import settings

from bayes_factor.exactbf import Alternative
from bayes_factor.exceptions import ValidationError
from bayes_factor.management.base import BayesFactorCommand
from bayes_factor.pipeline import Subcommand, pipeline
from bayes_factor.serializers import ScanRowSerializer


def parse_sizes(value):
    try:
        return [int(item) for item in value.split(',') if item.strip()]
    except ValueError:
        raise ValidationError(f'sample sizes must be comma separated integers: {value!r}')


class Command(BayesFactorCommand):
    help = 'Exact Bayes factor across sample sizes at a fixed success proportion'
    subcommand = Subcommand.SCAN

    def add_command_arguments(self, parser):
        defaults = settings.BAYES_FACTOR
        parser.add_argument(
            '--proportion',
            type = float,
            default = None,
            help = f"Success proportion (default: {defaults['SCAN_PROPORTION']})",
        )
        parser.add_argument(
            '--n',
            dest = 'sizes',
            default = None,
            help = f"Comma separated sample sizes (default: {','.join(map(str, defaults['SCAN_SIZES']))})",
        )
        parser.add_argument(
            '--alt',
            dest = 'alternative',
            choices = [alt.value for alt in Alternative],
            default = None,
            help = 'Alternative hypothesis (default: greater)',
        )
        parser.add_argument('--test-value', type = float, default = None, help = 'Null proportion p0 (default: 0.5)')

    def run(self, config, options):
        sizes = parse_sizes(options['sizes']) if options['sizes'] else None
        rows = pipeline.run_scan(options['proportion'], sizes, config.alternative, config.test_value)
        return ScanRowSerializer, rows
