from bayes_factor.management.base import BayesFactorCommand
from bayes_factor.pipeline import Subcommand, pipeline
from bayes_factor.serializers import ResidualRowSerializer


class Command(BayesFactorCommand):
    help = 'Recompute the published comparison tables and report residuals against them'
    subcommand = Subcommand.REPRODUCE

    def add_command_arguments(self, parser):
        parser.add_argument('--data', default = None, help = 'Calibration CSV (default: bundled comparison table)')

    def run(self, config, options):
        rows = pipeline.reproduce(options['data'])
        missed = [row for row in rows if not row['within']]
        if missed:
            self.stderr.write(self.style.WARNING(f'{len(missed)} of {len(rows)} values outside tolerance'))
        else:
            self.stderr.write(self.style.SUCCESS(f'All {len(rows)} values within tolerance'))
        return ResidualRowSerializer, rows
