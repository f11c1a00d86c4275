from bayes_factor.ingest import parse_value_file
from bayes_factor.management.base import BayesFactorCommand
from bayes_factor.pipeline import Subcommand, pipeline
from bayes_factor.serializers import TTestRowSerializer


class Command(BayesFactorCommand):
    help = "Levene's test with pooled and Welch independent-samples t-tests"
    subcommand = Subcommand.TTEST

    def add_command_arguments(self, parser):
        parser.add_argument('--a', required = True, help = 'File with the first group of values')
        parser.add_argument('--b', required = True, help = 'File with the second group of values')

    def run(self, config, options):
        rows = pipeline.ttest(parse_value_file(options['a']), parse_value_file(options['b']))
        if rows[0]['levene_f'] is None:
            self.stderr.write(self.style.WARNING("Levene's test skipped: degenerate deviations"))
        return TTestRowSerializer, rows
