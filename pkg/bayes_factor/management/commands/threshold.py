from bayes_factor.management.base import BayesFactorCommand
from bayes_factor.pipeline import Subcommand, pipeline
from bayes_factor.serializers import ThresholdSolutionSerializer


class Command(BayesFactorCommand):
    help = 'Solve the unbiased-interval threshold k for a sample size'
    subcommand = Subcommand.THRESHOLD

    def add_command_arguments(self, parser):
        parser.add_argument('--n', type = int, required = True, help = 'Sample size')
        parser.add_argument('--crit', type = float, default = None, help = 'Chi-square critical value (default: 3.84)')

    def run(self, config, options):
        return ThresholdSolutionSerializer, [pipeline.threshold(options['n'], options['crit'])]
