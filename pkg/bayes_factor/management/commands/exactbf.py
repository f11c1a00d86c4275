from bayes_factor.exactbf import Alternative
from bayes_factor.management.base import BayesFactorCommand
from bayes_factor.pipeline import Subcommand, pipeline
from bayes_factor.serializers import BayesFactorResultSerializer


class Command(BayesFactorCommand):
    help = 'Exact binomial Bayes factor under a uniform prior'
    subcommand = Subcommand.EXACTBF

    def add_command_arguments(self, parser):
        parser.add_argument('--s', type = int, required = True, help = 'Number of successes')
        parser.add_argument('--n', type = int, required = True, help = 'Number of trials')
        parser.add_argument(
            '--alt',
            dest = 'alternative',
            choices = [alt.value for alt in Alternative],
            default = None,
            help = 'Alternative hypothesis (default: greater)',
        )
        parser.add_argument('--test-value', type = float, default = None, help = 'Null proportion p0 (default: 0.5)')

    def run(self, config, options):
        result = pipeline.exact(options['s'], options['n'], config.alternative, config.test_value)
        return BayesFactorResultSerializer, [result]
