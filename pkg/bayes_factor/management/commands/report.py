from bayes_factor.exactbf import Alternative
from bayes_factor.management.base import BayesFactorCommand
from bayes_factor.pipeline import Subcommand, pipeline
from bayes_factor.serializers import ReportRowSerializer


class Command(BayesFactorCommand):
    help = 'Sequential, exact and corrected Bayes factors side by side'
    subcommand = Subcommand.REPORT

    def add_command_arguments(self, parser):
        parser.add_argument('--input', dest = 'inputs', action = 'append', default = None, help = 'Sample file; repeatable')
        parser.add_argument('--counts', action = 'append', default = None, help = 'Successes and trials as S/N; repeatable')
        parser.add_argument(
            '--model',
            dest = 'model_path',
            default = None,
            help = 'Calibration model file (default: refit from the bundled comparison table)',
        )
        parser.add_argument('--k', type = float, default = None, help = 'Unbiased-interval threshold')
        parser.add_argument(
            '--no-canonical',
            dest = 'canonicalize',
            action = 'store_false',
            default = None,
            help = 'Keep the file order instead of placing all ones first',
        )
        parser.add_argument(
            '--alt',
            dest = 'alternative',
            choices = [alt.value for alt in Alternative],
            default = None,
            help = 'Alternative hypothesis of the exact column (default: greater)',
        )
        parser.add_argument('--test-value', type = float, default = None, help = 'Null proportion p0 (default: 0.5)')

    def run(self, config, options):
        return ReportRowSerializer, pipeline.run_report(config)
