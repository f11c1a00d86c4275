from bayes_factor.management.base import BayesFactorCommand
from bayes_factor.pipeline import Subcommand, pipeline
from bayes_factor.serializers import CorrectionSerializer


class Command(BayesFactorCommand):
    help = 'Move a sequential Bayes factor onto the exact scale with a calibration model'
    subcommand = Subcommand.CORRECT

    def add_command_arguments(self, parser):
        parser.add_argument(
            '--model',
            dest = 'model_path',
            default = None,
            help = 'Calibration model file (default: refit from the bundled comparison table)',
        )
        parser.add_argument('--freq', type = float, required = True, help = 'Frequency of event A')
        parser.add_argument('--value', type = float, required = True, help = 'Sequential BF10 observed at that frequency')

    def run(self, config, options):
        model = pipeline.resolve_model(config.model_path)
        row = pipeline.correct(model, options['freq'], options['value'])
        if not row['valid']:
            self.stderr.write(self.style.WARNING('Corrected Bayes factor is not positive'))
        return CorrectionSerializer, [row]
