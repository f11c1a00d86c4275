from bayes_factor.ingest import read_calibration_csv
from bayes_factor.management.base import BayesFactorCommand
from bayes_factor.pipeline import Subcommand, pipeline
from bayes_factor.serializers import FitDataRowSerializer


class Command(BayesFactorCommand):
    help = 'Fitted calibration curves on a grid plus the scatter points, per segment'
    subcommand = Subcommand.FITDATA

    def add_command_arguments(self, parser):
        parser.add_argument(
            '--model',
            dest = 'model_path',
            default = None,
            help = 'Calibration model file (default: refit from the bundled comparison table)',
        )
        parser.add_argument(
            '--data',
            default = None,
            help = 'Calibration CSV whose points are listed with the curves (default: the bundled comparison table)',
        )
        parser.add_argument('--step', type = float, default = None, help = 'Grid step (default: 0.01)')
        parser.add_argument(
            '--overall',
            action = 'store_true',
            help = 'Also emit one cubic per column fitted over the whole scatter range',
        )

    def run(self, config, options):
        model = pipeline.resolve_model(config.model_path)
        points = read_calibration_csv(options['data']) if options['data'] else None
        return FitDataRowSerializer, pipeline.emit_fit_data(model, options['step'], points, options['overall'])
