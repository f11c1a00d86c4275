from bayes_factor.ingest import read_calibration_csv
from bayes_factor.management.base import BayesFactorCommand
from bayes_factor.pipeline import BayesFactorPipeline, Subcommand, parse_segments, pipeline
from bayes_factor.serializers import SegmentSummarySerializer


class Command(BayesFactorCommand):
    help = 'Fit the piecewise cubic calibration and write the model file'
    subcommand = Subcommand.CALIBRATE

    def add_command_arguments(self, parser):
        parser.add_argument(
            '--data',
            default = BayesFactorPipeline.REFERENCE_DATA,
            help = 'CSV with columns frequency,source_bf,reference_bf (default: bundled comparison table)',
        )
        parser.add_argument('--segments', default = None, help = 'Segment bounds as A:B,B:C (default: 0.15:0.45,0.45:0.55)')
        parser.add_argument('--exclude-below', type = float, default = None, help = 'Drop points below this frequency (default: 0.15)')
        parser.add_argument(
            '--out',
            default = BayesFactorPipeline.MODEL_PATH,
            help = f'Model file to write (default: {BayesFactorPipeline.MODEL_PATH})',
        )

    def run(self, config, options):
        segments = parse_segments(options['segments']) if options['segments'] else None
        model = pipeline.calibrate(read_calibration_csv(options['data']), segments, options['exclude_below'])
        path = pipeline.save(model, options['out'])

        self.stderr.write(self.style.SUCCESS(f'Calibration model written to {path}'))
        for segment in model.segments:
            if min(segment.source.r2, segment.reference.r2) <= 0.99:
                self.stderr.write(self.style.WARNING(f'Segment {segment.domain}: R^2 not above 0.99'))
        return SegmentSummarySerializer, pipeline.segment_summary(model)
