from bayes_factor.ingest import parse_sample_file
from bayes_factor.management.base import BayesFactorCommand
from bayes_factor.pipeline import Subcommand, pipeline
from bayes_factor.serializers import BayesFactorResultSerializer, WorksheetRowSerializer


class Command(BayesFactorCommand):
    help = 'Sequential (worksheet) Bayes factor of one or more binary sample files'
    subcommand = Subcommand.SEQBF

    def add_command_arguments(self, parser):
        parser.add_argument(
            '--input',
            dest = 'inputs',
            action = 'append',
            required = True,
            help = 'Sample file of 0/1 tokens; repeat for several samples',
        )
        parser.add_argument(
            '--k',
            type = float,
            default = None,
            help = 'Unbiased-interval threshold (default: 0.07 at n = 200, solved otherwise)',
        )
        parser.add_argument(
            '--no-canonical',
            dest = 'canonicalize',
            action = 'store_false',
            default = None,
            help = 'Keep the file order instead of placing all ones first',
        )
        parser.add_argument(
            '--worksheet',
            action = 'store_true',
            help = 'Print the per-observation worksheet rows instead of the Bayes factor',
        )

    def run(self, config, options):
        samples = [parse_sample_file(path) for path in config.inputs]

        if options['worksheet']:
            rows = []
            for sample in samples:
                result = pipeline.sequential(sample, config.k, config.canonicalize)
                self.stderr.write(f'n={result.n} sum(y)={result.y_sum} BF10={result.bf10:.7g}')
                rows += pipeline.worksheet(sample, config.k, config.canonicalize)
            return WorksheetRowSerializer, rows

        return BayesFactorResultSerializer, [
            pipeline.sequential(sample, config.k, config.canonicalize) for sample in samples
        ]
