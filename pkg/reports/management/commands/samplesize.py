import math

import bequiv
from bequiv.conf import toolkit_setting
from equivtest.limits import BeLimits
from power.exact import sample_size
from reports.builders import render_json
from reports.commands import ToolkitCommand
from reports.serializers import SampleSizeOptionsSerializer, SampleSizeReportSerializer


class Command(ToolkitCommand):
    help = 'Smallest parallel design whose exact TOST power reaches a target'
    options_serializer = SampleSizeOptionsSerializer
    option_names = ('target_power', 'gmr', 'sigma', 'alpha', 'limits', 'ratio')

    def add_arguments(self, parser):
        parser.add_argument('--target-power', help='Required power, 0 < P < 1')
        parser.add_argument('--gmr', help='Assumed geometric mean ratio T/R')
        parser.add_argument('--sigma', help='Assumed log-scale standard deviation')
        parser.add_argument('--alpha', help='Size of each one-sided test (default: 0.05)')
        parser.add_argument('--limits', help='Ratio-scale limits LO,HI (default: 0.8,1.25)')
        parser.add_argument('--ratio', help='Allocation n_T:n_R (default: 1)')

    def defaults(self):
        return {**super().defaults(), 'ratio': 1.0}

    def run(self, options):
        limits = BeLimits.from_ratio(*options['limits'])
        mu_diff = math.log(options['gmr'])
        result = sample_size(
            options['target_power'],
            mu_diff,
            options['sigma'],
            options['alpha'],
            limits,
            ratio=options['ratio'],
            cap=toolkit_setting('SAMPLE_SIZE_CAP'),
        )
        report = {
            'version': bequiv.__version__,
            'target_power': options['target_power'],
            'gmr': options['gmr'],
            'mu_diff': mu_diff,
            'sigma': options['sigma'],
            'alpha': options['alpha'],
            'ratio': options['ratio'],
            'limits': limits,
            'n_t': result.n_t,
            'n_r': result.n_r,
            'achieved_power': result.power,
        }
        self.stdout.write(render_json(SampleSizeReportSerializer(report).data), ending='')
