import io
import math

from equivtest.limits import BeLimits
from power.exact import PowerParams, exact_power, power_curve, write_power_curve
from reports.builders import format_power
from reports.commands import ToolkitCommand
from reports.serializers import PowerOptionsSerializer


class Command(ToolkitCommand):
    help = 'Exact TOST power for a parallel design, or a mu_diff,power curve'
    options_serializer = PowerOptionsSerializer
    option_names = ('gmr', 'sigma', 'n_t', 'n_r', 'alpha', 'limits', 'curve', 'workers')

    def add_arguments(self, parser):
        parser.add_argument('--gmr', help='True geometric mean ratio T/R')
        parser.add_argument('--sigma', help='Log-scale standard deviation')
        parser.add_argument('--n-t', help='Subjects in the test arm')
        parser.add_argument('--n-r', help='Subjects in the reference arm')
        parser.add_argument('--alpha', help='Size of each one-sided test (default: 0.05)')
        parser.add_argument('--limits', help='Ratio-scale limits LO,HI (default: 0.8,1.25)')
        parser.add_argument('--curve', help='Comma-separated GMR values; prints a mu_diff,power CSV')
        parser.add_argument('--workers', help='Parallel workers for --curve (default: 1)')

    def defaults(self):
        return {**super().defaults(), 'workers': 1}

    def run(self, options):
        limits = BeLimits.from_ratio(*options['limits'])
        grid = options['curve']
        gmr = options['gmr'] if options['gmr'] is not None else grid[0]
        params = PowerParams(
            mu_diff=math.log(gmr),
            n_t=options['n_t'],
            n_r=options['n_r'],
            sigma=options['sigma'],
            alpha=options['alpha'],
            limits=limits,
        )
        if grid is None:
            self.stdout.write(format_power(exact_power(params)))
            return

        rows = power_curve(params, [math.log(g) for g in grid], workers=options['workers'])
        buffer = io.StringIO()
        write_power_curve(rows, buffer)
        self.stdout.write(buffer.getvalue(), ending='')
