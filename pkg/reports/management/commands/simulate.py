import logging

import bequiv
from bequiv.conf import toolkit_setting
from bequiv.exceptions import ConfigurationError
from equivtest.limits import BeLimits
from reports.builders import render_json
from reports.commands import ToolkitCommand
from reports.serializers import SimulateOptionsSerializer, SimulationReportSerializer
from simharness.engine import Procedure, Scenario, estimate_coverage, estimate_rejection_rate

logger = logging.getLogger(__name__)

COVERAGE_METHODS = {
    Procedure.CI_EQUAL: 'equal',
    Procedure.CI_MINMAX: 'minmax',
    Procedure.CI_UNEQUAL: 'unequal',
}


def coverage_method(spec):
    """Coverage identifier matching an interval procedure."""
    if spec.kind not in COVERAGE_METHODS:
        raise ConfigurationError(
            f"coverage mode needs an interval procedure (ci_equal, ci_minmax, ci_unequal), got '{spec.label}'"
        )
    method = COVERAGE_METHODS[spec.kind]
    if spec.kind == Procedure.CI_UNEQUAL:
        return f"{method}:{spec.alpha1!r},{spec.alpha2!r}"
    return method


class Command(ToolkitCommand):
    help = 'Monte Carlo size, power or coverage of a bioequivalence procedure'
    options_serializer = SimulateOptionsSerializer
    option_names = (
        'procedure', 'mu_t', 'mu_r', 'sigma', 'n_t', 'n_r', 'alpha', 'limits',
        'reps', 'seed', 'mode', 'workers',
    )

    def add_arguments(self, parser):
        parser.add_argument(
            '--procedure',
            help='tost, tost_lower, tost_upper, ci_equal, ci_minmax, ci_unequal:A1,A2 or ump_known_sigma',
        )
        parser.add_argument('--mu-t', help='Log-scale mean of the test arm')
        parser.add_argument('--mu-r', help='Log-scale mean of the reference arm (default: 0)')
        parser.add_argument('--sigma', help='Common log-scale standard deviation')
        parser.add_argument('--n-t', help='Subjects in the test arm')
        parser.add_argument('--n-r', help='Subjects in the reference arm')
        parser.add_argument('--alpha', help='Size of each one-sided test (default: 0.05)')
        parser.add_argument('--limits', help='Ratio-scale limits LO,HI (default: 0.8,1.25)')
        parser.add_argument('--reps', help='Replications (default: EQUIVALENCE SIMULATION REPLICATIONS)')
        parser.add_argument('--seed', help='Master seed (default: EQUIVALENCE SIMULATION SEED)')
        parser.add_argument('--mode', help='size, power or coverage (default: power)')
        parser.add_argument('--workers', help='Parallel workers; results do not depend on it')

    def defaults(self):
        simulation = toolkit_setting('SIMULATION')
        return {
            **super().defaults(),
            'mu_r': 0.0,
            'reps': simulation['REPLICATIONS'],
            'seed': simulation['SEED'],
            'mode': 'power',
            'workers': simulation['WORKERS'],
        }

    def run(self, options):
        limits = BeLimits.from_ratio(*options['limits'])
        scenario = Scenario(
            mu_t=options['mu_t'],
            mu_r=options['mu_r'],
            sigma=options['sigma'],
            n_t=options['n_t'],
            n_r=options['n_r'],
            alpha=options['alpha'],
            limits=limits,
        )
        spec = options['procedure']
        block_size = toolkit_setting('SIMULATION')['BLOCK_SIZE']
        run_args = (scenario, options['reps'], options['seed'])
        run_kwargs = {'workers': options['workers'], 'block_size': block_size}

        if options['mode'] == 'coverage':
            report = estimate_coverage(coverage_method(spec), *run_args, **run_kwargs)
        else:
            if options['mode'] == 'size' and limits.contains(scenario.mu_diff):
                logger.warning(
                    f"mu_diff={scenario.mu_diff:.6g} lies inside the limits; the rate is power, not size"
                )
            report = estimate_rejection_rate(spec, *run_args, **run_kwargs)

        document = {
            'version': bequiv.__version__,
            'mode': options['mode'],
            'scenario': scenario,
            'report': report,
        }
        self.stdout.write(render_json(SimulationReportSerializer(document).data), ending='')
