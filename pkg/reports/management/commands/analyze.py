from pathlib import Path

from equivtest.limits import BeLimits
from reports.builders import build_analysis_report, render_json
from reports.commands import ToolkitCommand
from reports.serializers import AnalysisReportSerializer, AnalyzeOptionsSerializer


class Command(ToolkitCommand):
    help = 'Run TOST and the interval procedures on a subject_id,arm,value PK CSV file'
    options_serializer = AnalyzeOptionsSerializer
    option_names = ('input', 'alpha', 'limits', 'ci_method', 'output')

    def add_arguments(self, parser):
        parser.add_argument('--input', help='PK CSV with columns subject_id,arm,value')
        parser.add_argument('--alpha', help='Size of each one-sided test (default: 0.05)')
        parser.add_argument('--limits', help='Ratio-scale limits LO,HI (default: 0.8,1.25)')
        parser.add_argument(
            '--ci-method',
            help='Reported interval: equal, minmax or unequal:A1,A2 (default: equal)',
        )
        parser.add_argument('--output', help='Write the JSON report here instead of stdout')

    def defaults(self):
        return {**super().defaults(), 'ci_method': 'equal'}

    def run(self, options):
        data = Path(options['input']).read_bytes()
        limits = BeLimits.from_ratio(*options['limits'])
        report = build_analysis_report(data, options['alpha'], limits, options['ci_method'])
        text = render_json(AnalysisReportSerializer(report).data)

        if options['output']:
            Path(options['output']).write_text(text, encoding='utf-8')
            self.stdout.write(self.style.SUCCESS(f"Report written to {options['output']}: {report.decision}"))
        else:
            self.stdout.write(text, ending='')
