"""
Shared plumbing for the toolkit's management commands.

Exit codes: 0 success, 1 numerical failure, 2 usage or validation error,
3 infeasible request.
"""
import logging

from django.core.management.base import BaseCommand, CommandError

from bequiv.conf import toolkit_setting
from bequiv.exceptions import InfeasibleError, NumericalError

logger = logging.getLogger(__name__)

EXIT_NUMERICAL = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3


def first_error(errors):
    """Flatten DRF serializer errors into one readable line."""
    field, messages = next(iter(errors.items()))
    if isinstance(messages, dict):
        return first_error(messages)
    message = messages[0] if isinstance(messages, list) else messages
    if field == 'non_field_errors':
        return str(message)
    return f"{field}: {message}"


class ToolkitCommand(BaseCommand):
    """
    Base class for the analysis commands.

    Subclasses declare ``options_serializer`` and implement ``run(options)``
    with the validated options. Numeric flags are parsed by the serializer,
    not argparse, so every bad value exits with code 2.
    """
    options_serializer = None
    option_names = ()

    def defaults(self):
        return {
            'alpha': toolkit_setting('DEFAULT_ALPHA'),
            'limits': ','.join(repr(float(x)) for x in toolkit_setting('DEFAULT_LIMITS')),
        }

    def validate(self, options):
        data = self.defaults()
        data.update({name: options[name] for name in self.option_names if options.get(name) is not None})
        serializer = self.options_serializer(data=data)
        if not serializer.is_valid():
            message = first_error(serializer.errors)
            logger.error(f"Invalid options for {self.__module__.rsplit('.', 1)[-1]}: {message}")
            raise CommandError(message, returncode=EXIT_USAGE)
        return serializer.validated_data

    def handle(self, *args, **options):
        validated = self.validate(options)
        try:
            self.run(validated)
        except InfeasibleError as exc:
            logger.error(f"Infeasible request: {exc}")
            raise CommandError(f"infeasible: {exc}", returncode=EXIT_INFEASIBLE)
        except NumericalError as exc:
            logger.error(f"Numerical failure: {exc}")
            raise CommandError(f"numerical error: {exc}", returncode=EXIT_NUMERICAL)
        except (ValueError, OSError) as exc:
            # DomainError, ParseError and ConfigurationError are ValueErrors.
            logger.error(f"Rejected input: {exc}")
            raise CommandError(str(exc), returncode=EXIT_USAGE)

    def run(self, options):
        raise NotImplementedError
