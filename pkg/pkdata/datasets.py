"""
PK datasets: raw positive observations tagged by treatment arm.
"""
import csv
import io
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from django.db import models

from bequiv.exceptions import ParseError

logger = logging.getLogger(__name__)

REQUIRED_COLUMNS = ('subject_id', 'arm', 'value')


class Arm(models.TextChoices):
    TEST = 'T', 'Test'
    REFERENCE = 'R', 'Reference'


@dataclass(frozen=True)
class PkRecord:
    subject_id: str
    arm: Arm
    value: float


@dataclass(frozen=True)
class PkDataset:
    """
    Raw PK observations in original units.

    Attributes:
        records: tuple of PkRecord; every value is strictly positive.
    """
    records: tuple

    def values(self, arm):
        """Original-scale values of one arm, in record order."""
        return np.array([r.value for r in self.records if r.arm == arm], dtype=float)

    def log_values(self, arm):
        """Natural-log values of one arm."""
        return np.log(self.values(arm))

    def count(self, arm):
        return sum(1 for r in self.records if r.arm == arm)

    def __len__(self):
        return len(self.records)


def _open_text(path_or_stream):
    if isinstance(path_or_stream, (str, Path)):
        return open(path_or_stream, newline='', encoding='utf-8-sig'), True
    if isinstance(path_or_stream, io.TextIOBase):
        return path_or_stream, False
    # Binary file objects
    return io.TextIOWrapper(path_or_stream, encoding='utf-8-sig', newline=''), False


def _first_error(errors):
    field, messages = next(iter(errors.items()))
    return f"{field}: {messages[0]}"


def parse_csv(path_or_stream):
    """
    Parse a ``subject_id,arm,value`` CSV into a PkDataset.

    Args:
        path_or_stream: filesystem path, text stream or binary stream.

    Returns:
        PkDataset with one record per data row.

    Raises:
        ParseError: on a missing column (row 0), an invalid row (1-based
            data row number) or an arm without any records.
    """
    from .serializers import PkRecordSerializer

    handle, owned = _open_text(path_or_stream)
    try:
        reader = csv.DictReader(handle)
        header = [name.strip().lower() for name in (reader.fieldnames or [])]
        missing = [col for col in REQUIRED_COLUMNS if col not in header]
        if missing:
            raise ParseError(f"missing column(s): {', '.join(missing)}", row=0)
        reader.fieldnames = header

        records = []
        for row_number, row in enumerate(reader, start=1):
            serializer = PkRecordSerializer(data={col: row.get(col) for col in REQUIRED_COLUMNS})
            if not serializer.is_valid():
                raise ParseError(_first_error(serializer.errors), row=row_number)
            records.append(PkRecord(**serializer.validated_data))
    finally:
        if owned:
            handle.close()

    dataset = PkDataset(records=tuple(records))
    for arm in Arm:
        if dataset.count(arm) == 0:
            raise ParseError(f"empty arm: no records for {arm.label} ({arm.value})")
    logger.info(
        f"Parsed {len(dataset)} records "
        f"({dataset.count(Arm.TEST)} test, {dataset.count(Arm.REFERENCE)} reference)"
    )
    return dataset
