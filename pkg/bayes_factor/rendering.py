import csv
import io
import math
from ._compat import StrEnum
from typing import Mapping, Sequence

from .exceptions import ValidationError
from .serializers import render_json

NOT_AVAILABLE = 'n/a'


class OutputFormat(StrEnum):
    TSV = 'tsv'
    CSV = 'csv'
    JSON = 'json'

    @classmethod
    def parse(cls, value) -> 'OutputFormat':
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ValidationError(f'unknown output format: {value}')


def format_cell(value, digits: int = 12) -> str:
    if value is None:
        return NOT_AVAILABLE
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isinf(value):
            return 'inf' if value > 0 else '-inf'
        return format(value, f'.{digits}g')
    return str(value)


def render_rows(rows: Sequence[Mapping], fields: Sequence[str], fmt = OutputFormat.TSV,
                digits: int = 12) -> str:
    """Rows (serializer data) as a delimited table or a JSON array, fields in the given order"""
    fmt = OutputFormat.parse(fmt)
    if fmt is OutputFormat.JSON:
        return render_json([{field: row[field] for field in fields} for row in rows]) + '\n'

    buffer = io.StringIO()
    writer = csv.writer(
        buffer,
        delimiter = '\t' if fmt is OutputFormat.TSV else ',',
        lineterminator = '\n',
    )
    writer.writerow(fields)
    for row in rows:
        writer.writerow([format_cell(row[field], digits) for field in fields])
    return buffer.getvalue()


def render_serialized(serializer_class, instances, fmt = OutputFormat.TSV, digits: int = 12) -> str:
    serializer = serializer_class(instances, many = True)
    return render_rows(serializer.data, list(serializer.child.fields), fmt, digits)
