"""
Readers for the text inputs of the management commands.

Sample files hold 0/1 tokens, one per line or comma separated; calibration
data is a CSV with the header `frequency,source_bf,reference_bf`. In both,
lines starting with `#` are comments and blank lines are skipped.
"""

import csv
import logging
import math
from pathlib import Path
from typing import Iterator, List, Tuple

from .calib import CalibrationPoint
from .exceptions import EmptySampleError, InputFileError, NonBinaryObservationError
from .seqbf import SampleSequence

logger = logging.getLogger(__name__)

CALIBRATION_HEADER = ('frequency', 'source_bf', 'reference_bf')


def _read_lines(path) -> List[str]:
    try:
        return Path(path).read_text(encoding = 'utf-8').splitlines()
    except FileNotFoundError:
        raise InputFileError(f'input file not found: {path}')
    except (OSError, UnicodeDecodeError) as e:
        raise InputFileError(f'cannot read {path}: {e}')


def _tokens(lines: List[str]) -> Iterator[Tuple[int, str]]:
    for number, line in enumerate(lines, start = 1):
        stripped = line.strip()
        if not stripped or stripped.startswith('#'):
            continue
        for token in stripped.split(','):
            token = token.strip()
            if token:
                yield number, token


def parse_sample_text(text: str) -> SampleSequence:
    values = []
    for number, token in _tokens(text.splitlines()):
        if token not in ('0', '1'):
            raise NonBinaryObservationError(line = number)
        values.append(int(token))
    if not values:
        raise EmptySampleError()
    return SampleSequence(tuple(values))


def parse_sample_file(path) -> SampleSequence:
    sample = parse_sample_text('\n'.join(_read_lines(path)))
    logger.debug('read %d observations from %s', sample.n, path)
    return sample


def parse_value_file(path) -> List[float]:
    """Real-valued observations for the t-test groups, same layout as sample files"""
    values = []
    for number, token in _tokens(_read_lines(path)):
        try:
            value = float(token)
        except ValueError:
            raise InputFileError(f'{path}: not a number at line {number}: {token!r}')
        if not math.isfinite(value):
            raise InputFileError(f'{path}: non-finite value at line {number}')
        values.append(value)
    return values


def read_calibration_csv(path) -> List[CalibrationPoint]:
    lines = [line for line in _read_lines(path) if line.strip() and not line.lstrip().startswith('#')]
    reader = csv.reader(lines)
    header = next(reader, None)
    if header is None or tuple(column.strip() for column in header) != CALIBRATION_HEADER:
        raise InputFileError(f'{path}: expected header {",".join(CALIBRATION_HEADER)}')

    points = []
    for row_number, row in enumerate(reader, start = 2):
        if len(row) != len(CALIBRATION_HEADER):
            raise InputFileError(f'{path}: data row {row_number} has {len(row)} columns')
        try:
            x, source, reference = (float(cell) for cell in row)
        except ValueError:
            raise InputFileError(f'{path}: data row {row_number} is not numeric')
        if not 0 <= x <= 1:
            raise InputFileError(f'{path}: data row {row_number}: frequency outside [0, 1]')
        points.append(CalibrationPoint(x = x, y_source = source, y_reference = reference))

    if not points:
        raise InputFileError(f'{path}: no calibration rows')
    logger.debug('read %d calibration points from %s', len(points), path)
    return points
