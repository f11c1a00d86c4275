class BayesFactorError(Exception):
    """Base class for every error raised by the bayes_factor app"""

    exit_code = 2


# ========== VALIDATION ERRORS ==========

class ValidationError(BayesFactorError, ValueError):
    """Input rejected before any computation"""

    exit_code = 1


class EmptySampleError(ValidationError):
    def __init__(self, message = 'empty sample'):
        super().__init__(message)


class NonBinaryObservationError(ValidationError):
    def __init__(self, line = None):
        message = 'non-binary observation'
        if line is not None:
            message = f'{message} at line {line}'
        self.line = line
        super().__init__(message)


class InvalidThresholdError(ValidationError):
    def __init__(self, message = 'invalid threshold'):
        super().__init__(message)


class InvalidTableError(ValidationError):
    def __init__(self, message = 'invalid table'):
        super().__init__(message)


class InvalidCountsError(ValidationError):
    def __init__(self, message = 'invalid counts'):
        super().__init__(message)


class OutsideCalibratedDomainError(ValidationError):
    def __init__(self, message = 'outside calibrated domain'):
        super().__init__(message)


class InvalidModelError(ValidationError):
    """Unreadable or malformed calibration model document"""


class InputFileError(ValidationError):
    """Missing, unreadable or malformed input file"""


# ========== COMPUTATION ERRORS ==========

class ComputationError(BayesFactorError):
    """Numerically degenerate situation met during a computation"""

    exit_code = 2


class DegeneratePosteriorError(ComputationError):
    def __init__(self, message = 'degenerate posterior'):
        super().__init__(message)


class ThresholdRangeError(ComputationError):
    def __init__(self, message = 'threshold exceeds deviation range'):
        super().__init__(message)


class UnderdeterminedFitError(ComputationError):
    def __init__(self, message = 'underdetermined fit'):
        super().__init__(message)


class NonInvertibleFitError(ComputationError):
    def __init__(self, message = 'non-invertible source fit'):
        super().__init__(message)


class EmptyModelError(ComputationError):
    def __init__(self, message = 'no segments'):
        super().__init__(message)


class DegenerateSamplesError(ComputationError):
    def __init__(self, message = 'degenerate samples'):
        super().__init__(message)


class DegenerateDeviationsError(ComputationError):
    def __init__(self, message = 'degenerate deviations'):
        super().__init__(message)
