# errors.py
"""
Exception hierarchy. Each class carries the process exit code the CLI maps it to.
"""


class HypoIndexError(Exception):
    exit_code = 5


class InstanceFormatError(HypoIndexError):
    """Malformed instance document (syntax, keys, arity, non-finite literal)"""
    exit_code = 4

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class InstanceValidationError(HypoIndexError):
    exit_code = 4

    def __init__(self, report):
        super().__init__(f"instance failed validation with {len(report.violations)} violation(s)")
        self.report = report


class WindingError(HypoIndexError):
    """A sample hits the winding target"""

    def __init__(self, message, loop=None, k=None):
        if loop is not None:
            message = f"loop '{loop}', k={k}: {message}"
        super().__init__(message)
        self.loop = loop
        self.k = k


class AmbiguousWindingError(WindingError):
    """An angular step reaches pi, so the discrete winding is not determined"""


class FockError(HypoIndexError, ValueError):
    pass


class FieldSyntaxError(HypoIndexError):
    exit_code = 4

    def __init__(self, message, column):
        super().__init__(f"{message} at column {column}")
        self.column = column


class UnknownIdentifierError(FieldSyntaxError):
    pass


class FieldEvaluationError(HypoIndexError):
    pass


class FrameError(HypoIndexError):
    pass
