"""
Error types raised by the toolkit
"""


class LayoutToolkitError(Exception):
    """Base class for every error the toolkit raises on purpose"""


class GeometryDomainError(LayoutToolkitError, ValueError):
    """Input outside the domain of a geometric transform"""


class NoIntersectionError(GeometryDomainError):
    """A viewing ray does not reach the requested plane"""


class LayoutValidationError(LayoutToolkitError, ValueError):
    """A floor polygon or its heights violate the Manhattan layout invariants"""


class SignalValidationError(LayoutToolkitError, ValueError):
    """Boundary signals violate their invariants"""


class AnnotationValidationError(LayoutToolkitError, ValueError):
    """A corner annotation violates its invariants"""


class ReconstructionError(LayoutToolkitError):
    """Layout reconstruction is infeasible; `stage` names the failing step"""

    def __init__(self, stage, message):
        super().__init__(f"{stage}: {message}")
        self.stage = stage
        self.message = message


class MetricDomainError(LayoutToolkitError, ValueError):
    """A metric is undefined for the given inputs"""


class IncomparableLayoutsError(MetricDomainError):
    """Layouts cannot be matched corner to corner"""


class GenerationError(LayoutToolkitError):
    """Synthetic room generation failed"""


class FileFormatError(LayoutToolkitError, ValueError):
    """A file could not be parsed; `line` is 1-based when known"""

    def __init__(self, path, message, line=None):
        location = f"{path}:{line}" if line is not None else f"{path}"
        super().__init__(f"{location}: {message}")
        self.path = path
        self.line = line
        self.message = message
