"""Exception types shared across the workbench."""


class WorkbenchError(Exception):
    pass


class StructuralError(WorkbenchError):
    """Malformed input data: bad table shapes, out-of-range indices, broken
    normalization of a table that is required to be normalized at construction.

    Distinct from an axiom violation, which is reported as data, not raised.
    """


class GuardExceeded(WorkbenchError):
    """A search or enumeration would exceed the configured size guard."""

    def __init__(self, what: str, size: int, bound: int):
        super().__init__(f"{what}: search size {size} exceeds guard {bound}")
        self.what = what
        self.size = size
        self.bound = bound


class IncoherentPreExtension(WorkbenchError):
    """No ring element realizes the required left/right multiplication
    operators simultaneously at some slot of the correction tables."""


class ConstructionError(WorkbenchError):
    """A construction refused because its input fails the required checks.

    Carries the offending validation report in ``report``.
    """

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = list(report) if report else []


class LiftError(WorkbenchError):
    """An integer lift that is guaranteed by exactness did not exist.

    This signals corrupted resolution data and is always a bug, never a
    recoverable condition.
    """
