"""Exception hierarchy shared by every module."""


class SwitchboardError(Exception):
    pass


class FormatError(SwitchboardError, ValueError):
    """Malformed input: bad ids, non-canonical edges, unparsable text."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidStructure(SwitchboardError, ValueError):
    """A well-formed structure that fails one of its axioms."""

    def __init__(self, report, what="structure"):
        self.report = report
        first = report.violations[0] if report.violations else None
        super().__init__(f"invalid {what}: {first}")


class PreconditionError(SwitchboardError, ValueError):
    pass


class EnumerationCapExceeded(SwitchboardError, RuntimeError):
    pass
