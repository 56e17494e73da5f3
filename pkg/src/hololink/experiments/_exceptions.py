class ReportError(ValueError):
    """Raise when a report is requested for an empty results table."""


class ReportIOError(OSError):
    """Raise when report files cannot be written."""
