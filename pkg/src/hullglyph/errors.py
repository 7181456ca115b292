"""Exception types raised across the pipeline."""


class HullglyphError(Exception):
    """Base class for all package errors."""


class EmptyPointSet(HullglyphError, ValueError):
    pass


class DegenerateHull(HullglyphError, ValueError):
    pass


class EmptyGlyph(HullglyphError, ValueError):
    pass


class ShapeError(HullglyphError, ValueError):
    pass


class EmptyDataset(HullglyphError, ValueError):
    pass


class ManifestError(HullglyphError, ValueError):
    def __init__(self, message, row=None):
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)
        self.row = row


class SplitError(HullglyphError, ValueError):
    pass


class FormatError(HullglyphError, ValueError):
    """Malformed image or model file."""
