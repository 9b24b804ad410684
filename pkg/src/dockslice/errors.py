"""Shared exception base so the CLI can report any pipeline failure uniformly."""


class DockSliceError(Exception):
    """Base class for all errors raised by this package."""
