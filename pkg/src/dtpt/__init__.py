"""Exact checks of DT/PT wall-crossing identities at desk scale."""

from ._version import __version__

__all__ = ["__version__"]
