from typing import Text

from twodist.base import PipelineConfig
from twodist.maximality import ExtensionCertificate
from twodist.pipeline import run
from twodist.system.exceptions import ConfigurationError, VerificationError

from ._version import __version__
from .about import about
from .utils import Stage

__all__ = [
    "version",
    "run",
    "PipelineConfig",
    "ExtensionCertificate",
    "Stage",
    "VerificationError",
    "ConfigurationError",
    "about",
]


def __dir__():
    return __all__


def version() -> Text:
    """
    Version of ``twodist`` package

    Returns:
        ``Text``: version in X.Y.Z format
    """
    return __version__
