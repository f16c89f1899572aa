"""Python bindings for the qdkit C++ library."""

from ._core import *  # noqa: F401,F403
from ._core import QdkitError, PreconditionError, ExactnessError, VerificationError  # noqa: F401

__version__ = "0.1.0"
