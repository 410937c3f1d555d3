"""Scale-free wireless sensor network topologies.

Thin re-export of the compiled ``_core`` extension.
"""

from ._core import *  # noqa: F401,F403
from ._core import ConfigError, Error, FitError  # noqa: F401

__version__ = "0.1.0"
