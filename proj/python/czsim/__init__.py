"""Three-transmon coupler-driven CZ gate simulator."""

from ._core import *  # noqa: F401,F403
from ._core import __version__
