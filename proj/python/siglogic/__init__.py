"""Boolean logic models of signalling networks: build, simulate, train."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
