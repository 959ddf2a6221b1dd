"""Exact coincidence, CHSH and visibility predictions for photon-pair sources."""

from ._pairsim import *  # noqa: F401,F403
from ._pairsim import __version__  # noqa: F401
