"""Shapelet-based seismic event detection.

Thin wrapper over the C++ core; see the project README for the full
pipeline (synth -> preprocess -> discover -> train -> detect).
"""

from ._eqshapelets import *  # noqa: F401,F403
from ._eqshapelets import __version__  # noqa: F401
