"""Subspace estimation under heteroskedastic noise.

Deflated HeteroPCA and its comparators (vanilla SVD, diagonal-deleted PCA,
HeteroPCA), the HOOI tensor pipeline, and seeded synthetic-model generators.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
