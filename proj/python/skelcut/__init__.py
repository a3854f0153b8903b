"""Budgeted edge-removal solver for planar graphs.

Samples uniform spanning trees, partitions them into balanced classes,
and picks cut sets that shatter the largest connected component under
an edge-removal budget.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
