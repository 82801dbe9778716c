"""Exact distance-spectrum toolkit for block graphs and finite metrics."""

from .families import *  # noqa: F401,F403
from .graph import *  # noqa: F401,F403
from .graph6 import *  # noqa: F401,F403
from .linalg import *  # noqa: F401,F403
from .metric import *  # noqa: F401,F403
from .report import *  # noqa: F401,F403
from .spectra import *  # noqa: F401,F403
from . import families, graph, graph6, linalg, metric, report, spectra

__all__ = (
    families.__all__
    + graph.__all__
    + graph6.__all__
    + linalg.__all__
    + metric.__all__
    + report.__all__
    + spectra.__all__
)

__version__ = "0.1.0"
