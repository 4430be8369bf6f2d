"""Exact construction of small simple planar graphs with a prescribed
effective resistance across a marked edge.

Graphs are built as series-parallel terms (:mod:`.sp`), sized by continued
fractions (:mod:`.cf`) and signed decompositions (:mod:`.decompose`),
assembled by :mod:`.construct`, and checked against independent exact
spanning-tree counts (:mod:`.tau`) and lower bounds (:mod:`.bounds`).
"""

from .bounds import *  # noqa: F401,F403
from .cf import *  # noqa: F401,F403
from .construct import *  # noqa: F401,F403
from .decompose import *  # noqa: F401,F403
from .sp import *  # noqa: F401,F403
from .tau import *  # noqa: F401,F403
import importlib as _importlib

# the ``tau`` function shadows its module on the package namespace
_modules = [_importlib.import_module(f"{__name__}.{m}") for m in ("bounds", "cf", "construct", "decompose", "sp", "tau")]

__version__ = "0.1.0"

__all__ = [name for m in _modules for name in m.__all__]
