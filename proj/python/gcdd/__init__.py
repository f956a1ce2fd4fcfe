"""Continuous dynamical decoupling for d-level systems.

Thin wrapper over the C++ core. All heavy lifting happens in `_core`;
this package only re-exports its symbols.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
