"""Monroe and Chamberlin-Courant committee selection."""

from ._fpr import *  # noqa: F401,F403
from ._fpr import __doc__  # noqa: F401

__version__ = "0.1.0"
