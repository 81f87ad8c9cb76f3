"""Reliability, risk, and reactive-resiliency toolkit for repairable systems."""

from ._resiq import *  # noqa: F401,F403
from ._resiq import __doc__  # noqa: F401

__version__ = "0.1.0"
