"""Exact computations with finite categories, fibrations and simplicial sets."""
from . import errors
from .config import caps, size_caps
from .fincat import *  # noqa: F401,F403
from .verdict import VerdictReport

__version__ = "0.1.0"
