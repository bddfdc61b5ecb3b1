"""Finite simplicial sets with markings, nerves and mapping simplices."""
from .core import *  # noqa: F401,F403
from .constructions import *  # noqa: F401,F403
from .nerve import *  # noqa: F401,F403
from .mapping import *  # noqa: F401,F403
