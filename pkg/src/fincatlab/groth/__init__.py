"""Grothendieck fibrations, straightening, free fibrations and lax colimits."""
from .grothendieck import *  # noqa: F401,F403
from .free import *  # noqa: F401,F403
from .laxcolim import *  # noqa: F401,F403
from .collage import *  # noqa: F401,F403
