from ._amenlab import *  # noqa: F401,F403
