from ._extnfs import *  # noqa: F401,F403
