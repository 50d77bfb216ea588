try:
    from ._oransim import *  # noqa: F401,F403
except ImportError:  # build-tree layout keeps the extension top level
    from _oransim import *  # noqa: F401,F403
