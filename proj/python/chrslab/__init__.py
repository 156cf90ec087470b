"""Reference-state puzzle, classical-shadow and swap-oracle simulation lab."""

try:
    from ._chrslab import *  # noqa: F401,F403
    from ._chrslab import __doc__ as _doc
except ImportError:  # build-tree layout, extension beside this package
    from _chrslab import *  # noqa: F401,F403
    from _chrslab import __doc__ as _doc

__doc__ = _doc
__version__ = "0.1.0"
