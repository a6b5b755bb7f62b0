"""Ghost numbers of p-group algebras: nilpotency indices, bounds and cyclic certificates."""

from ghostnum.errors import GhostNumError

__version__ = "0.1.0"

__all__ = ["GhostNumError", "__version__"]
