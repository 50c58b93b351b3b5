"""Broadcast scheduling and radio simulation for known-topology wireless meshes.

The heavy lifting lives in the compiled ``_core`` extension; this package just
re-exports it so ``import meshbcast`` works both from an installed wheel (where
``_core`` sits inside the package) and from a plain CMake build tree (where the
module is on ``sys.path`` by itself).
"""

try:
    from ._core import *  # noqa: F401,F403
    from . import _core as _impl
except ImportError:  # pragma: no cover - CMake build-tree layout
    from _core import *  # type: ignore  # noqa: F401,F403
    import _core as _impl  # type: ignore

__version__ = "0.1.0"
__all__ = [name for name in dir(_impl) if not name.startswith("_")]
