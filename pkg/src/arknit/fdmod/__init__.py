"""Modules over finite-dimensional algebras: Hom, Ext, decomposition and AR theory."""
from .module import *  # noqa: F401,F403
from .hom import *  # noqa: F401,F403
from .decomp import *  # noqa: F401,F403
from .ar import *  # noqa: F401,F403
from . import module as _module, hom as _hom, decomp as _decomp, ar as _ar

__all__ = _module.__all__ + _hom.__all__ + _decomp.__all__ + _ar.__all__
