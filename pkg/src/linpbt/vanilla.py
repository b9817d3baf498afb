"""Certificate-driven SLD resolution for ordinary logic programs.

Implementation in ``_vanilla.py``, compiled as ``_cvanilla`` when built.
"""

from ._backend import load

_impl = load("._cvanilla", "._vanilla")

BACKEND = "cython" if _impl.__name__.endswith("_cvanilla") else "python"

VanillaState = _impl.VanillaState
vsolve = _impl.vsolve
vsolve_first = _impl.vsolve_first
run = _impl.run

__all__ = ["BACKEND", "VanillaState", "vsolve", "vsolve_first", "run"]
