"""Certificate-driven proof search for the linear language.

The machine itself lives in ``_kernel.py``; a compiled build of the same
source (``_ckernel``) is used when available. See ``_kernel`` for the
machine layout.
"""

from ._backend import load

_impl = load("._ckernel", "._kernel")

BACKEND = "cython" if _impl.__name__.endswith("_ckernel") else "python"

Solution = _impl.Solution
ProofState = _impl.ProofState
prove = _impl.prove
full_linear = _impl.full_linear
solutions_closed = _impl.solutions_closed
provable_closed = _impl.provable_closed
solve_closed = _impl.solve_closed
refute = _impl.refute

__all__ = [
    "BACKEND", "Solution", "ProofState", "prove", "full_linear",
    "solutions_closed", "provable_closed", "solve_closed", "refute",
]
