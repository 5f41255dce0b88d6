"""Coherence and geometric-quantum-correlation quantifiers on small density matrices.

Thin wrapper over the compiled `_qcohere` extension; states are numpy
complex matrices (validated on entry), measures return dicts with
`value`, `method`, and `tol` fields.
"""

from ._qcohere import *  # noqa: F401,F403
from ._qcohere import __version__  # noqa: F401
