"""Backend selection for the integer hot loops.

The compiled extension is used when it imports and the arguments fit its
64-bit bounds; otherwise the pure-Python twin runs. Set ``SPLICESIG_PURE=1``
to force the fallback.
"""
import os

from . import _kernels_py

BACKEND = "python"
_fast = None

if os.environ.get("SPLICESIG_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _fast
    except ImportError:
        _fast = None
    else:
        BACKEND = "cython"


def dedekind_numerator(p, q):
    """Numerator of the naive Dedekind sum over the denominator 4 q^2 (0 <= p < q)."""
    if _fast is not None and q <= _fast.DEDEKIND_Q_MAX:
        return _fast.dedekind_numerator(p, q)
    return _kernels_py.dedekind_numerator(p, q)


def jump_numerators(residues, m):
    if _fast is not None and m <= _fast.JUMP_M_MAX and len(residues) <= 64:
        return _fast.jump_numerators(list(residues), m)
    return _kernels_py.jump_numerators(residues, m)
