"""Hot-kernel dispatch: compiled Cython core with a numpy fallback.

The implementation is chosen once at import time.  Set the environment
variable ``QUENCHLAB_KERNELS`` to ``python`` or ``cython`` to force a
specific backend (the latter raises if the extension is missing).
``benchmarks/bench_kernels.py`` compares the two.
"""

import os

from . import _fallback

_requested = os.environ.get("QUENCHLAB_KERNELS", "").lower()

if _requested in ("python", "numpy", "fallback"):
    _impl = _fallback
else:
    try:
        from . import _core as _impl
    except ImportError:
        if _requested == "cython":
            raise
        _impl = _fallback

IMPL = _impl.IMPL

pauli_phase = _impl.pauli_phase
pauli_expectation_raw = _impl.pauli_expectation_raw
pauli_moment_sum = _impl.pauli_moment_sum
pauli_xlogx_sum = _impl.pauli_xlogx_sum
apply_pauli_sum = _impl.apply_pauli_sum

# always available regardless of backend (used by tests/benchmarks)
fallback = _fallback
