"""quenchlab: entanglement, stabilizer entropy and anti-flatness dynamics
after global quantum quenches of spin-1/2 chains, with analytic
Haar-random baselines."""

from .kernels import IMPL as KERNEL_IMPL

__version__ = "0.1.0"
__all__ = ["KERNEL_IMPL", "__version__"]
