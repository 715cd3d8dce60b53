"""Selects the compiled lifting kernels when available.

Set ``FACTORKIT_PURE_PYTHON=1`` to force the pure-Python implementation.
"""
import os

if os.environ.get("FACTORKIT_PURE_PYTHON"):
    from . import _lift_kernels_py as impl

    BACKEND = "python"
else:
    try:
        from . import _lift_kernels as impl

        BACKEND = "cython"
    except ImportError:
        from . import _lift_kernels_py as impl

        BACKEND = "python"

rel_solve = impl.rel_solve
rel_lift_witness = impl.rel_lift_witness
fun_solve = impl.fun_solve
fun_lift_witness = impl.fun_lift_witness
