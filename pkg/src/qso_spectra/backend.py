"""Kernel backend selection.

The environment variable ``QSO_SPECTRA_BACKEND`` forces a backend:
``c`` for the compiled extension, ``py`` for pure Python.  By default
the compiled kernels are used when available.
"""

import os

_forced = os.environ.get("QSO_SPECTRA_BACKEND", "").strip().lower()

if _forced == "py":
    from . import _kernels_py as kernels
elif _forced == "c":
    from . import _kernels as kernels  # type: ignore[no-redef]
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]

BACKEND_NAME = kernels.BACKEND_NAME

lp_add = kernels.lp_add
lp_neg = kernels.lp_neg
lp_sub = kernels.lp_sub
lp_mul = kernels.lp_mul
lp_scale = kernels.lp_scale
lp_shift = kernels.lp_shift
lp_eval = kernels.lp_eval
plist_divmod = kernels.plist_divmod
plist_gcd = kernels.plist_gcd
