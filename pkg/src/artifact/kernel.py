"""Select the reduction kernel backend at import time.

The compiled extension ``artifact._kernel`` is used when it was built;
otherwise, or when ``ARTIFACT_KERNEL=python`` is set, the pure-Python
``artifact._kernel_py`` is used.  Both expose the same functions with
identical results.
"""

import os

from . import _kernel_py

if os.environ.get("ARTIFACT_KERNEL", "").lower() == "python":
    _impl = _kernel_py
    BACKEND = "python"
else:
    try:
        from . import _kernel as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _kernel_py
        BACKEND = "python"

axpy = _impl.axpy
spoly = _impl.spoly
reduce = _impl.reduce
lcm = _impl.lcm
key_of = _impl.key_of
normalize = _impl.normalize
groebner_loop = _impl.groebner_loop
