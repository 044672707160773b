"""Kernel backend selection.

The compiled extension ``conequant._kernels`` is preferred when importable;
otherwise the pure-Python twin ``conequant._kernels_py`` is used.  Setting the
environment variable CONEQUANT_PURE_PYTHON=1 forces the pure twin (useful for
benchmarking and debugging).  Both backends implement the same functions with
identical exact semantics; ``tests/test_kernels.py`` pins them against each
other.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("CONEQUANT_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND

norm_pair = _impl.norm_pair
proj_pairs = _impl.proj_pairs
sort_perm = _impl.sort_perm
kth_value = _impl.kth_value
count_le = _impl.count_le
pinball_at = _impl.pinball_at
scalar_summary = _impl.scalar_summary


def available_backends() -> tuple[str, ...]:
    """Names of the kernel backends importable in this environment."""
    names = ["python"]
    try:
        from . import _kernels  # noqa: F401

        names.insert(0, _kernels.BACKEND)
    except ImportError:
        pass
    return tuple(names)
