"""Optional numba compilation.

Set ``VACCORR_DISABLE_JIT=1`` before import to run every kernel as plain
Python/numpy. Both paths share the same source, so results agree to rounding.
"""

import os

JIT_DISABLED = os.environ.get("VACCORR_DISABLE_JIT", "0").strip().lower() not in ("", "0", "false", "no")

if JIT_DISABLED:

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda fn: fn

else:
    from numba import njit  # noqa: F401

__all__ = ["njit", "JIT_DISABLED"]
