"""Selects the schedule-replay kernel at import time.

Set ``CHOICE_CENSUS_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _pykernels

BACKEND = "python"
apply_schedules = _pykernels.apply_schedules

if not os.environ.get("CHOICE_CENSUS_PURE_PYTHON"):
    try:
        from ._kernels import apply_schedules  # noqa: F811
    except ImportError:
        pass
    else:
        BACKEND = "cython"
