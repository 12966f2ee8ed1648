"""Backend selection for the hot search kernel.

The compiled ``_csearch`` extension is used when it was built; otherwise the
pure-Python ``_search`` module takes over.  Setting ``HDECOMP_PURE_PYTHON=1``
forces the fallback.
"""

import os

from . import _search
from ._search import EXHAUSTED, FOUND, LIMIT

__all__ = ["BACKEND", "EXHAUSTED", "FOUND", "LIMIT", "cycle_cover", "python_cycle_cover"]

python_cycle_cover = _search.cycle_cover

if os.environ.get("HDECOMP_PURE_PYTHON", "") not in ("", "0"):
    cycle_cover = python_cycle_cover
    BACKEND = "python"
else:
    try:
        from ._csearch import cycle_cover
    except ImportError:  # extension not built
        cycle_cover = python_cycle_cover
        BACKEND = "python"
    else:
        BACKEND = "cython"
