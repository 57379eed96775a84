"""Process-wide knobs.

Parallelism is opt-in: SECTORLAB_THREADS caps the worker count used by
the few embarrassingly parallel loops (density profiles, orbit grids).
Results are assembled in a fixed order regardless of thread count, so
outputs are bit-identical for any setting.
"""

from __future__ import annotations

import os


def thread_count() -> int:
    raw = os.environ.get("SECTORLAB_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)
