from __future__ import annotations

import os
from dataclasses import dataclass


@dataclass
class Limits:
    max_group_order: int = 1024
    max_symmetric_degree: int = 5
    max_root_order: int = 1024
    # number of sub-multiset DP states allowed in one codimension computation
    work_budget: int = 2_000_000
    # max length m for the rank oracle
    oracle_cap: int = 6
    # max length m for elementary identities; None means |T|
    elementary_cap: int | None = None
    # rank via two prime fields before falling back to exact arithmetic
    fast_path: bool = False


LIMITS = Limits()


def worker_count() -> int:
    """Worker cap from ``GDA_THREADS`` (defaults to the CPU count)."""
    raw = os.environ.get("GDA_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return max(1, os.cpu_count() or 1)
