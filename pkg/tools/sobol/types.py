from __future__ import annotations

try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from backports.strenum import StrEnum


class SobolOrder(StrEnum):
    """FIRST: closed index of the subset (all classes inside it).
    GROUP: the class of exactly the subset.
    TOTAL: every class sharing a dimension with the subset.
    """

    FIRST = "first"
    GROUP = "group"
    TOTAL = "total"
