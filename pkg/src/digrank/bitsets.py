"""Integer bitmask helpers for vertex sets.

Exact algorithms key their memo tables on these masks: a Python int is a
canonical, hashable encoding of a vertex set for any n, and stays a single
machine word for n <= 64, which is the capacity limit the exact solvers
enforce anyway.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Yield set bit positions in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def set_of(mask: int) -> frozenset[int]:
    return frozenset(bits(mask))
