"""Grid geometry: the image side rule and the three fill orders.

A fill order is a bijection from visit rank 0..P*P-1 to a cell (row, col)
of a P x P grid.  Features are written into cells in rank order, so the
early ranks end up holding the first features of the chosen ordering and
the tail ranks hold the zero padding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "FillOrder",
    "image_side",
    "linear_fill_order",
    "raster_fill_order",
    "circular_fill_order",
]


@dataclass(frozen=True)
class FillOrder:
    """Visit order over a square grid.

    ``cells[rank]`` is the (row, col) written at that rank.  ``side`` is
    even and ``cells`` covers every cell of the grid exactly once.
    """

    side: int
    cells: tuple[tuple[int, int], ...]

    def __post_init__(self):
        p = self.side
        if p <= 0 or p % 2 != 0:
            raise ValueError(f"side must be a positive even integer, got {p}")
        if len(self.cells) != p * p or len(set(self.cells)) != p * p:
            raise ValueError("cells must visit every grid cell exactly once")
        for r, c in self.cells:
            if not (0 <= r < p and 0 <= c < p):
                raise ValueError(f"cell ({r}, {c}) outside {p}x{p} grid")

    def __len__(self):
        return len(self.cells)

    def __getitem__(self, rank):
        return self.cells[rank]


def image_side(n_features: int) -> int:
    """Smallest even P with P*P able to hold ``n_features`` pixels.

    P is the smallest even integer >= sqrt(n_features), computed in exact
    integer arithmetic so perfect squares round correctly.
    """
    if n_features < 1:
        raise ValueError(f"n_features must be >= 1, got {n_features}")
    p = math.isqrt(n_features - 1) + 1  # ceil(sqrt(n)) exactly
    return p if p % 2 == 0 else p + 1


def _check_side(side: int) -> None:
    if side < 2 or side % 2 != 0:
        raise ValueError(f"side must be a positive even integer, got {side}")


def linear_fill_order(side: int) -> FillOrder:
    """Boustrophedon scan: left-to-right on even rows, reversed on odd rows."""
    _check_side(side)
    cells = []
    for row in range(side):
        cols = range(side) if row % 2 == 0 else range(side - 1, -1, -1)
        cells.extend((row, col) for col in cols)
    return FillOrder(side, tuple(cells))


def raster_fill_order(side: int) -> FillOrder:
    """Plain row-major scan, rank r -> (r // P, r % P)."""
    _check_side(side)
    cells = tuple((r // side, r % side) for r in range(side * side))
    return FillOrder(side, cells)


def circular_fill_order(side: int) -> FillOrder:
    """Center-out ring spiral, then an L-shaped pass over the last row and column.

    Rank 0 sits at the center cell (P/2-1, P/2-1).  Each ring of radius
    r walks down the left edge of the box, right along the bottom, up the
    right edge, and left along the top back to the start.  The rings cover
    the (P-1) x (P-1) block touching the origin; the remaining row P-1 is
    walked left to right and column P-1 bottom to top.
    """
    _check_side(side)
    c = side // 2 - 1
    cells = [(c, c)]
    for r in range(1, side // 2):
        lo, hi = c - r, c + r
        cells.extend((row, lo) for row in range(lo, hi + 1))        # down left edge
        cells.extend((hi, col) for col in range(lo + 1, hi + 1))    # right along bottom
        cells.extend((row, hi) for row in range(hi - 1, lo - 1, -1))  # up right edge
        cells.extend((lo, col) for col in range(hi - 1, lo, -1))    # left along top
    last = side - 1
    cells.extend((last, col) for col in range(side))
    cells.extend((row, last) for row in range(side - 2, -1, -1))
    return FillOrder(side, tuple(cells))
