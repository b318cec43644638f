#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Provides the square orderings of tensor index pairs.

The full ordering walks the boundary of the square ``[1, r]^2`` for r = 1, 2, ...:
down the new row ``(r, 1), ..., (r, r)`` and then up the new column
``(r - 1, r), ..., (1, r)``.  The symmetric ordering keeps only the lower
triangle and enumerates it row by row.  Both use 1-based ranks.
"""
import enum
import math
from dataclasses import dataclass
from typing import Iterator, Tuple

from gaussfield.utils.exceptions import DomainException


class OrderingMode(str, enum.Enum):
    """The two square orderings."""

    FULL = "full"
    """All pairs of the square."""

    SYMMETRIC = "symmetric"
    """Pairs (i, j) with j <= i."""


def square_order(mode: OrderingMode, m: int) -> Tuple[int, int]:
    """The pair at a rank.

    Args:
        mode: The ordering
        m: The 1-based rank

    Returns:
        The pair (i, j)

    Raises:
        DomainException: If the rank is not positive
    """
    if m <= 0:
        raise DomainException(f"rank must be positive, got {m}")
    if OrderingMode(mode) is OrderingMode.SYMMETRIC:
        row = (1 + math.isqrt(8 * m - 7)) // 2
        return row, m - row * (row - 1) // 2
    side = math.isqrt(m - 1) + 1
    offset = m - (side - 1) ** 2 - 1
    if offset < side:
        return side, offset + 1
    return 2 * side - offset - 1, side


def square_rank(mode: OrderingMode, i: int, j: int) -> int:
    """The rank of a pair, inverse to `square_order`.

    Args:
        mode: The ordering
        i: The first index, 1-based
        j: The second index, 1-based

    Returns:
        The 1-based rank

    Raises:
        DomainException: If an index is not positive, or j > i in symmetric mode
    """
    if i <= 0 or j <= 0:
        raise DomainException(f"indices must be positive, got ({i}, {j})")
    if OrderingMode(mode) is OrderingMode.SYMMETRIC:
        if j > i:
            raise DomainException(f"symmetric ordering needs j <= i, got ({i}, {j})")
        return i * (i - 1) // 2 + j
    side = max(i, j)
    if j <= i:
        return (side - 1) ** 2 + j
    return (side - 1) ** 2 + 2 * side - i


@dataclass(frozen=True)
class SquareOrdering:
    """The square ordering of the pairs of ``size`` one-dimensional indices."""

    mode: OrderingMode
    size: int

    def __post_init__(self) -> None:
        if self.size < 0:
            raise DomainException(f"size must be non-negative, got {self.size}")

    def __len__(self) -> int:
        if self.mode is OrderingMode.SYMMETRIC:
            return self.size * (self.size + 1) // 2
        return self.size * self.size

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        for rank in range(1, len(self) + 1):
            yield square_order(self.mode, rank)

    def rank(self, i: int, j: int) -> int:
        """Rank of a pair within this ordering.

        Args:
            i: The first index, 1-based
            j: The second index, 1-based

        Returns:
            The 1-based rank

        Raises:
            DomainException: If the pair is outside the square
        """
        if max(i, j) > self.size:
            raise DomainException(f"({i}, {j}) exceeds the size {self.size}")
        return square_rank(self.mode, i, j)
