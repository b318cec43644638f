#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Provides dyadic multi-indices and their enumeration.

A multi-index of level k is stored by the numerators of its coordinates over the
common denominator 2^k, so that membership in the dyadic sets is decided exactly
on integers.  Level 0 uses the denominator 1 and contains the corners of the unit
cube; an index belongs to level k >= 1 if at least one numerator is odd.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from gaussfield.utils.exceptions import DomainException


@dataclass(frozen=True)
class DyadicIndex:
    """A point of the dyadic set of one resolution level."""

    level: int
    """The highest resolution among the coordinates."""

    numerators: Tuple[int, ...]
    """Coordinate numerators over the common denominator 2^level."""

    def __post_init__(self) -> None:
        if self.level < 0:
            raise DomainException(f"level must be non-negative, got {self.level}")
        if len(self.numerators) == 0:
            raise DomainException("a dyadic index needs at least one coordinate")
        denominator = 1 << self.level
        if any(not 0 <= num <= denominator for num in self.numerators):
            raise DomainException(
                f"coordinates {self.numerators}/{denominator} leave the unit cube"
            )
        if self.level > 0 and all(num % 2 == 0 for num in self.numerators):
            raise DomainException(
                f"{self.numerators}/{denominator} has no coordinate of level "
                f"{self.level}"
            )

    @property
    def dim(self) -> int:
        """The dimension of the index.

        Returns:
            The number of coordinates
        """
        return len(self.numerators)

    @property
    def coords(self) -> Tuple[Tuple[int, int], ...]:
        """The coordinates in lowest terms as ``(numerator, level)`` pairs.

        Returns:
            One pair per coordinate; 0 and 1 have level 0
        """
        result = []
        for num in self.numerators:
            value = Fraction(num, 1 << self.level)
            result.append(
                (value.numerator, value.denominator.bit_length() - 1)
            )
        return tuple(result)

    @property
    def finest_axes(self) -> Tuple[bool, ...]:
        """Marks the coordinates that have exactly the level of the index.

        Returns:
            One flag per coordinate
        """
        if self.level == 0:
            return tuple(False for _ in self.numerators)
        return tuple(num % 2 == 1 for num in self.numerators)

    def point(self) -> np.ndarray:
        """The index as a point of the unit cube.

        Returns:
            The exact binary64 coordinates
        """
        return np.array(self.numerators, dtype=float) / float(1 << self.level)

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        """The enumeration key: level first, then numerators lexicographically.

        Returns:
            A tuple usable as a sort key
        """
        return self.level, self.numerators

    @classmethod
    def from_fractions(cls, values: Sequence[Fraction]) -> DyadicIndex:
        """Build an index from exact rational coordinates.

        Args:
            values: Coordinates in [0, 1] whose denominators are powers of two

        Returns:
            The index at the smallest level representing all coordinates

        Raises:
            DomainException: If a coordinate is not dyadic
        """
        fractions = [Fraction(value) for value in values]
        level = 0
        for value in fractions:
            denominator = value.denominator
            if denominator & (denominator - 1):
                raise DomainException(f"{value} is not a dyadic rational")
            level = max(level, denominator.bit_length() - 1)
        scale = 1 << level
        return cls(level, tuple(int(value * scale) for value in fractions))

    @classmethod
    def from_point(cls, values: Sequence[float]) -> DyadicIndex:
        """Build an index from float coordinates that are dyadic rationals.

        Args:
            values: The coordinates

        Returns:
            The corresponding index
        """
        return cls.from_fractions([Fraction(float(value)) for value in values])

    def __str__(self) -> str:
        parts = [
            str(num) if level == 0 else f"{num}/{1 << level}"
            for num, level in self.coords
        ]
        return parts[0] if len(parts) == 1 else "(" + ", ".join(parts) + ")"


def level_indices(dim: int, level: int) -> List[DyadicIndex]:
    """Enumerate the indices of exactly one level in lexicographic order.

    Args:
        dim: The dimension
        level: The level

    Returns:
        The indices of the level
    """
    if level == 0:
        return [DyadicIndex(0, nums) for nums in itertools.product((0, 1), repeat=dim)]
    return [
        DyadicIndex(level, nums)
        for nums in itertools.product(range((1 << level) + 1), repeat=dim)
        if any(num % 2 == 1 for num in nums)
    ]


def enumerate_dyadic(dim: int, k_max: int) -> List[DyadicIndex]:
    """Enumerate all indices up to a maximal level.

    The result is ordered by level, then lexicographically by the numerators at
    the common denominator of the level.  It holds (2^k_max + 1)^dim indices.

    Args:
        dim: The dimension n >= 1
        k_max: The maximal level >= 0

    Returns:
        The ordered indices

    Raises:
        DomainException: If dim or k_max are out of range
    """
    if dim < 1:
        raise DomainException(f"dim must be at least 1, got {dim}")
    if k_max < 0:
        raise DomainException(f"k_max must be non-negative, got {k_max}")
    indices: List[DyadicIndex] = []
    for level in range(k_max + 1):
        indices.extend(level_indices(dim, level))
    return indices


def basis_size(dim: int, k_max: int) -> int:
    """Number of indices up to a level, without enumerating them.

    Args:
        dim: The dimension
        k_max: The maximal level

    Returns:
        (2^k_max + 1)^dim
    """
    return ((1 << k_max) + 1) ** dim


def index_points(indices: Sequence[DyadicIndex]) -> np.ndarray:
    """Stack the points of the indices.

    Args:
        indices: The indices, all of the same dimension

    Returns:
        An array of shape ``(len(indices), dim)``
    """
    return np.array([index.point() for index in indices], dtype=float)


def index_levels(indices: Sequence[DyadicIndex]) -> np.ndarray:
    """Collect the levels of the indices.

    Args:
        indices: The indices

    Returns:
        An integer vector of levels
    """
    return np.array([index.level for index in indices], dtype=int)
