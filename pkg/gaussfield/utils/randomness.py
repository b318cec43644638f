#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Provides reproducible, stream-split random number generation.

Every random quantity in GaussField is drawn from a generator that is keyed by a
pair ``(seed, stream)``.  The generator is numpy's counter-based Philox bit
generator seeded through a ``SeedSequence`` whose spawn key is the stream index,
so that distinct streams are statistically independent and any stream can be
regenerated on its own, in any order, on any thread.
"""
import os
from typing import Optional

import numpy as np

from gaussfield.utils.exceptions import ConfigurationException, DomainException

RNG_ALGORITHM = "Philox4x64-10"
"""Name of the bit generator recorded in sample metadata."""

NORMAL_METHOD = "ziggurat"
"""Method numpy's ``Generator.standard_normal`` uses for normal variates."""

THREADS_VARIABLE = "GAUSSFIELD_THREADS"
"""Environment variable that sets the default number of sampling threads."""

MAX_SEED = 2 ** 64 - 1


def check_seed(seed: int) -> int:
    """Validate a 64-bit seed.

    Args:
        seed: The seed to check

    Returns:
        The seed as a Python integer

    Raises:
        DomainException: If the seed is negative or wider than 64 bits
    """
    seed = int(seed)
    if not 0 <= seed <= MAX_SEED:
        raise DomainException(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def stream_generator(seed: int, stream: int) -> np.random.Generator:
    """Create the generator of one random stream.

    Args:
        seed: The 64-bit run seed
        stream: The non-negative stream index

    Returns:
        A fresh generator positioned at the start of the stream

    Raises:
        DomainException: If the stream index is negative
    """
    if stream < 0:
        raise DomainException(f"stream index must be non-negative, got {stream}")
    sequence = np.random.SeedSequence(check_seed(seed), spawn_key=(int(stream),))
    return np.random.Generator(np.random.Philox(sequence))


def standard_normals(seed: int, stream: int, size: int) -> np.ndarray:
    """Draw the first ``size`` standard normal variates of a stream.

    Args:
        seed: The 64-bit run seed
        stream: The stream index
        size: The number of variates

    Returns:
        A float64 vector of i.i.d. N(0, 1) variates
    """
    return stream_generator(seed, stream).standard_normal(size)


def uniform_points(seed: int, stream: int, count: int, dim: int) -> np.ndarray:
    """Draw points uniformly from the unit cube.

    Args:
        seed: The 64-bit run seed
        stream: The stream index
        count: The number of points
        dim: The dimension of the cube

    Returns:
        An array of shape ``(count, dim)``
    """
    return stream_generator(seed, stream).random((count, dim))


def thread_count(workers: Optional[int] = None) -> int:
    """Resolve the number of worker threads.

    An explicit value wins; otherwise the ``GAUSSFIELD_THREADS`` environment
    variable is read; otherwise a single thread is used.

    Args:
        workers: An explicitly requested number of threads

    Returns:
        The number of threads to use

    Raises:
        ConfigurationException: If the requested or configured value is invalid
    """
    if workers is None:
        raw = os.environ.get(THREADS_VARIABLE, "").strip()
        if not raw:
            return 1
        try:
            workers = int(raw)
        except ValueError as error:
            raise ConfigurationException(
                f"{THREADS_VARIABLE} must be an integer, got {raw!r}"
            ) from error
    if workers < 1:
        raise ConfigurationException(f"thread count must be positive, got {workers}")
    return workers
