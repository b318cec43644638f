#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Provides a timer that checks code blocks against a runtime budget.

Timings are logged and collected per name, but never written to report files:
reports must stay byte-identical between runs.
"""
from __future__ import annotations

import collections
import logging
import math
import time
from contextlib import ContextDecorator
from dataclasses import dataclass, field
from typing import Any, ClassVar, DefaultDict, List, Optional

from gaussfield.utils.exceptions import RuntimeBudgetError

_LOGGER = logging.getLogger(__name__)


@dataclass
class RuntimeBudget(ContextDecorator):
    """Time a block as a context manager or decorator against a budget in seconds."""

    timings: ClassVar[DefaultDict[str, List[float]]] = collections.defaultdict(list)
    name: str
    budget: float = math.inf
    elapsed: float = field(default=math.nan, init=False)
    _start_time: Optional[float] = field(default=None, init=False, repr=False)

    def start(self) -> None:
        """Start timing.

        Raises:
            RuntimeBudgetError: in case the timer is already running
        """
        if self._start_time is not None:
            raise RuntimeBudgetError(f"Timer {self.name} is already running")
        self._start_time = time.perf_counter()

    def stop(self) -> float:
        """Stop timing, record the duration and log it.

        Returns:
            The elapsed time in seconds

        Raises:
            RuntimeBudgetError: in case the timer is not running
        """
        if self._start_time is None:
            raise RuntimeBudgetError(f"Timer {self.name} is not running")
        self.elapsed = time.perf_counter() - self._start_time
        self._start_time = None
        self.timings[self.name].append(self.elapsed)
        if self.exceeded:
            _LOGGER.warning(
                "%s took %.3f s, over its budget of %.3f s",
                self.name,
                self.elapsed,
                self.budget,
            )
        else:
            _LOGGER.debug("%s took %.3f s", self.name, self.elapsed)
        return self.elapsed

    @property
    def exceeded(self) -> bool:
        """Whether the last measured duration is over budget.

        Returns:
            True if the block ran longer than its budget
        """
        return not math.isnan(self.elapsed) and self.elapsed > self.budget

    @classmethod
    def total(cls, name: str) -> float:
        """Total time recorded under a name.

        Args:
            name: The timer name

        Returns:
            The summed duration, 0 if nothing was recorded
        """
        return math.fsum(cls.timings.get(name, []))

    @classmethod
    def clear(cls) -> None:
        """Forget all recorded timings."""
        cls.timings.clear()

    def __enter__(self) -> RuntimeBudget:
        self.start()
        return self

    def __exit__(self, *exc_info: Any) -> None:
        self.stop()
