#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
import logging
import time

import pytest

from gaussfield.utils.exceptions import RuntimeBudgetError
from gaussfield.utils.runtimebudget import RuntimeBudget


def test_context_manager_records_timing():
    with RuntimeBudget("block") as budget:
        time.sleep(0.01)
    assert budget.elapsed >= 0.01
    assert RuntimeBudget.total("block") == pytest.approx(budget.elapsed)
    assert not budget.exceeded


def test_decorator_records_every_call():
    @RuntimeBudget("call")
    def work():
        return 1

    assert work() == 1
    assert work() == 1
    assert len(RuntimeBudget.timings["call"]) == 2


def test_exceeded_budget_is_logged(caplog):
    with caplog.at_level(logging.WARNING):
        with RuntimeBudget("slow", budget=0.0) as budget:
            time.sleep(0.001)
    assert budget.exceeded
    assert "over its budget" in caplog.text


def test_unused_budget_is_not_exceeded():
    assert not RuntimeBudget("idle").exceeded


def test_total_of_unknown_name():
    assert RuntimeBudget.total("unknown") == 0.0


def test_start_twice():
    budget = RuntimeBudget("twice")
    budget.start()
    with pytest.raises(RuntimeBudgetError):
        budget.start()


def test_stop_without_start():
    with pytest.raises(RuntimeBudgetError):
        RuntimeBudget("never").stop()


def test_clear():
    with RuntimeBudget("cleared"):
        pass
    RuntimeBudget.clear()
    assert RuntimeBudget.total("cleared") == 0.0
