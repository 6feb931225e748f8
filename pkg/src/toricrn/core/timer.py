"""Wall-clock timing of analysis stages (time.perf_counter)."""

import time
from contextlib import contextmanager
from enum import Enum, auto
from typing import Iterator

from .logger import get_logger

logger = get_logger(__name__)

class TimerState(Enum):
    STOPPED = auto()
    RUNNING = auto()

class Timer:
    """
    Total running time of an analysis and the duration of each named stage in it.

    Attributes:
        name (str): Label used in log records.
        stages (dict[str, float]): Seconds spent per stage, in the order the stages ran.
    """
    def __init__(self, name: str = "timer"):
        self.name = name
        self.started_at: float | None = None
        self.stages: dict[str, float] = {}
        self._open: list[str] = []
        self.state = TimerState.STOPPED

    @property
    def running(self) -> bool:
        return self.state == TimerState.RUNNING

    def start(self) -> None:
        """Start timing; a running timer is left as it is."""
        if self.running:
            logger.warning(f"Timer '{self.name}' is already running")
            return
        self.started_at = time.perf_counter()
        self.stages.clear()
        self.state = TimerState.RUNNING

    def stop(self) -> float | None:
        """Stop timing and return the total, or None if the timer was not running."""
        if not self.running:
            logger.warning(f"Timer '{self.name}' is not running")
            return None
        total = self.elapsed()
        self.started_at = None
        self.state = TimerState.STOPPED
        logger.debug(f"Timer '{self.name}' stopped after {total:.3f}s ({self.summary()})")
        return total

    def elapsed(self) -> float | None:
        if not self.running:
            return None
        return time.perf_counter() - self.started_at    # type: ignore (set while running)

    @contextmanager
    def stage(self, name: str) -> Iterator[None]:
        """
        Time the enclosed block as stage `name`, also when it raises.

        Starts the timer if needed. A stage entered twice accumulates; nested
        stages are each timed in full.
        """
        if not self.running:
            self.start()
        if name in self._open:
            raise ValueError(f"Stage '{name}' is already open in timer '{self.name}'")
        self._open.append(name)
        begin = time.perf_counter()
        try:
            yield
        finally:
            duration = time.perf_counter() - begin
            self._open.remove(name)
            self.stages[name] = self.stages.get(name, 0.0) + duration
            logger.debug(f"Stage '{name}' of '{self.name}' took {duration:.3f}s")

    def summary(self) -> str:
        return ", ".join(f"{name} {seconds:.3f}s" for name, seconds in self.stages.items()) or "no stages"
