from dataclasses import dataclass
from enum import Enum
from typing import Callable

from ..core.constants import ExitCode
from ..core.errors import CRNError, InvariantViolation
from ..core.logger import get_logger
from ..text.report import AnalysisReport

logger = get_logger(__name__)

class Command(Enum):
    ANALYZE = "analyze"
    PHOSPHO = "phospho"
    MULTISTAT = "multistat"
    RAYS = "rays"

@dataclass
class CommandResult:
    """
    Outcome of one subcommand.

    Attributes:
        exit_code (ExitCode): Process exit code.
        report (AnalysisReport | None): Report to print; None after an input error.
        message (str | None): Diagnostic for stderr.
    """
    exit_code: ExitCode
    report: AnalysisReport | None = None
    message: str | None = None

class CommandDispatcher:
    """
    Maps subcommands to their handlers and turns handler errors into exit codes.
    """
    def __init__(self):
        """Initialize the CommandDispatcher with no registered handlers."""

        self._handlers: dict[Command, Callable[..., CommandResult]] = {}
        logger.debug("CommandDispatcher initialized")

    @property
    def commands(self) -> list[Command]:
        return list(self._handlers)

    def register(self, command: Command, callback: Callable[..., CommandResult]) -> None:
        """
        Register the handler of a subcommand.

        Args:
            command (Command): The subcommand.
            callback (Callable[..., CommandResult]): Called with the keyword arguments given to `handle`.
        """

        if self._handlers.get(command) is callback:
            logger.debug(f"Duplicate registration ignored: Command={command.name} -> {callback.__qualname__}")
            return

        if command in self._handlers:
            logger.warning(f"Replacing handler of Command={command.name} with {callback.__qualname__}")

        self._handlers[command] = callback
        logger.debug(f"Registered command: Command={command.name}, Handler={callback.__qualname__}")

    def handle(self, *, command: Command, **kwargs) -> CommandResult:
        """
        Run the handler of `command`.

        Input errors (CRNError, OSError) give exit code 1 with their message.
        Any other exception is logged with its traceback and also gives exit code 1.

        Args:
            command (Command): The subcommand to run.
            **kwargs: Passed to the handler.

        Returns:
            CommandResult: The handler's result, or an input-error result.
        """
        callback = self._handlers.get(command)
        if callback is None:
            logger.error(f"No handler for Command={command.name}")
            return CommandResult(ExitCode.INPUT_ERROR, message=f"unknown command '{command.value}'")

        logger.info(f"Running Command={command.name} -> {callback.__qualname__}")
        try:
            result = callback(**kwargs)
        except InvariantViolation as e:
            logger.exception(f"Internal consistency check failed in Command: {command.name}")
            return CommandResult(ExitCode.INPUT_ERROR, message=f"internal error: {e}")
        except (CRNError, OSError) as e:
            logger.debug(f"Command: {command.name} refused its input: {e}")
            return CommandResult(ExitCode.INPUT_ERROR, message=str(e))
        except Exception as e:
            logger.exception(f"Error while handling Command: {command.name} with {callback.__qualname__}")
            return CommandResult(ExitCode.INPUT_ERROR, message=f"unexpected error: {e}")

        logger.info(f"Command={command.name} finished with exit code {int(result.exit_code)}")
        return result
