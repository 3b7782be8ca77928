"""
Logging setup shared by the CLI and the long-running study harness.
"""

import logging
from pathlib import Path
from typing import Optional, Union

LOG_FORMAT = '%(asctime)s [%(levelname)s] %(message)s'


def setup_logging(
    level: Union[int, str] = logging.INFO,
    log_file: Optional[Union[str, Path]] = None,
) -> logging.Logger:
    """
    Configure the root logger with a console handler and an optional file handler.

    Calling it twice replaces the handlers installed by the previous call, so
    repeated CLI invocations inside one interpreter (tests) do not duplicate lines.

    Args:
        level: Logging level name or number
        log_file: Optional path of a log file written alongside the console

    Returns:
        logging.Logger: The package logger
    """
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())

    root = logging.getLogger()
    for handler in list(root.handlers):
        if getattr(handler, "_descentlink", False):
            root.removeHandler(handler)
            handler.close()

    handlers = [logging.StreamHandler()]
    if log_file is not None:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(str(log_file)))

    formatter = logging.Formatter(LOG_FORMAT)
    for handler in handlers:
        handler.setFormatter(formatter)
        handler._descentlink = True
        root.addHandler(handler)
    root.setLevel(level)

    return logging.getLogger("src")
