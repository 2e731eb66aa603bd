import logging
import coloredlogs
from config import Config


def _log_level():
    # Use the VERBOSE and QUIET flags from the Config class
    if Config.VERBOSE:
        return 'DEBUG'

    if Config.QUIET:
        # Nothing below CRITICAL reaches the terminal in quiet mode
        return logging.CRITICAL

    return 'INFO'


def configure_logger(name):
    """
    Return the logger for a module, installed with coloredlogs at the level selected by Config.

    The level is read when the function is called, so the CLI calls it again after it has copied the
    -v/-q flags into Config.
    """
    logger = logging.getLogger(name)
    fmt = "[%(levelname)s] %(message)s"

    coloredlogs.install(level=_log_level(), logger=logger, fmt=fmt)

    return logger
