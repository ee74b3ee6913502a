# logs.py
"""
System log store shared by every module.
Entries are kept in memory (last 100) and echoed to stderr through the
``hypoindex`` logger so stdout stays clean for machine-readable output.
"""

import logging
import sys
from datetime import datetime

MAX_ENTRIES = 100

LEVELS = {
    'INFO': logging.INFO,
    'SUCCESS': logging.INFO,
    'WARNING': logging.WARNING,
    'ERROR': logging.ERROR,
}

logger = logging.getLogger("hypoindex")
_system_logs = []


def configure(quiet=False):
    """Attach a fresh stderr handler; quiet mode keeps the store but mutes the echo"""
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(message)s"))
    logger.addHandler(handler)
    logger.setLevel(logging.CRITICAL + 1 if quiet else logging.INFO)
    logger.propagate = False


def log_message(level, component, message):
    """
    Add a timestamped log message to the system logs
    level: 'INFO', 'WARNING', 'ERROR', 'SUCCESS'
    component: 'INSTANCE', 'WINDING', 'CHERN', 'FOCK', 'FRAMES', 'ORACLE', 'CLI'
    message: The log message
    """
    if level not in LEVELS:
        raise ValueError(f"Unknown log level: {level}")

    timestamp = datetime.now().strftime("%H:%M:%S")
    log_entry = {
        "timestamp": timestamp,
        "level": level,
        "component": component,
        "message": message
    }

    _system_logs.append(log_entry)
    if len(_system_logs) > MAX_ENTRIES:
        del _system_logs[:-MAX_ENTRIES]

    logger.log(LEVELS[level], f"[{timestamp}] {level} - {component}: {message}")


def get_logs():
    """Most recent entries first"""
    return list(reversed(_system_logs))


def clear_logs():
    _system_logs.clear()


def warnings():
    """Warning texts in emission order, without timestamps"""
    return [
        f"{entry['component']}: {entry['message']}"
        for entry in _system_logs if entry['level'] == 'WARNING'
    ]
