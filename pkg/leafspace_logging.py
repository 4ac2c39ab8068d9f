import logging
import os
from logging.handlers import RotatingFileHandler

from dotenv import load_dotenv

load_dotenv()

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def setup_logging():
    """
    Sets up logging to a file.
    """
    log_file = os.environ.get("LEAFSPACE_LOG_FILE", "leafspace.log")
    logger = logging.getLogger("leafspace")
    logger.setLevel(logging.INFO)

    if not any(isinstance(h, RotatingFileHandler) for h in logger.handlers):
        handler = RotatingFileHandler(log_file, maxBytes=1024 * 1024, backupCount=5)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(handler)

    # integrator and verification detail
    numeric_logger = logging.getLogger("leafspace.numeric")
    if os.environ.get("LEAFSPACE_NUMERIC_LOGGING_ENABLED", "false").lower() == "true":
        numeric_log_file = os.environ.get("LEAFSPACE_NUMERIC_LOG_FILE", "leafspace_numeric.log")
        numeric_logger.setLevel(logging.DEBUG)
        numeric_logger.propagate = False
        if not numeric_logger.handlers:
            numeric_handler = RotatingFileHandler(numeric_log_file, maxBytes=1024 * 1024, backupCount=5)
            numeric_handler.setFormatter(logging.Formatter(LOG_FORMAT))
            numeric_logger.addHandler(numeric_handler)
    else:
        numeric_logger.setLevel(logging.WARNING)

    return logger
