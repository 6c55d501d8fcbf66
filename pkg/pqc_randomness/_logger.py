""" initializes the logger for the pqc_randomness package.  This logger is shared by every module.

Log set up can be modified through the following environment variables.
    1. PQC_LOG_LEVEL - the level applied by environment.Environment at startup. "INFO" by default.
    2. PQC_LOG_LOCATION - directory to write a daily log file into.  No file is written when unset.
"""
# Standard Library Imports
import logging, os
from datetime import date

LOG_LOCATION = os.environ.get("PQC_LOG_LOCATION", default="")

log_format = '%(levelname)s | %(asctime)s | %(name)s | line %(lineno)d | %(message)s'
date_format = '%m/%d/%Y %I:%M:%S %p'
formatter = logging.Formatter(fmt=log_format, datefmt=date_format)

stream_handler = logging.StreamHandler()
stream_handler.setFormatter(formatter)

logger = logging.getLogger("pqc_randomness")
logger.addHandler(stream_handler)

# the file handler only exists when a location was asked for
if LOG_LOCATION != "":
    os.makedirs(LOG_LOCATION, exist_ok=True)
    file_handler = logging.FileHandler(filename=os.path.join(LOG_LOCATION, f'{date.today()}-pqc.log'), delay=True)
    file_handler.setFormatter(formatter)
    logger.addHandler(file_handler)
