""" Environment module - reads the optional startup values of an experiment run from os.environ

The core of this module is the 'Environment' class.  There are three values that it looks for
    1. PQC_LOG_LEVEL
        - the level of the package logger.  Sweeps log one INFO line per result row and DEBUG lines per
          ensemble, so 'INFO' is the default.
        - EXAMPLES: 'INFO' 'WARNING' 'ERROR' 'DEBUG'
    2. PQC_PROFILE
        - the section of the experiment file to read.  A file can hold several profiles, e.g. a quick
          'smoke' profile next to the 'full' sweep.
        - EXAMPLES: 'smoke' 'full' 'tdesign'
    3. PQC_CONFIG_LOCATION
        - where the experiment file lives.  "experiment.ini" by default.

Command line flags (--profile, --config) are passed in as overrides and win over the environment.

MODULE CLASSES
---------------
Environment - resolves log level, profile and experiment file location for a run.
"""


# Standard Library Imports
import os
from typing import Optional

# Application Imports
from pqc_randomness._logger import logger


class Environment():
    """ resolves log level, profile and experiment file location for a run

    INSTANCE VARIABLES
    ------------------
    _log_level: str
        - the level applied to the package logger
    _profile: str
        - the experiment file section to read
    _config_location: str
        - the experiment file path
    _config_explicit: bool
        - True when the location came from the environment or an override rather than the default
    """

    _log_level_key = "PQC_LOG_LEVEL"
    _profile_key = "PQC_PROFILE"
    _config_location_key = "PQC_CONFIG_LOCATION"

    _log_level_default = "INFO"
    _profile_default = "DEFAULT"
    _config_location_default = "experiment.ini"

    def __init__(self, profile: Optional[str] = None, config_location: Optional[str] = None,
                 log_level: Optional[str] = None):
        self._log_level = log_level or Environment._retrieve_key(Environment._log_level_key, Environment._log_level_default)
        try:
            logger.setLevel(self._log_level.upper())
        except ValueError:
            logger.error(f"{Environment._log_level_key} read in as {self._log_level}, but this is not a valid log level.  Defaulting to {Environment._log_level_default}")
            self._log_level = Environment._log_level_default
            logger.setLevel(Environment._log_level_default)
        logger.debug(f"{Environment._log_level_key} set to {self._log_level}")

        self._profile = profile or Environment._retrieve_key(Environment._profile_key, Environment._profile_default)
        logger.debug(f"{Environment._profile_key} set to {self._profile}")

        self._config_explicit = config_location is not None or Environment._config_location_key in os.environ
        self._config_location = config_location or Environment._retrieve_key(Environment._config_location_key, Environment._config_location_default)
        logger.debug(f"{Environment._config_location_key} set to {self._config_location}")

    def get_log_level(self) -> str:
        return self._log_level

    def get_profile(self) -> str:
        return self._profile

    def get_config_location(self) -> str:
        return self._config_location

    def is_config_explicit(self) -> bool:
        """ True when the experiment file was named by the user, so a missing file is an error """
        return self._config_explicit

    @staticmethod
    def _retrieve_key(env_key: str, default: str) -> str:
        """ fetch an environment value, falling back to the default """
        if env_key not in os.environ:
            logger.debug(f"{env_key} is not present in the current environment.  Defaulting {env_key} to {default}")
        return os.environ.get(env_key, default)
