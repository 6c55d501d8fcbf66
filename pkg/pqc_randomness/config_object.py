""" this module holds the Config object that turns an experiment file into typed namespaces

A Config wraps one experiment file and one profile.  Modules declare the fields they read on a
namespace.NameSpace and register it with add_namespace; from then on config["experiment"]["n_states"]
returns the converted value.  The harness is the only registrant today, but the same file can carry
other namespaces without field name clashes.

MODULE CLASSES
--------------
Config - reads a profile of an experiment file into typed namespaces
ConfigDict - read only view of one namespace's converted fields
"""


# Standard Library Imports
from typing import Any, Callable, Dict, Iterator, Optional

# Application Imports
from pqc_randomness._logger import logger
from pqc_randomness.config_reader import ConfigReader, default_handlers
from pqc_randomness.environment import Environment
from pqc_randomness.namespace import NameSpace


class ConfigDict():
    """ read only view of one namespace's converted fields

    INSTANCE VARIABLES
    ------------------
    _config: Dict[str, Any]
        - converted fields keyed by lower case field name
    _name: str
        - the namespace name
    """

    def __init__(self, name: str):
        self._config = {}
        self._name = name

    def __getitem__(self, arg: str) -> Any:
        field = arg.lower()
        if field not in self._config:
            raise KeyError(f"{field} is missing from namespace {self._name}")
        return self._config[field]

    def __setitem__(self, key: str, value: Any):
        raise ValueError("Config fields are read from the experiment file; they cannot be set in code.")

    def __iter__(self) -> Iterator[str]:
        return iter(self._config)

    def as_dict(self) -> Dict[str, Any]:
        return dict(self._config)


class Config():
    """ reads a profile of an experiment file into typed namespaces

    INSTANCE VARIABLES
    ------------------
    _environment: Environment
        - log level, profile and file location of this run
    _config: dict[str, ConfigDict]
        - registered namespaces by name
    _config_reader: ConfigReader
        - parses and converts fields; comes with the IntRange and Interval handlers registered

    METHODS
    -------
    add_namespace(self, namespace: NameSpace) -> ConfigDict
        - read every field of namespace from the active profile
    add_handler(self, typ: type, handler: Callable) -> Callable
        - register a new string to typ conversion
    """

    def __init__(self, environment: Optional[Environment] = None):
        self._environment = environment if environment is not None else Environment()
        self._config = {}
        self._config_reader = ConfigReader(self._environment)
        for typ, handler in default_handlers():
            self._config_reader.add_handler(typ, handler)

    def __getitem__(self, namespace: str) -> ConfigDict:
        if namespace not in self._config:
            raise KeyError(f"{namespace} is not a namespace in the Config dictionary.")
        return self._config[namespace]

    def __setitem__(self, key: str, value: Any):
        raise ValueError("Config namespaces must be registered with add_namespace.")

    def __iter__(self) -> Iterator[str]:
        return iter(self._config)

    def get_profile(self) -> str:
        """ the profile actually read, 'DEFAULT' when the requested one was missing """
        return self._config_reader.get_profile()

    def add_namespace(self, namespace: NameSpace) -> ConfigDict:
        """ Read every field of namespace from the active profile

        Parameters
        ----------
        namespace: NameSpace
            - the declared fields

        Raises
        ------
        ValueError
            - when a namespace of the same name was already registered
        TypeError
            - when a field's type has no handler
        ConfigError
            - when a present field cannot be converted

        Returns
        -------
        ConfigDict
            - the converted fields
        """
        name = namespace.get_name()
        logger.debug(f"Attempting to add namespace {name} to the config dictionary.")

        if name in self._config:
            msg = f"namespace {name} already exists inside of the config dictionary."
            logger.error(msg)
            raise ValueError(msg)

        section = ConfigDict(name)
        for field_name, typ, default in namespace:
            section._config[field_name] = self._config_reader.read_field(f"{name}.{field_name}", typ, default)
        self._config[name] = section

        logger.debug(f"finished adding config namespace {name} to the Config.")
        return section

    def add_handler(self, typ: type, handler: Callable) -> Callable:
        return self._config_reader.add_handler(typ, handler)
