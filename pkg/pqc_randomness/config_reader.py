""" config_reader module - reads experiment file fields and keeps track of type handlers

The core of this module is the ConfigReader.  Using an environment.Environment it finds the experiment
file, reads it with a ConfigParser, and converts requested fields into typed values with a registered
handler per type.  Sections of the file are profiles; values missing from the active profile fall back
to [DEFAULT], and fields missing from both use the default declared on the namespace.

A field that is present but cannot be converted aborts the run with a ConfigError naming the file,
section and key.  Sweeps can take minutes, so a typo must never silently become a default.

MODULE CLASSES
--------------
IntRange - an inclusive integer range written "a..b" (or a single "a")
Interval - a half open real interval [lo, hi) written "lo:hi"; bounds may use pi, e.g. "-pi:pi"
ConfigReader - reads experiment fields and keeps track of type handlers

MODULE FUNCTIONS
----------------
list_converter(element: str) -> List[str]
parse_int_range(text: str) -> IntRange
parse_interval(text: str) -> Interval
"""


# Standard Library Imports
import os
import re
from configparser import ConfigParser, Error as ConfigParserError
from dataclasses import dataclass
from typing import Any, Callable, List, Tuple

# Third party imports
import numpy as np

# Application Imports
from pqc_randomness._logger import logger
from pqc_randomness.environment import Environment
from pqc_randomness.errors import ConfigError
from pqc_randomness.namespace import NameSpace


@dataclass(frozen=True)
class IntRange():
    """ inclusive integer range [first, last] """
    first: int
    last: int

    def __post_init__(self):
        if self.last < self.first:
            raise ValueError(f"range {self.first}..{self.last} is empty")

    def __iter__(self):
        return iter(range(self.first, self.last + 1))

    def __str__(self) -> str:
        return str(self.first) if self.first == self.last else f"{self.first}..{self.last}"


@dataclass(frozen=True)
class Interval():
    """ half open parameter interval [lo, hi) in radians """
    lo: float
    hi: float

    def __post_init__(self):
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)) or self.hi <= self.lo:
            raise ValueError(f"interval [{self.lo}, {self.hi}) must be finite and non empty")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def __str__(self) -> str:
        return f"{self.lo!r}:{self.hi!r}"


_PI_TOKEN = re.compile(r"^([+-]?)(\d*\.?\d*)\*?pi$")


def _parse_angle(token: str) -> float:
    """ parse a float, or a multiple of pi such as '2pi', '-pi', '0.5*pi' """
    token = token.strip().lower()
    match = _PI_TOKEN.match(token)
    if match is None:
        return float(token)
    sign = -1.0 if match.group(1) == "-" else 1.0
    coefficient = float(match.group(2)) if match.group(2) not in ("", ".") else 1.0
    return sign * coefficient * np.pi


def list_converter(element: str) -> List[str]:
    """ convert '[a, b, c]' (brackets optional) into a list of stripped strings; '[]' is the empty list

    Raises
    ------
    TypeError
        - if 'element' is not a string
    ValueError
        - if only one of the brackets is present
    """
    if not isinstance(element, str):
        msg = f"element for list conversion must be of type string.  Instead, a {type(element)} was passed."
        logger.error(msg)
        raise TypeError(msg)

    value = element.strip()
    if value.startswith("[") != value.endswith("]"):
        msg = f"The string representing the list has unbalanced brackets: {element}"
        logger.error(msg)
        raise ValueError(msg)
    if value.startswith("["):
        value = value[1:-1]

    return [item.strip() for item in value.split(",") if item.strip() != ""]


def parse_int_range(text: str) -> IntRange:
    """ parse 'a..b' or 'a' into an IntRange """
    parts = text.strip().split("..")
    if len(parts) == 1:
        value = int(parts[0])
        return IntRange(value, value)
    if len(parts) == 2:
        return IntRange(int(parts[0]), int(parts[1]))
    raise ValueError(f"'{text}' is not a range; expected 'a..b' or 'a'")


def parse_interval(text: str) -> Interval:
    """ parse 'lo:hi' into an Interval, e.g. '0:2pi' or '-pi:pi' """
    parts = text.strip().split(":")
    if len(parts) != 2:
        raise ValueError(f"'{text}' is not an interval; expected 'lo:hi'")
    return Interval(_parse_angle(parts[0]), _parse_angle(parts[1]))


class ConfigReader():
    """ Responsible for reading experiment fields via a ConfigParser and converting them with type handlers

    Instance Variables
    ------------------
    _location: str
        - the experiment file path; used in error locations
    _profile: str
        - the section read from; 'DEFAULT' when the requested profile does not exist
    _configparser: ConfigParser
        - the underlying parser
    _converters: dict[type, Callable]
        - maps each supported type to the parser getter that produces it
    _counter: int
        - suffix used to give every registered handler a unique getter name

    Methods
    -------
    add_handler(self, typ: type, handler: Callable) -> Callable
        - register a string to typ conversion
    read_field(self, field_name: str, typ: type, default: Any) -> Any
        - read and convert one field, falling back to default when it is absent
    """

    def __init__(self, environment: Environment):
        self._location = environment.get_config_location()
        self._profile = environment.get_profile()

        self._configparser = ConfigParser(
            strict=True,
            converters={
                'list': list_converter
            }
        )

        if not os.path.exists(self._location):
            if environment.is_config_explicit():
                msg = f"experiment file {self._location} does not exist."
                logger.error(msg)
                raise ConfigError(msg, self._location)
            logger.debug(f"experiment file {self._location} does not exist.  Field defaults will be used.")
        else:
            try:
                with open(self._location) as f:
                    self._configparser.read_file(f)
            except ConfigParserError as e:
                logger.error(f"could not parse experiment file {self._location}: {e}")
                raise ConfigError(str(e), self._location) from e

        if self._profile != "DEFAULT" and not self._configparser.has_section(self._profile):
            logger.error(f"profile was read in as {self._profile}, but no section exists for it in {self._location}.  Using 'DEFAULT'.")
            self._profile = "DEFAULT"

        self._converters = {
            list: self._configparser.getlist,
            int: self._configparser.getint,
            float: self._configparser.getfloat,
            bool: self._configparser.getboolean,
            str: self._configparser.get
        }
        self._counter = 0

    def get_profile(self) -> str:
        return self._profile

    def read_field(self, field_name: str, typ: type, default: Any) -> Any:
        """ Read a field from the experiment file and convert it into type typ

        Parameters
        ----------
        field_name: str
            - the full key, "{namespace}.{field}"
        typ: type
            - the type to convert into; needs a registered handler
        default: Any
            - returned when the field is absent from the profile and from [DEFAULT]

        Raises
        ------
        TypeError
            - when typ has no handler, or the entry is malformed
        ConfigError
            - when the field is present but its handler rejects the text

        Returns
        -------
        Any
            - the converted value
        """
        NameSpace.validate_entry(field_name, typ, default)

        if typ not in self._converters:
            msg = f"No handler exists to convert strings into type {typ}."
            logger.error(msg)
            raise TypeError(msg)

        try:
            result = self._converters[typ](self._profile, field_name, fallback=default)
        except Exception as e:
            location = f"{self._location} [{self._profile}] {field_name}"
            logger.error(f"could not parse config field {location}: {e}")
            raise ConfigError(str(e), location) from e

        logger.debug(f"read config field {field_name} as {result}.")
        return result

    def add_handler(self, typ: type, handler: Callable) -> Callable:
        """ Register a handler that converts experiment file strings into typ

        Raises
        ------
        TypeError
            - if typ is not a type, or handler is not callable
        ValueError
            - if typ already has a handler

        Returns
        -------
        Callable
            - the parser getter created for typ
        """
        if not isinstance(typ, type):
            msg = f"the typ parameter must specify the type that the handler converts to.  Instead, a {type(typ)} was passed."
            logger.error(msg)
            raise TypeError(msg)

        if typ in self._converters:
            msg = f"A handler for type {typ} already exists inside of the ConfigReader."
            logger.error(msg)
            raise ValueError(msg)

        if not callable(handler):
            msg = f"the handler parameter must be a Callable that converts a string to the given type typ.  Instead, a {type(handler)} was passed."
            logger.error(msg)
            raise TypeError(msg)

        # configparser exposes each converter as a get{name} method
        self._configparser.converters[f'{self._counter}'] = handler
        self._converters[typ] = getattr(self._configparser, f"get{self._counter}")
        self._counter = self._counter + 1
        return self._converters[typ]


def default_handlers() -> List[Tuple[type, Callable]]:
    """ the domain handlers every experiment reader registers """
    return [(IntRange, parse_int_range), (Interval, parse_interval)]
