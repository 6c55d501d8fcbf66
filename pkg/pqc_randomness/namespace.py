""" namespace module - declares the typed fields an experiment file may set

A NameSpace groups config fields under a name.  In the experiment file each field is written as
"{namespace}.{field}", e.g. "experiment.n_states = 10000".  The harness declares its fields once, then
hands the namespace to config_object.Config, which reads and converts every field.

MODULE CLASSES
--------------
NameSpace - an ordered collection of (field_name, type, default) entries
"""

# Standard Library Imports
from typing import Any, Iterator, Tuple

# Application level imports
from pqc_randomness._logger import logger


class NameSpace():
    """ an ordered collection of (field_name, type, default) entries

    INSTANCE VARIABLES
    ------------------
    name: str
        - prefix of every field of this namespace in the experiment file; must not contain '.'
    entries: list
        - the declared entries, in declaration order.  Field names are stored lower case, matching configparser.

    METHODS
    -------
    get_name(self) -> str
        - simple getter for the name of the namespace
    add_entry(self, field_name: str, typ: type, default: Any) -> Tuple[str, type, Any]
        - declare a new field
    has_field(self, field_name: str) -> bool
        - check whether a field is declared
    """

    def __init__(self, name: str):
        if not isinstance(name, str) or len(name) == 0 or "." in name:
            msg = f"a namespace name must be a non empty string without '.' characters.  Instead, {name!r} was passed."
            logger.error(msg)
            raise ValueError(msg)
        self.name = name
        self.entries = []

    def __iter__(self) -> Iterator[Tuple[str, type, Any]]:
        return iter(self.entries)

    def get_name(self) -> str:
        return self.name

    def add_entry(self, field_name: str, typ: type, default: Any) -> Tuple[str, type, Any]:
        """ Declare a new field on this NameSpace

        Parameters
        ----------
        field_name: str
            - the name of the field, without the namespace prefix
        typ: type
            - the type the field is converted into; the config reader needs a handler for it
        default: Any
            - the value used when the experiment file does not set the field

        Raises
        ------
        TypeError
            - when field_name is not a string, typ is not a type, or default is not an instance of typ
        ValueError
            - when field_name is empty or already declared

        Returns
        -------
        Tuple[str, type, Any]
            - the entry as stored, with field_name lower cased
        """
        NameSpace.validate_entry(field_name, typ, default)

        if self.has_field(field_name):
            err_msg = f"config field {field_name} already exists inside of namespace {self.name}."
            logger.error(err_msg)
            raise ValueError(err_msg)

        entry = (field_name.lower(), typ, default)
        self.entries.append(entry)
        return entry

    def has_field(self, field_name: str) -> bool:
        search = field_name.lower()
        return any(entry[0] == search for entry in self.entries)

    @staticmethod
    def validate_entry(field_name: str, typ: type, default: Any) -> None:
        """ check an entry for correct types and format

        Raises
        ------
        TypeError
            - field_name is not a string, typ is not a type, or default is not of type typ
        ValueError
            - field_name is empty
        """
        err_str = f"field_name: {field_name} | typ: {typ} | default: {default}"

        if not isinstance(field_name, str):
            err_msg = f"a config field_name must be of type string.  Instead, a {type(field_name)} was passed.\ndetails - {err_str}"
            logger.error(err_msg)
            raise TypeError(err_msg)

        if len(field_name) == 0:
            err_msg = f"a config field_name must not be empty.\ndetails - {err_str}"
            logger.error(err_msg)
            raise ValueError(err_msg)

        if not isinstance(typ, type):
            err_msg = f"typ should be the type of the config field.  Instead, a {type(typ)} was passed.\ndetails - {err_str}"
            logger.error(err_msg)
            raise TypeError(err_msg)

        if not isinstance(default, typ):
            err_msg = f"default should be of the type specified by typ.  Instead, a {type(default)} was passed.\ndetails - {err_str}"
            logger.error(err_msg)
            raise TypeError(err_msg)
