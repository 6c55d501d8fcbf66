""" errors module - the exception hierarchy of the pqc_randomness package

Every exception derives from PQCError and from the builtin that describes the failure, so callers
can catch either the package error or the usual ValueError / IndexError / OSError.

MODULE CLASSES
--------------
PQCError - base class of every package error
CapacityError - a qubit count is outside the supported range
ArgumentError - an argument or argument combination is invalid
QubitIndexError - a qubit index does not exist in the register
DataError - sampled data is outside its valid domain
ConfigError - an experiment file could not be parsed; carries the location
ResultsIOError - a result file could not be written or read; carries the path
"""


class PQCError(Exception):
    """ base class of every pqc_randomness error """


class CapacityError(PQCError, ValueError):
    """ raised when a register size is outside the supported range """


class ArgumentError(PQCError, ValueError):
    """ raised for invalid arguments such as control == target or mismatched dimensions """


class QubitIndexError(PQCError, IndexError):
    """ raised when a qubit index is outside [0, n_qubits) """


class DataError(PQCError, ValueError):
    """ raised when sampled data falls outside its domain """


class ConfigError(PQCError, ValueError):
    """ raised when an experiment configuration cannot be parsed

    INSTANCE VARIABLES
    ------------------
    location: str
        - where the failure happened, e.g. "experiment.ini [full] experiment.qubits"
    """

    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class ResultsIOError(PQCError, OSError):
    """ raised when a result file cannot be written or read

    INSTANCE VARIABLES
    ------------------
    path: str
        - the file that failed
    """

    def __init__(self, message: str, path: str):
        self.path = path
        super().__init__(f"{path}: {message}")
