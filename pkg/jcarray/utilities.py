"""
Shared plumbing of the jcarray front end and problems: the communicator,
the option table, rank-0 messages and the exception hierarchy.
"""

import textwrap

try:
    from mpi4py import MPI
except ImportError:  # serial installs run with comm=None
    MPI = None


class BaseUI:
    """
    Base of pyJCArray and every problem class.

    Subclasses declare ``defaultOptions``, a dict mapping an option name to
    ``[type, default, description]``. Names are matched case-insensitively.
    """

    defaultOptions = {}

    def __init__(self, options=None, comm=None) -> None:
        """
        Parameters
        ----------
        options : dict, optional
            Option values overriding ``defaultOptions`` (case-insensitive).
        comm : mpi4py.MPI.Intracomm, optional
            Communicator, MPI.COMM_WORLD when mpi4py is available. ``None`` runs serially.
        """
        if comm is None and MPI is not None:
            comm = MPI.COMM_WORLD
        self.comm = comm
        self.rank = 0 if comm is None else comm.rank
        self.size = 1 if comm is None else comm.size

        # Current values, keyed by lower-case name
        self.options = {
            name.lower(): default for name, (_, default, _) in self.defaultOptions.items()
        }
        for name, value in (options or {}).items():
            self.setOption(name, value)

    @classmethod
    def _optionType(cls, name):
        for key, (kind, _, _) in cls.defaultOptions.items():
            if key.lower() == name.lower():
                return kind
        return None

    def setOption(self, name, value):
        """
        Set an option value. Unknown names are reported and ignored.

        Parameters
        ----------
        name : str
            Option name, any case.
        value
            New value. An int is accepted for a float option.
        """
        kind = self._optionType(name)
        if kind is None:
            self._JCWarning(f"'{name}' is not a valid option and was ignored.")
            return
        if kind is float and isinstance(value, int) and not isinstance(value, bool):
            value = float(value)
        if not isinstance(value, kind):
            raise self._JCError(
                f"Option '{name}' takes a {kind.__name__}, got {type(value).__name__} {value!r}."
            )
        self.options[name.lower()] = value

    def getOption(self, name):
        """Current value of option ``name`` (any case)."""
        try:
            return self.options[name.lower()]
        except KeyError:
            raise AttributeError(f"{name!r} is not a valid option name") from None

    @staticmethod
    def _optionLines(title, table):
        lines = [title]
        for name, (kind, value, description) in table.items():
            shown = f"'{value}'" if kind is str else value
            lines.append(f"  {name} ({kind.__name__}) = {shown}")
            lines.extend("      " + line.strip() for line in description.splitlines())
        return lines

    def printOptions(self):
        """Print the current option values on the root rank."""
        table = {
            name: [kind, self.getOption(name), description]
            for name, (kind, _, description) in self.defaultOptions.items()
        }
        for line in self._optionLines(f"{self._header()} options:", table):
            self._pp(line)

    @classmethod
    def printDefaultOptions(cls):
        """Print every option of the class with its default and description."""
        for line in cls._optionLines(f"{cls.__name__} default options:", cls.defaultOptions):
            print(line)

    def _pp(self, printStr):
        """Print on the root rank only."""
        if self.rank == 0:
            print(printStr)

    def _header(self):
        header = type(self).__name__
        if hasattr(self, "name"):
            header += f" ('{self.name}')"
        return header

    def _info(self, message):
        """Print ``message`` when the printLevel option is positive."""
        if "printlevel" in self.options and self.getOption("printLevel") <= 0:
            return
        prefix = f"{self._header()} Info: "
        indent = " " * 6
        self._pp(textwrap.fill(message, 100, initial_indent=prefix, subsequent_indent=indent))

    def _JCWarning(self, message):
        self._pp(_boxMessage(f"{self._header()} Warning", message))

    def _JCError(self, message, errorType=None):
        """Build (not raise) an ``errorType`` exception labelled with this object."""
        errorType = Error if errorType is None else errorType
        return errorType(self._header(), message)


def _boxMessage(title, message, width=78):
    """``title: message`` word-wrapped inside a ``width``-column box."""
    rule = "+" + "-" * width + "+"
    lines = textwrap.wrap(f"{title}: {message}", width - 2) or [""]
    body = "\n".join(f"| {line:<{width - 2}} |" for line in lines)
    return f"\n{rule}\n{body}\n{rule}\n"


class Error(Exception):
    """
    Root of the jcarray exceptions. The string form boxes the message under
    the name of the object that raised it.
    """

    def __init__(self, objName, message):
        self.objName = objName
        self.message = message
        Exception.__init__(self, _boxMessage(f"{objName} Error", message))


# Invalid physical or numerical input
class ParameterError(Error):
    pass


class NegativeRate(ParameterError):
    pass


class NonPositiveUnit(ParameterError):
    pass


class NonFiniteDetuning(ParameterError):
    pass


class PreconditionViolation(ParameterError):
    pass


class SubcriticalCoupling(ParameterError):
    pass


class DivisionByZeroRate(ParameterError):
    pass


class LossyParams(ParameterError):
    pass


class InvalidLattice(ParameterError):
    pass


class InvalidDisorder(ParameterError):
    pass


class EmptyWindow(ParameterError):
    pass


class EmptyChain(ParameterError):
    pass


# A well-posed input hit a pole or singular point
class ComputationError(Error):
    pass


class DegenerateDenominator(ComputationError):
    pass


class SingularSystem(ComputationError):
    pass


class ZeroTransmission(ComputationError):
    pass


class SingularExtraction(ComputationError):
    pass


class DegenerateABCD(ComputationError):
    pass


class OrderingUnsatisfiable(ComputationError):
    pass


class UnorderedPositions(ComputationError):
    pass


# Run configuration documents
class ConfigError(Error):
    pass


class ParseError(ConfigError):
    pass


class UnknownKey(ConfigError):
    pass


class MissingField(ConfigError):
    pass


class InvalidValue(ConfigError):
    pass


class OutputError(Error):
    pass
