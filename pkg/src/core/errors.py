"""Exception hierarchy for the depth toolbox.

Every error subclasses ValueError so callers (the CLI in particular) can keep
catching ValueError for anything caused by bad input or bad parameters.
"""

from typing import Optional


class DepthToolboxError(ValueError):
    """Base class for all toolbox errors."""


class ParameterError(DepthToolboxError):
    """A numeric or categorical parameter is out of its allowed range."""


class DimensionMismatchError(DepthToolboxError):
    """Two inputs that must share a dimension do not."""


class EmptyRegionError(DepthToolboxError):
    """A support function was requested over an empty index set."""


class LevelRangeError(DepthToolboxError):
    """The trimming level leaves no depth levels to integrate over."""


class UnsupportedDepthNotionError(DepthToolboxError):
    """The requested depth notion is not available for this operation."""


class DegenerateBoxError(DepthToolboxError):
    """An integration box has no volume."""


class DegenerateBaselineError(DepthToolboxError):
    """A relative error was requested against a non-positive baseline."""


class ConfigError(DepthToolboxError):
    """An experiment configuration file is malformed."""


class ParseError(DepthToolboxError):
    """A cloud file could not be parsed."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        location = ""
        if line is not None:
            location = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(f"{message}{location}")


class NonFiniteValueError(ParseError):
    """A cloud file contains NaN or infinite entries."""


class RaggedRowError(ParseError):
    """A cloud file row has a different number of fields than the first row."""
