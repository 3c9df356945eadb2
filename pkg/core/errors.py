"""
Exception hierarchy for the Besov Lab
Library code raises these; the CLI and dashboard translate them
"""


class BesovLabError(Exception):
    """Base class for every error raised by the lab"""


class DomainError(BesovLabError, ValueError):
    """Invalid parameter, exponent, dimension or grid shape"""


class NyquistOverflowError(DomainError):
    """A dyadic level or spike frequency does not fit the frequency lattice"""


class GridMismatchError(DomainError):
    """Operands live on different grids"""


class PredictionRefusedError(DomainError):
    """Analytic prediction requested outside its validity region"""


class WitnessConstructionError(BesovLabError):
    """A witness function could not be built as specified"""


class GrowthFitError(BesovLabError):
    """Not enough usable rows to fit a growth model"""


class ConfigError(BesovLabError):
    """Configuration file is unreadable or carries invalid values"""


class ReportError(BesovLabError, OSError):
    """Writing or reading a report failed"""

    def __init__(self, path, message: str):
        self.path = str(path)
        super().__init__(f"{self.path}: {message}")
