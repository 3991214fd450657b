"""Exception and warning classes raised across the package.

Input problems (malformed files, label or shape disagreements) derive from
:class:`InputError`; problems that only show up once numbers are crunched
(constant columns, null eigenvalues) derive from :class:`NumericError`.
The CLI maps these two families onto exit codes 2 and 3.
"""


class CubeCouplingError(Exception):
    """Base class for every error raised by this package."""


class InputError(CubeCouplingError, ValueError):
    pass


class NumericError(CubeCouplingError, ArithmeticError):
    pass


class ParseError(InputError):
    def __init__(self, line, reason, path=None):
        self.line = line
        self.reason = reason
        self.path = path
        where = f"{path}:" if path else "line "
        super().__init__(f"{where}{line}: {reason}")


class NonNumericCell(ParseError):
    pass


class DuplicateLabel(InputError):
    def __init__(self, label, axis="row"):
        self.label = label
        self.axis = axis
        super().__init__(f"duplicate {axis} label {label!r}")


class DimensionMismatch(InputError):
    pass


class RowMismatch(DimensionMismatch):
    pass


class ColumnMismatch(DimensionMismatch):
    pass


class BlockSizeMismatch(InputError):
    pass


class EmptyGroup(InputError):
    pass


class NegativeEntry(InputError):
    pass


class ZeroVarianceColumn(NumericError):
    def __init__(self, label, block=None):
        self.label = label
        self.block = block
        where = f" in block {block!r}" if block is not None else ""
        super().__init__(f"column {label!r}{where} has zero variance")


class ZeroVarianceTable(NumericError):
    pass


class NullEigenvalue(NumericError):
    pass


class MixedSignEigenvector(UserWarning):
    """Dominant interstructure eigenvector has entries of both signs."""


class EmptyScores(InputError):
    pass


class FixtureMissing(InputError):
    pass
