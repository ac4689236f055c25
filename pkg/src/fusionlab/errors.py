"""Exception hierarchy with stable machine-parsable codes.

Every error carries a short ``code`` (used by the CLI's single-line error
output) and maps to a process exit status: input/schema problems exit 2,
numeric or degenerate-data problems exit 3.
"""


class FusionlabError(Exception):
    """Base class for all engine errors."""

    code = "Error"
    exit_status = 1


class InputError(FusionlabError):
    """Malformed input files, ids, or configuration."""

    exit_status = 2


class NumericError(FusionlabError):
    """Degenerate or numerically unusable data."""

    exit_status = 3


class MissingCellError(InputError):
    code = "MissingCell"


class OutOfScaleError(InputError):
    code = "OutOfScale"


class DuplicateIdError(InputError):
    code = "DuplicateId"


class UnknownLabelError(InputError):
    code = "UnknownLabel"


class UnknownItemError(InputError):
    code = "UnknownItem"


class UnknownObserverError(InputError):
    code = "UnknownObserver"


class MalformedFileError(InputError):
    code = "MalformedFile"


class ItemMismatchError(InputError):
    code = "ItemMismatch"


class LengthMismatchError(InputError):
    code = "LengthMismatch"


class InvalidConfigError(InputError):
    code = "InvalidConfig"


class FileExistsRefusalError(InputError):
    code = "FileExists"


class DegenerateLabelsError(NumericError):
    code = "DegenerateLabels"


class EmptyClassError(NumericError):
    code = "EmptyClass"


class NonFiniteError(NumericError):
    code = "NonFinite"


class ZeroVarianceError(NumericError):
    code = "ZeroVariance"


class TooFewItemsError(NumericError):
    code = "TooFewItems"


class TooFewObserversError(NumericError):
    code = "TooFewObservers"


class TooFewDyadsError(NumericError):
    code = "TooFewDyads"


class ConstantInputError(NumericError):
    code = "ConstantInput"


class AllZeroDifferencesError(NumericError):
    code = "AllZeroDifferences"


class TooFewReplicationsError(NumericError):
    code = "TooFewReplications"


class EmptyDyadsError(NumericError):
    code = "EmptyDyads"


class AsymmetricWeightsError(NumericError):
    code = "AsymmetricWeights"


class InvalidWeightError(NumericError):
    code = "InvalidWeight"


class OutOfRangeError(NumericError):
    code = "OutOfRange"


class NoMachineAdvantageWarning(UserWarning):
    """No dyad has the machine more accurate than the human; threshold is 0."""
