"""Exception hierarchy shared by every module.

Each class carries an ``exit_code`` the CLI uses as its process status.
"""


class ParaprobError(Exception):
    """Base class; ``exit_code`` 2 means invalid input."""

    exit_code = 2


# logic
class ExpressionTooDeep(ParaprobError):
    pass


class ParseError(ParaprobError):
    pass


# engine
class OutOfRange(ParaprobError):
    pass


class ZeroEvidence(ParaprobError):
    pass


class Incoherent(ParaprobError):
    pass


class InvalidFrame(ParaprobError):
    pass


class InvalidTable(ParaprobError):
    pass


class DegenerateFrame(ParaprobError):
    pass


class NotNormalized(ParaprobError):
    pass


class InvalidMass(ParaprobError):
    pass


class FrameConflict(ParaprobError):
    pass


class DegenerateModel(ParaprobError):
    pass


class BadDimension(ParaprobError):
    pass


class MassMismatch(ParaprobError):
    pass


# quantum
class DimensionMismatch(ParaprobError):
    pass


class NotHermitian(ParaprobError):
    pass


class NotDensity(ParaprobError):
    pass


class NotProjector(ParaprobError):
    pass


class NotSic(ParaprobError):
    pass


class BadIndex(ParaprobError):
    pass


# search / harness
class NoConvergence(ParaprobError):
    """Raised by the fiducial optimizer; ``result`` holds the best attempt."""

    exit_code = 3

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class NotFound(ParaprobError):
    exit_code = 1
