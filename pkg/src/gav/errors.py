"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`GavError`;
the CLI maps them to exit code 65 (data error).
"""


class GavError(Exception):
    pass


# field / polynomial layer
class NonPrimeModulus(GavError):
    pass


class NoIrreduciblePolynomialFound(GavError):
    pass


class PolySyntaxError(GavError):
    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
            if text is not None:
                message += f"\n  {text}\n  {' ' * position}^"
        super().__init__(message)


class UnknownVariable(PolySyntaxError):
    pass


class InconsistentVariableLists(GavError):
    pass


class NotUnivariate(GavError):
    pass


class ZeroPolynomial(GavError):
    pass


class ConstantPolynomial(GavError):
    pass


class ExactDivisionFailure(GavError):
    pass


# presentations
class PresentationMismatch(GavError):
    pass


class AlphaNotFactored(GavError):
    pass


class NotARoot(GavError):
    pass


class ShapeMismatch(GavError):
    pass


class FieldMismatch(GavError):
    pass


# exponential maps
class UnverifiedMap(GavError):
    pass


class NonInvariantDenominator(GavError):
    pass


class PreconditionViolation(GavError):
    pass


# filtrations
class ZeroElement(GavError):
    pass


class GcdConditionFails(GavError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class NotShifted(GavError):
    pass


class HomogenizationFailed(GavError):
    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


# classification
class LineNotTrusted(GavError):
    pass


class MissingWitness(GavError):
    pass


class ConditionIFails(GavError):
    pass


class ConditionIIIFails(GavError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class GammaNotConstant(GavError):
    pass
