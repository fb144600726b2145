"""
Error hierarchy for the neutrosophic algebra library.

Every domain failure is a subclass of NeutroError. The class name doubles as
the error name printed on the first line of a failed CLI job, followed by the
detail text, e.g. ``Singular slot=0``.
"""


class NeutroError(Exception):
    """Base class for all domain errors."""

    def __init__(self, detail: str = "", **witness):
        self.detail = detail
        self.witness = witness
        self.report: list[str] = []
        super().__init__(self.headline())

    @property
    def name(self) -> str:
        return type(self).__name__

    def headline(self) -> str:
        return f"{self.name} {self.detail}".rstrip()


# --- scalars ---
class FieldMismatch(NeutroError): pass
class FlavorViolation(NeutroError): pass
class NotInvertible(NeutroError): pass
class NotPrime(NeutroError): pass
class ScanTooLarge(NeutroError): pass

# --- polynomials ---
class NonUnitLeadingCoefficient(NeutroError): pass
class DivisionByZero(NeutroError): pass
class CharacteristicNotZero(NeutroError): pass
class SplitDegenerate(NeutroError): pass
class ZeroPolynomial(NeutroError): pass
class UnsupportedField(NeutroError): pass
class InfiniteRootSet(NeutroError): pass

# --- matrices ---
class ShapeMismatch(NeutroError): pass
class NonSquare(NeutroError): pass
class Singular(NeutroError): pass

# --- n-fold spaces ---
class InfiniteDimension(NeutroError): pass
class SpaceMismatch(NeutroError): pass
class AssignmentMismatch(NeutroError): pass
class UnsupportedRegime(NeutroError): pass
class NotABasis(NeutroError): pass
class IncompleteSum(NeutroError): pass

# --- spectral ---
class NotACharacteristicValue(NeutroError): pass
class UndecidableOverQ(NeutroError): pass
class DoesNotSplit(NeutroError): pass
class ZeroVector(NeutroError): pass
class NotInvariant(NeutroError): pass

# --- inner products ---
class NonInvertibleNorm(NeutroError): pass
class DependentInput(NeutroError): pass
class NotOrthogonal(NeutroError): pass
class UnorderedField(NeutroError): pass

# --- jobs ---
class UnknownSuite(NeutroError): pass
class MisroutedJob(NeutroError): pass
class FixtureMismatch(NeutroError): pass
class VerificationFailed(NeutroError): pass


class ParseError(NeutroError):
    """Raised by the text grammars; carries a 1-based line/column position."""

    def __init__(self, message: str, line: int = 1, column: int = 1, expected: str | None = None):
        self.line = line
        self.column = column
        self.expected = expected
        detail = f"line={line} col={column}: {message}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)
