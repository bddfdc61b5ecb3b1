"""Exception hierarchy.

Every error carries an optional ``witness``: a small JSON-friendly object
pinpointing the offending data (a triple of morphisms, a sphere, a cell).
"""


class WorkbenchError(Exception):
    def __init__(self, message="", witness=None):
        super().__init__(message)
        self.witness = witness


class CategoryLawError(WorkbenchError):
    """A table does not describe a category."""


class AssocViolation(CategoryLawError):
    pass


class UnitViolation(CategoryLawError):
    pass


class TypeMismatch(CategoryLawError):
    pass


class FunctorLawError(WorkbenchError):
    pass


class NaturalityError(WorkbenchError):
    pass


class UnknownObject(WorkbenchError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class SizeBoundExceeded(WorkbenchError):
    pass


class NotACocone(WorkbenchError):
    pass


class NotAFibration(WorkbenchError):
    pass


class CoherenceViolation(WorkbenchError):
    def __init__(self, law, message="", witness=None):
        super().__init__(f"law ({law}) fails: {message}", witness)
        self.law = law


class EnrichedAssocViolation(WorkbenchError):
    pass


class NotRelative(WorkbenchError):
    pass


class DomainMismatch(WorkbenchError):
    pass


class SimplicialIdentityError(WorkbenchError):
    pass


class DimensionBoundExceeded(WorkbenchError):
    pass


class CyclicOneSkeleton(WorkbenchError):
    pass


class UnknownSuite(WorkbenchError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class MalformedWitness(WorkbenchError):
    pass
