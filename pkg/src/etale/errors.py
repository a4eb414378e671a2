"""Exception hierarchy shared by every construction in the package."""


class StructureError(Exception):
    """Base class for all structural failures."""


class AxiomError(StructureError):
    """A structure failed validation; ``report`` holds the violations."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotASupLattice(StructureError):
    pass


class NotAFrame(StructureError):
    pass


class SizeCapExceeded(StructureError):
    pass


class NotPairwiseCompatible(StructureError):
    pass


class RepresentationFailure(StructureError):
    pass


class NotEtale(StructureError):
    pass


class NotSober(StructureError):
    pass


class IdempotentsNotSpatial(StructureError):
    pass


class NotAbstractPseudogroup(StructureError):
    pass


class NotComplete(StructureError):
    pass


class NotOpenAction(StructureError):
    pass


class NotIsomorphicError(StructureError):
    """Raised by round trips whose isomorphism is guaranteed mathematically."""


class ReconstructionFailure(StructureError):
    def __init__(self, step, witness):
        super().__init__(f"reconstruction failed at {step}: {witness!r}")
        self.step = step
        self.witness = witness


class TheoremViolation(StructureError):
    def __init__(self, part, witness):
        super().__init__(f"theorem part {part} violated: {witness!r}")
        self.part = part
        self.witness = witness


class UnknownFamily(StructureError):
    pass


class InvalidParams(StructureError):
    pass


class ParseError(StructureError):
    pass


class SchemaError(StructureError):
    pass
