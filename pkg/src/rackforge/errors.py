"""Exception types shared across the package."""


class RackforgeError(Exception):
    """Base class for all errors raised by rackforge."""


class AxiomViolation(RackforgeError):
    """A table fails one of the quandle axioms Q1, Q2, Q3."""

    def __init__(self, axiom, witness):
        self.axiom = axiom
        self.witness = tuple(witness)
        super().__init__("axiom %s fails at %r" % (axiom, self.witness))


class BadUnit(RackforgeError):
    def __init__(self, omega, modulus):
        self.omega = omega
        self.modulus = modulus
        super().__init__("%d is not a unit modulo %d" % (omega, modulus))


class NotAComplex(RackforgeError):
    """Two consecutive boundary maps do not compose to zero."""


class TruncationTooLarge(RackforgeError):
    pass


class DegreeOutOfTruncation(RackforgeError):
    pass


class CoordinateOutOfRange(RackforgeError):
    pass


class NonUnitConstantTerm(RackforgeError):
    pass


class NegativeRank(RackforgeError):
    def __init__(self, k, mismatch):
        self.k = k
        self.mismatch = mismatch
        super().__init__(
            "series is not a Milnor-Moore product: rank in degree %d would be %d"
            % (k, mismatch))


class NotCoinvariant(RackforgeError):
    def __init__(self, first, second):
        self.witness = (first, second)
        super().__init__("cochain separates %r and %r, which share an orbit"
                         % (first, second))


class NotACocycle(RackforgeError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__("coboundary is nonzero at %r" % (witness,))


class NotHomogeneous(RackforgeError):
    pass


class NoConsistentSigns(RackforgeError):
    pass


class IndexOutOfRange(RackforgeError):
    pass
