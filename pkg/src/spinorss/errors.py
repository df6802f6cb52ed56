"""Exception hierarchy shared across the package."""


class SpinorError(Exception):
    """Base class for every error raised by spinorss."""


class ConjugationMismatch(SpinorError):
    """Substitution bindings or parsed input break the conjugation involution."""


class SymbolicCoefficient(SpinorError):
    """A univariate routine received a polynomial with free symbols in its coefficients."""


class NotExactlyDivisible(SpinorError):
    pass


class VarianceMismatch(SpinorError):
    pass


class PrimednessMismatch(SpinorError):
    pass


class MixedSlots(SpinorError):
    pass


class SignatureMismatch(SpinorError):
    pass


class UpperSlot(SpinorError):
    pass


class UnknownPattern(SpinorError):
    pass


class NotUnimodular(SpinorError):
    pass


class HermiticityError(SpinorError):
    pass


class InconsistentInstantiationRank(SpinorError):
    """Symbolic elimination rank differs from the rank at a sampled instantiation.

    This means a pivot that was assumed generically nonzero vanished, i.e.
    a genericity assumption is invalid for the family.
    """


class ParseError(SpinorError):
    pass
