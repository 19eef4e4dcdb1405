"""Exception hierarchy."""


class RieszForgeError(Exception):
    """Base class for all package errors."""


class InvalidDomain(RieszForgeError, ValueError):
    pass


class OverlapError(RieszForgeError, ValueError):
    """Parts of a cut-and-translate surgery overlap in positive measure."""


class NonUniformCovering(RieszForgeError):
    """No single covering multiplicity reaches the agreement threshold."""


class DuplicateOffsets(RieszForgeError, ValueError):
    pass


class NotASubset(RieszForgeError, ValueError):
    pass


class SingularGamma(RieszForgeError):
    """The smallest eigenvalue of Gamma Gamma* is below the singularity tolerance."""


class AngleConditionViolated(RieszForgeError):
    pass


class SectionTooLarge(RieszForgeError):
    pass


class CapExceeded(RieszForgeError):
    pass
