"""Exception hierarchy shared by every kstab module."""


class KStabError(Exception):
    """Base class for all errors raised by kstab."""


class InsufficientSamples(KStabError, ValueError):
    pass


class InconsistentSamples(KStabError, ValueError):
    """Extra sample points do not lie on the interpolating polynomial.

    Usually means the sampling window starts below the point where the
    sequence becomes polynomial, or the degree bound is wrong.
    """


class OrderOutOfRange(KStabError, ValueError):
    pass


class ZeroDenominator(KStabError, ZeroDivisionError):
    pass


class InadmissibleK(KStabError, ValueError):
    pass


class SingularGram(KStabError, ValueError):
    """The torus Gram matrix is not positive definite."""


class InvalidConfig(KStabError, ValueError):
    pass


class UnsupportedParameters(KStabError, ValueError):
    pass
