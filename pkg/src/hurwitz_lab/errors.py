"""Exception hierarchy shared by all modules."""


class HurwitzLabError(Exception):
    """Base class for every error raised by this package."""


class NotPrime(HurwitzLabError):
    pass


class SizeCapExceeded(HurwitzLabError):
    pass


class OrderNotDividing(HurwitzLabError):
    pass


class NoRoot(HurwitzLabError):
    pass


class DegeneratePair(HurwitzLabError):
    pass


class SingularBranch(HurwitzLabError):
    pass


class SingularPoint(HurwitzLabError):
    pass


class NotSmooth(HurwitzLabError):
    """Curve parameters violate the smoothness condition."""


class FieldTooSmall(HurwitzLabError):
    pass


class FieldLacksRoot(HurwitzLabError):
    pass


class FieldConstructionTooLarge(HurwitzLabError):
    def __init__(self, p, required_k, cap):
        self.p = p
        self.required_k = required_k
        self.cap = cap
        super().__init__(
            f"need GF({p}^{required_k}) = {p ** required_k} elements, "
            f"above the configured cap {cap}"
        )


class PreconditionViolated(HurwitzLabError):
    pass


class ExcludedCase(HurwitzLabError):
    """Construction intentionally refused for this parameter range."""


class SeriesTruncationTooShort(HurwitzLabError):
    pass


class CharTwo(HurwitzLabError):
    pass


class CharDividesN(HurwitzLabError):
    pass
