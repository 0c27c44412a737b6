"""Exception hierarchy shared by all modules."""


class SkeinError(Exception):
    pass


class DiagramError(SkeinError, ValueError):
    pass


class DiagramSyntaxError(DiagramError):
    """Malformed token in a Gauss or PD code."""


class SemanticsError(DiagramError):
    """Well-formed tokens that do not describe a diagram."""


class NonPlanar(DiagramError):
    pass


class InconsistentOrientation(DiagramError):
    pass


class NotRealizable(DiagramError):
    pass


class NotAKnot(DiagramError):
    pass


class UnknownCrossing(DiagramError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class BadComponent(DiagramError):
    pass


class NonLaurentResult(SkeinError, ArithmeticError):
    pass


class LevelMismatch(SkeinError, TypeError):
    pass


class StaleSite(SkeinError):
    pass


class BadInput(SkeinError, ValueError):
    pass
