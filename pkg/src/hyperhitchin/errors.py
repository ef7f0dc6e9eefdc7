"""Exception hierarchy.

Two families matter to callers: :class:`InputError` (the request itself is
malformed or out of scope) and :class:`NumericalFailure` (the request is valid
but a solver, tracker or stencil could not deliver at the requested accuracy).
The command line maps them to distinct exit codes.
"""


class HitchinError(Exception):
    """Base class for every error raised by this package."""


class InputError(HitchinError, ValueError):
    """Invalid or out-of-scope input."""


class InvalidRank(InputError):
    pass


class UnsupportedSeries(InputError):
    """Series D, E, F, G: outside the linear (A/B/C) setting."""


class InvalidGenus(InputError):
    pass


class DegenerateCurve(InputError):
    """The base polynomial has (numerically) repeated roots."""


class NumericalFailure(HitchinError, ArithmeticError):
    """A numerical procedure failed on valid input."""


class RootSolveFailure(NumericalFailure):
    pass


class SheetAmbiguity(NumericalFailure):
    """A continuation step cannot decide which sheet of y it lands on."""


class OnBranchPoint(NumericalFailure):
    pass


class OnRamification(NumericalFailure):
    """Evaluation point sits on a ramification point of one of the covers."""


class LambdaCollision(NumericalFailure):
    """Two eigenvalue sheets come too close along a continuation path."""


class NonConvergence(NumericalFailure):
    pass


class QuadratureFailure(NumericalFailure):
    pass


class SingularConfiguration(NumericalFailure):
    """The collocation matrix does not determine a unique spectral curve."""


class StencilFailure(NumericalFailure):
    pass


class PathInstability(NumericalFailure):
    """A perturbed configuration changed the homotopy class of an Abel path."""
