"""Exception types shared across the package."""


class PencilError(Exception):
    """A mathematical precondition on the input does not hold."""


class NotCoprimeError(PencilError, ValueError):
    pass


class DecomposableError(PencilError):
    """The rational function is (likely) decomposable: infinite spectrum."""


class ConstantFunctionError(PencilError, ValueError):
    pass


class NotFirstIntegralError(PencilError):
    pass


class NotDarbouxError(PencilError, ValueError):
    pass


class CoordinateChangeError(PencilError):
    """No admissible random coordinate change was found within the retry budget."""


class Falsification(AssertionError):
    """A proved inequality failed: an implementation defect."""
