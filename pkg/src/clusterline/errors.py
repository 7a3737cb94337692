"""Exception hierarchy shared by all modules."""


class ClusterlineError(Exception):
    """Base class for all domain errors."""

    code = "error"


class InvalidWeightVector(ClusterlineError):
    code = "invalid_weight_vector"


class ZeroClassSlope(ClusterlineError):
    code = "zero_class_slope"


class NotTubular(ClusterlineError):
    code = "not_tubular"


class NotDomestic(ClusterlineError):
    code = "not_domestic"


class NotComposable(ClusterlineError):
    code = "not_composable"


class NotInSet(ClusterlineError):
    code = "not_in_set"


class WindowExhausted(ClusterlineError):
    """No exchange partner found inside the search window; enlarge and retry."""

    code = "window_exhausted"


class AmbiguousComplement(ClusterlineError):
    """More than one exchange partner found.  Signals an implementation bug;
    the unique-complement theorem forbids this for genuine tilting sets."""

    code = "ambiguous_complement"


class DepthExhausted(ClusterlineError):
    code = "depth_exhausted"


class WrongArity(ClusterlineError):
    code = "wrong_arity"


class NodeCapExceeded(ClusterlineError):
    code = "node_cap_exceeded"
