class ConsistencyError(AssertionError):
    """An exact identity that must hold by construction failed (a bug signal).

    Raised for inexact divisions in weight/point formulas, dependent bases that
    the theory guarantees independent, and similar internal contradictions.
    Invalid user input raises ValueError instead.
    """
