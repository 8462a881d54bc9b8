from ._ltj import (
    ConvergenceError,
    IncompatibleTheorem,
    SchemaError,
    campaign,
    check_all,
    constants,
    ensemble,
    evaluate,
    gamma,
    lemma1,
    lemma2,
    normalize_spec,
    search,
    spectrum,
    stabilization,
)

__all__ = [
    "ConvergenceError",
    "IncompatibleTheorem",
    "SchemaError",
    "campaign",
    "check_all",
    "constants",
    "ensemble",
    "evaluate",
    "gamma",
    "lemma1",
    "lemma2",
    "normalize_spec",
    "search",
    "spectrum",
    "stabilization",
]
