from ._jtarch import (
    InconsistencyError,
    ParseError,
    Potential,
    bench,
    chest_clinic_json,
    compile,
    divide,
    identity,
    infer,
    marginalize,
    multiply,
    normalize,
    oracle_error,
    three_variable_json,
)

__all__ = [
    "InconsistencyError",
    "ParseError",
    "Potential",
    "bench",
    "chest_clinic_json",
    "compile",
    "divide",
    "identity",
    "infer",
    "marginalize",
    "multiply",
    "normalize",
    "oracle_error",
    "three_variable_json",
]
