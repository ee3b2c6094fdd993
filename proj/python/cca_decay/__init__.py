"""Emitter decay in a disordered coupled-cavity array (bindings to the C++ core)."""

from ._core import (  # noqa: F401
    SCHEMA_VERSION,
    NumericalError,
    __version__,
    autocorrelation,
    find_extrema,
    lindblad_bath_plus_mode,
    non_markovianity,
    pe_model,
    predict,
    realization_seed,
    reproduce_figure,
    run_sweep,
    sample_series,
    spectral,
    trajectory,
)
