"""Adiabatic exact-cover-3 simulation with fast control signals.

The heavy lifting lives in the compiled ``_core`` extension; this package
re-exports it.
"""

from ._core import (
    Instance,
    ParseError,
    brute_force,
    compile_slice,
    evolve,
    final_fidelity,
    hb_pauli,
    hp_pauli,
    min_runtime,
    paper_instance,
    parse_instance,
    rtf,
    rtf_seed_average,
    run_cli,
    scale_check,
    slice_equivalence,
    verify_ms_identity,
)

__version__ = "0.1.0"

__all__ = [
    "Instance",
    "ParseError",
    "brute_force",
    "compile_slice",
    "evolve",
    "final_fidelity",
    "hb_pauli",
    "hp_pauli",
    "min_runtime",
    "paper_instance",
    "parse_instance",
    "rtf",
    "rtf_seed_average",
    "run_cli",
    "scale_check",
    "slice_equivalence",
    "verify_ms_identity",
]
