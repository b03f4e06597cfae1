"""Certified entanglement bounds from stabilizer-generator measurements."""
from .bounds import (
    BoundResult,
    CertificateCheck,
    InfeasibleDataError,
    MeasurementRecord,
    Method,
    Quantity,
    SolverError,
    UnsupportedSpecError,
    compute_bound,
    fidelity_bound_closed,
    fidelity_bound_lp,
    fidelity_dual_certificate,
    gre_bound_closed,
    gre_bound_general,
    gre_bound_lp,
    gre_exact_dense,
    gre_exact_symmetric,
    negativity_bound_closed,
    verify_box_cluster_certificate,
)
from .estimators import FidelityBound, GREBound, NegativityBound
from .io import MeasurementFileError, dump_measurement, load_measurement, parse_measurement
from .noise import DEFAULT_GAMMA_T, DephasingScenario, dephase, generator_outcomes
from .pauli import PauliString, StabilizerSpec, group_element, multiply
from .symstate import SymState

__version__ = "0.1.0"

__all__ = [
    "BoundResult", "CertificateCheck", "InfeasibleDataError", "MeasurementRecord", "Method",
    "Quantity", "SolverError", "UnsupportedSpecError", "compute_bound", "fidelity_bound_closed",
    "fidelity_bound_lp", "fidelity_dual_certificate", "gre_bound_closed", "gre_bound_general",
    "gre_bound_lp", "gre_exact_dense", "gre_exact_symmetric", "negativity_bound_closed",
    "verify_box_cluster_certificate", "FidelityBound", "GREBound", "NegativityBound",
    "MeasurementFileError", "dump_measurement", "load_measurement", "parse_measurement",
    "DEFAULT_GAMMA_T", "DephasingScenario", "dephase", "generator_outcomes",
    "PauliString", "StabilizerSpec", "group_element", "multiply", "SymState",
]
