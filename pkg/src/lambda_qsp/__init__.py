"""Ancilla-based quantum state preparation: synthesis, simulation and benchmarking."""

from .circuit import Circuit, Gate, GateKind, MetricsReport, RegisterLayout, compose, counts, depth, inverse
from .diagonal import build_copy_tree, build_lambda, schedule_labels
from .parameters import (
    AmplitudeVector,
    PhaseVector,
    WalshSpectrum,
    eval_parity_form,
    phase_angles,
    ry_angles,
    rz_block_to_lambda,
    walsh_spectrum,
)
from .qasm import export_qasm, parse_qasm
from .simulator import StateVector, apply_diagonal, extract_input_register, fidelity, simulate, trace_distance
from .states import FamilyKind, StateFamily, gen_state, parse_family
from .synth import Method, SynthesisOptions, SynthesisResult, prepare_mott, prepare_osun, prepare_sun, synthesize
from .bench import BenchConfig, BenchRow, VerificationReport, run_bench, verify

__all__ = [name for name in dir() if not name.startswith("_")]
