"""Superselection-compliant bosonic states and their dual-rail qubit images."""

from .bqc import (
    LocalGate,
    QubitState,
    apply_local,
    collective_op,
    controlled_phase_extract,
    entanglement_entropy,
    is_product,
    local_gate_to_mode,
)
from .config import ResourceError
from .encodings import cat_to_bqc, fock_overlap, plus_minus_modes
from .extraction import (
    ExtractionResult,
    SiteLayout,
    extraction_params,
    kerr_then_project,
    project_bqc,
)
from .fock import FockState, annihilate, create, fock_in_mode, inner, vacuum
from .kernels import BACKEND
from .modes import ModeVector, balanced_decomposition, mode_overlap, orthonormal_complete
from .ssrc import (
    GateSpec,
    SSRCState,
    apply_gate,
    coherent_limit_exact,
    jordan_schwinger,
    poisson_amplitude,
    spin_coherent,
    ssrc_to_cv,
    ssrc_to_fock,
)

__version__ = "0.1.0"
