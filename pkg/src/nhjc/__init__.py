"""nhjc: exact spectrum, spin textures and spin-winding topology of the
Jaynes-Cummings model with complex (dissipative) parameters."""

__version__ = "0.1.0"

from .boundaries import BoundaryPoint, all_boundaries, boundary_GR, boundary_R, boundary_SI
from .errors import (
    AntiWindingError,
    DegenerateStateError,
    ExceptionalPointError,
    GridTooCoarseError,
    NhjcError,
    NoBoundaryError,
    NodeCountError,
    OnBoundaryError,
    SweepConsistencyError,
    SweepSpecError,
    UndefinedTiltError,
    ValidationError,
)
from .oscillator import domain_cutoff, hermite_roots, phi, phi_pair, phi_ratio
from .params import (
    ComplexComposites,
    LevelIndex,
    ModelParams,
    coupling_scale,
    load_params,
    params_from_dict,
)
from .spectrum import BlockQuantities, EigenSolution, GapPair, block_quantities, eigen_solution, gaps
from .sweep import Axis, SweepResult, SweepSpec, run_sweep
from .texture import (
    NodeSet,
    SpinTexture,
    TextureCoefficients,
    nodes,
    standard_grid,
    texture_closed_form,
    texture_coefficients,
    texture_from_wavefunctions,
    wavefunction_components,
)
from .topology import (
    ReversalIdentityReport,
    TiltingAngle,
    WindingResult,
    tilting_angle,
    verify_reversal_identity,
    winding_direction,
    winding_grid,
    winding_integral,
    winding_node_sum,
    winding_report,
)

__all__ = [name for name in dir() if not name.startswith("_")]
