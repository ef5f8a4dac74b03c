"""Identifiability of static nonlinear networks on DAGs.

Symbolic measured-node responses, measurement planning, constructive
identification of edge polynomials from sink measurements, and verified
non-identifiability witnesses.
"""

from .errors import (
    AmbiguityError,
    CycleError,
    DegreeTooLow,
    DuplicateAbscissa,
    GraphError,
    InconsistentSamples,
    InvalidEdgeFunction,
    NetIdentError,
    NotAShift,
    SizeLimitExceeded,
    UnknownNodeError,
    UnreachedEdge,
)
from .graph_core import Graph
from .network import Network
from .polyfun import FunctionClass, Poly, classify, interpolate, periodicity_impossible, recover_shift, shift_argument
from .response import (
    DelayedInput,
    MPoly,
    build_response,
    delay_shift,
    eval_response,
    evaluate_response,
    format_mpoly,
    responses_equal,
    restrict_to_single_input,
    verify_edge_slice_shape,
)
from .simulate import Trajectory, consistency_check, run
from .identify import (
    MeasurementPlan,
    PeelMode,
    ResponseOracle,
    identify_incoming,
    identify_network,
    measured_oracles,
    measurement_plan,
    oracle_from_mpoly,
    oracle_from_network,
    peel_upstream,
    run_identification,
)
from .counterexamples import AmbiguityWitness, bridge_network, gauge_pair, linear_bridge_pair

__version__ = "0.1.0"
