"""Temporal nodes Bayesian networks.

Discrete Bayesian networks whose temporal nodes describe *when* a variable
changed, not just what it changed to: each non-default state pairs a value
with a relative time interval, and one default state means no change over
the whole covered range. The package provides model definition and
validation, exact inference, sessions that anchor absolutely-timed event
reports onto the relative intervals, a trajectory sampler, and a
prediction-quality harness.
"""

from .accident import accident_network
from .errors import (
    DuplicateObservationError,
    EmptyTierError,
    InvalidNetworkError,
    JointSizeError,
    ModelFormatError,
    NoPendingObservationError,
    RangeOverflowError,
    TNBNError,
    UnanchoredSessionError,
    UnknownNodeError,
    UnknownStateError,
    ZeroProbabilityEvidenceError,
)
from .inference import (
    CompiledNetwork,
    Distribution,
    Factor,
    JointTable,
    compile_network,
    evidence_probability,
    joint_enumerate,
    posterior,
)
from .model import (
    AllenRelation,
    ConditionalTable,
    IntervalLayout,
    NetworkSpec,
    NodeKind,
    NodeSpec,
    NodeState,
    TimeInterval,
    Violation,
    allen_relation,
    interval_layout,
    resolve_interval,
    state_enumeration,
    toposort,
    validate,
)
from .modelfile import (
    load_event_log,
    load_network,
    network_from_dict,
    network_to_dict,
    parse_event_log,
    save_network,
)
from .session import (
    Forecast,
    ObservedEvent,
    PredictionReport,
    ResolvedObservation,
    Scenario,
    Session,
    open_session,
)
from .simulate import (
    CONDITIONS,
    EvalReport,
    NodeTiers,
    Trajectory,
    TrajectoryEntry,
    accuracy_score,
    evaluate,
    node_tiers,
    rbs_score,
    sample_trajectory,
    trial_seed,
)

__version__ = "0.1.0"

__all__ = [
    "AllenRelation",
    "CONDITIONS",
    "CompiledNetwork",
    "ConditionalTable",
    "Distribution",
    "DuplicateObservationError",
    "EmptyTierError",
    "EvalReport",
    "Factor",
    "Forecast",
    "IntervalLayout",
    "InvalidNetworkError",
    "JointSizeError",
    "JointTable",
    "ModelFormatError",
    "NetworkSpec",
    "NoPendingObservationError",
    "NodeKind",
    "NodeSpec",
    "NodeState",
    "NodeTiers",
    "ObservedEvent",
    "PredictionReport",
    "RangeOverflowError",
    "ResolvedObservation",
    "Scenario",
    "Session",
    "TNBNError",
    "TimeInterval",
    "Trajectory",
    "TrajectoryEntry",
    "UnanchoredSessionError",
    "UnknownNodeError",
    "UnknownStateError",
    "Violation",
    "ZeroProbabilityEvidenceError",
    "accident_network",
    "accuracy_score",
    "allen_relation",
    "compile_network",
    "evaluate",
    "evidence_probability",
    "interval_layout",
    "joint_enumerate",
    "load_event_log",
    "load_network",
    "network_from_dict",
    "network_to_dict",
    "node_tiers",
    "open_session",
    "parse_event_log",
    "posterior",
    "rbs_score",
    "resolve_interval",
    "sample_trajectory",
    "save_network",
    "state_enumeration",
    "toposort",
    "trial_seed",
    "validate",
    "__version__",
]
