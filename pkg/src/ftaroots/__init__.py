"""Polynomial roots by continuation through regular values."""

from .critical import CriticalStructure, critical_structure, is_regular_value, multiplicity
from .errors import (
    DegreeZero,
    DerivativeVanished,
    NewtonStalled,
    NoSignificantDerivative,
    NotMonic,
    OracleDiverged,
    PlanExhausted,
    RootFindingError,
    SizeMismatch,
    SolveFailed,
    StartExhausted,
    StepUnderflow,
    TargetCritical,
)
from .oracle import OracleConfig, match_multisets, weierstrass_roots
from .planner import PathPlan, choose_start, clearance_radius, plan_path
from .poly import (
    Polynomial,
    deflate,
    derivative,
    evaluate,
    evaluate_with_derivative,
    from_roots,
    monicize,
    random_monic,
    root_bound,
)
from .solver import Provenance, RootRecord, RootResult, solve_all, solve_callback_adapter, solve_one
from .tracker import Trace, TrackerConfig, newton_refine, track_path, track_segment

__version__ = "0.1.0"
