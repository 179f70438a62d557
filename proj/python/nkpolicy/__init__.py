"""Monetary-policy rules on the new-Keynesian Phillips curve.

Thin Python surface over the C++ core: linear rational-expectations
analysis, commitment/discretion solvers, determinacy maps, impulse
responses, and misspecification stress tests.
"""

from nkpolicy._core import (  # noqa: F401
    BifurcationType,
    BifurcationVerdict,
    BoundarySide,
    ClosedLoopSystem,
    DeterminacyClass,
    DiscretionSolution,
    EigenReport,
    FeedbackClass,
    FeedbackInterval,
    IRFPath,
    IdentificationError,
    InitialStateVariant,
    InstrumentConvention,
    InternalInconsistencyError,
    IntervalKind,
    InvalidParamsError,
    InvalidSystemError,
    IrfMode,
    LinearRESystem,
    MisspecReport,
    ModelParams,
    NonInvertibleRuleError,
    NotDeterminateError,
    PolicyRule,
    RamseyEnvelope,
    RamseySolution,
    SingularProjectionError,
    StableProjection,
    StressPoint,
    StressPointStatus,
    StressSettings,
    SweepAxis,
    SweepMode,
    SweepRow,
    anchor_inflation,
    bifurcation_at,
    build_open_loop,
    classify_bk,
    classify_feedback,
    close_loop,
    closed_loop_inflation_eigenvalue,
    compensating_kappa,
    compensating_kappa_flipped,
    controllability_rank,
    derive_path_seeds,
    discretion_reduced_form_interval,
    discretion_solution,
    eigenvalues,
    expected_irf,
    foc_recursion_check,
    format_irf_csv,
    format_stress_csv,
    format_sweep_csv,
    forward_projection,
    instrument_from_target,
    is_stabilizable,
    misspecification_stress,
    negative_feedback_interval,
    positive_feedback_set,
    ramsey_lambda,
    ramsey_loss,
    ramsey_loss_tail_bound,
    ramsey_reduced_form_interval,
    ramsey_rule,
    simulate,
    sweep,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
