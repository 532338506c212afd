"""Multi-objective swarm optimizer with quantum-style leader updates, a
bounded Pareto archive, decision-maker feedback, quality indicators, and a
live steering session service."""

from .archive import ParetoArchive, crowding_distances
from .core import (
    Bounds,
    ProblemSpec,
    RngBundle,
    RngStream,
    Solution,
    clamp_to_bounds,
    dominates,
    normalize_front,
)
from .dmil import (
    DmilState,
    ExpertScenario,
    FeedbackQueue,
    ScenarioFeedback,
    food_source_scores,
    load_scenario,
    simulated_expert,
    update_weights,
)
from .engine import (
    DmilConfig,
    Optimizer,
    QuantumParams,
    RunConfig,
    RunRecord,
    c1_schedule,
    entangle,
    follower_update,
    leader_update,
    run,
    superpose,
)
from .harness import BatchReport, bench, compare, export_front, import_front, run_batch
from .metrics import (
    MetricReport,
    hv_reference_point,
    hypervolume,
    igd,
    metric_report,
    psp,
    spacing,
    wilcoxon_rank_sum,
)
from .problems import Problem, ReferenceFront, get_problem, problem_spec
from .session import SessionService

__version__ = "0.1.0"

__all__ = [
    "Bounds",
    "ProblemSpec",
    "Solution",
    "RngStream",
    "RngBundle",
    "dominates",
    "clamp_to_bounds",
    "normalize_front",
    "ParetoArchive",
    "crowding_distances",
    "Problem",
    "ReferenceFront",
    "get_problem",
    "problem_spec",
    "MetricReport",
    "igd",
    "hypervolume",
    "psp",
    "spacing",
    "wilcoxon_rank_sum",
    "hv_reference_point",
    "metric_report",
    "DmilState",
    "ExpertScenario",
    "FeedbackQueue",
    "ScenarioFeedback",
    "update_weights",
    "food_source_scores",
    "simulated_expert",
    "load_scenario",
    "QuantumParams",
    "DmilConfig",
    "RunConfig",
    "RunRecord",
    "Optimizer",
    "run",
    "c1_schedule",
    "superpose",
    "entangle",
    "leader_update",
    "follower_update",
    "BatchReport",
    "run_batch",
    "compare",
    "bench",
    "export_front",
    "import_front",
    "SessionService",
    "__version__",
]
