"""Sensitivity analysis of quarterback rating rankings."""

from .errors import (
    DegenerateLineError,
    DuplicateKeyError,
    InfeasibleScenarioError,
    InputError,
    InsufficientDataError,
    ParseError,
    QBSensError,
    ValidationError,
)
from .inference import TTestResult, compare_systems, pooled_t_test, student_t_cdf
from .perturb import Scenario, ScenarioKind, apply_scenario, displayed_scenarios, parse_scenario, standard_scenarios
from .ratings import (
    ALL_SYSTEMS,
    BURKE,
    TRADITIONAL,
    WAGES_OF_WINS,
    BurkeSign,
    RatingSystem,
    Variant,
    burke_rating,
    rate,
    traditional_rating,
    wow_rating,
)
from .report import CaseStudySpec, run_case_study, run_sensitivity_report
from .sensitivity import (
    RankTable,
    SensitivitySummary,
    aggregate,
    perturbed_rank_change,
    rank_table,
    season_rank_changes,
    yearly_rank_change_sum,
)
from .stats_model import (
    Dataset,
    StatLine,
    load_dataset,
    parse_dataset,
    serialize_dataset,
    yards_per_completion,
    yards_per_sack,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_SYSTEMS",
    "BURKE",
    "BurkeSign",
    "CaseStudySpec",
    "Dataset",
    "DegenerateLineError",
    "DuplicateKeyError",
    "InfeasibleScenarioError",
    "InputError",
    "InsufficientDataError",
    "ParseError",
    "QBSensError",
    "RankTable",
    "RatingSystem",
    "Scenario",
    "ScenarioKind",
    "SensitivitySummary",
    "StatLine",
    "TRADITIONAL",
    "TTestResult",
    "ValidationError",
    "Variant",
    "WAGES_OF_WINS",
    "aggregate",
    "apply_scenario",
    "burke_rating",
    "compare_systems",
    "displayed_scenarios",
    "load_dataset",
    "parse_dataset",
    "parse_scenario",
    "perturbed_rank_change",
    "pooled_t_test",
    "rank_table",
    "rate",
    "run_case_study",
    "run_sensitivity_report",
    "season_rank_changes",
    "serialize_dataset",
    "standard_scenarios",
    "student_t_cdf",
    "traditional_rating",
    "wow_rating",
    "yards_per_completion",
    "yards_per_sack",
    "yearly_rank_change_sum",
]
