"""Dynamic graph inference between heterogeneous time series with WVC.

Typical use::

    from wvcgraph import default_scenarios, run_comparison
    independent, modulated = default_scenarios()
    print(run_comparison(modulated).table())
"""

__version__ = "0.1.0"

from .errors import (
    DegeneratePositionError,
    FormatError,
    NonUniformTimeError,
    WindowTooLongError,
    WvcError,
    ZeroVarianceError,
)
from .evaluation import EvalReport, align_truth, format_table, rmse, run_comparison
from .normalization import (
    NormalizedSeries,
    WindowConfig,
    WindowStats,
    normalize,
    normalize_periodic,
    periodic_stats,
    window_count,
)
from .pcc import PccResult, fisher_z, pcc_probability_trace, pcc_result, pearson
from .period import AcfResult, PeriodProfile, autocorrelation, autocovariance, detect_period
from .synthetic import (
    GroundTruth,
    ModSegment,
    Scenario,
    ScenarioConfig,
    apply_modulation,
    default_config,
    default_scenarios,
    gen_ig_train,
    gen_sine,
    ground_truth,
    simulate,
)
from .timeseries import Interval, MultiSeries, TimeSeries, load_multiseries, save_multiseries
from .wvc import (
    GraphSnapshot,
    ProbabilityTrace,
    WvcResult,
    build_graph,
    compare_pair,
    correlation_probability,
    empirical_null_variance,
    null_variance_ratio,
    probability_trace,
    wvc,
    wvc_null_variance,
    wvc_result,
    wvc_zscore,
)
