from .inference import (
    WILCOXON_EXACT_MAX_N,
    DegenerateDataError,
    OneWayAnova,
    PairedSample,
    PairwiseResult,
    TestResult,
    TwoWayResult,
    anova_oneway,
    anova_twoway_2x2,
    kruskal_posthoc,
    kruskal_wallis,
    paired_t,
    percent_change,
    shapiro_wilk,
    wilcoxon_signed_rank,
)
from .study import (
    CELL_ORDER,
    EXPORT_COLUMNS,
    EXPORT_HEADER,
    MEASURES,
    SchemaError,
    analyze_study,
    condition_label,
    load_table,
    plot_data_csv,
    report_json,
    report_text,
)

__all__ = [
    "CELL_ORDER",
    "EXPORT_COLUMNS",
    "EXPORT_HEADER",
    "MEASURES",
    "WILCOXON_EXACT_MAX_N",
    "DegenerateDataError",
    "OneWayAnova",
    "PairedSample",
    "PairwiseResult",
    "SchemaError",
    "TestResult",
    "TwoWayResult",
    "analyze_study",
    "anova_oneway",
    "anova_twoway_2x2",
    "condition_label",
    "kruskal_posthoc",
    "kruskal_wallis",
    "load_table",
    "paired_t",
    "percent_change",
    "plot_data_csv",
    "report_json",
    "report_text",
    "shapiro_wilk",
    "wilcoxon_signed_rank",
]
