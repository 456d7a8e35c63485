//! Bond percolation samples and what is measured on them.

mod components;
mod mask;
mod montecarlo;
mod predictors;
mod witness;

pub use components::{
    analyze, bfs_component_labels, components, two_core, Analysis, ComponentLabels, ComponentSummary, CoreSummary,
    UnionFind,
};
pub use mask::{sample, EdgeMask};
pub use montecarlo::{
    csv_columns, monte_carlo, thread_count, Cell, ColumnStats, McOptions, McResult, ResultRow, Summary, THREADS_ENV,
};
pub use predictors::{
    local_predictors, local_predictors_with, PredictorAudit, PredictorSets, DEFAULT_PREDICTOR_BUDGET,
};
pub use witness::{
    component_diameter, giant_path_counts, is_open_simple_path, longest_path_lb, minor_order_lb, separator_search,
    MinorWitness, Separator,
};
