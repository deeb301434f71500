//! Shared benchmark configuration.

use std::time::Duration;

use criterion::Criterion;

/// Short measurement windows: the workloads are deterministic and small.
pub fn default_criterion() -> Criterion {
    Criterion::default()
        .warm_up_time(Duration::from_millis(500))
        .measurement_time(Duration::from_secs(2))
        .sample_size(20)
}
