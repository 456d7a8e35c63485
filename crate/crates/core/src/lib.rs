//! Bond percolation on high-girth regular expanders.
//!
//! * [`theory`] evaluates the closed-form giant-component and 2-core
//!   forecasts.
//! * [`graph`] holds the graph type, generators, constructions and
//!   diagnostics.
//! * [`percolation`] samples percolation masks and measures them.

pub mod error;
pub mod graph;
pub mod percolation;
pub mod rng;
pub mod theory;

pub use error::{Error, Result};
pub use graph::{Graph, Region};
pub use percolation::{monte_carlo, sample, EdgeMask, McOptions, McResult, ResultRow};
pub use theory::{giant_forecast, solve_q, DegreeForecast, GiantForecast, PercolationParams};
