//! Monte Carlo tree search for minimum-weight truss design with mixed
//! discrete and continuous sizing and shape variables.
//!
//! The pieces, bottom up:
//!
//! - [`model`]: truss data, design variables, linked coordinates and weight.
//! - [`fem`]: direct stiffness analysis and constraint checks.
//! - [`design_space`]: per-round candidate lists and shrinking schedules.
//! - [`mcts`]: one round of layered tree search.
//! - [`optimizer`]: the round loop with its reward and stopping rule.
//! - [`benchmarks`]: the 10-bar, 25-bar and 220-bar problems plus small fixtures.
//! - [`io`]: problem files, configuration and reports.
//! - [`cli`]: the command-line driver.

pub mod benchmarks;
pub mod cli;
pub mod design_space;
pub mod error;
pub mod fem;
pub mod io;
pub mod mcts;
pub mod model;
pub mod optimizer;

pub use benchmarks::{build_benchmark, build_fixture, BenchmarkId, Fixture};
pub use design_space::{AccelKind, Expansion, RoundContext, ScheduleConstants};
pub use error::{ConfigError, Error, FemError, ModelError, Result, StateError};
pub use fem::{ConstraintReport, Structure, StructuralResponse};
pub use mcts::{DesignEvaluator, Evaluation};
pub use model::{DesignVector, Domain, TrussProblem, VariableSet, VariableSpec};
pub use optimizer::{optimize, Alpha, OptimizationConfig, OptimizationResult, RewardMode, RoundRecord};
