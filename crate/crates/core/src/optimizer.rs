//! The outer round loop: reward, update process and termination.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::design_space::{initial_design, AccelKind, Expansion, RoundContext, ScheduleConstants, ScheduleSnapshot};
use crate::error::{ConfigError, Error, FemError, ModelError};
use crate::fem::{evaluate_constraints, ConstraintReport, Structure, StructuralResponse, Workspace};
use crate::mcts::{run_round, DesignEvaluator, Evaluation, RoundSettings};
use crate::model::{apply_shape, weight_of, Coordinates, DesignVector, TrussProblem, VariableSet};

/// How simulated rewards update a node's state value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RewardMode {
    /// Keep the best reward seen.
    #[default]
    Best,
    /// Running mean of rewards seen.
    Average,
}

impl RewardMode {
    /// New value after the `visits`-th reward `g` (visits already incremented).
    pub fn update(self, value: f64, visits: u32, g: f64) -> f64 {
        match self {
            RewardMode::Best => {
                if visits <= 1 {
                    g
                } else {
                    value.max(g)
                }
            }
            RewardMode::Average => value + (g - value) / visits.max(1) as f64,
        }
    }
}

/// Backpropagation rule for a reward mode.
pub fn reward_mode_backprop_adapter(mode: RewardMode) -> impl Fn(f64, u32, f64) -> f64 {
    move |value, visits, g| mode.update(value, visits, g)
}

impl FromStr for RewardMode {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "best" => Ok(RewardMode::Best),
            "average" | "avg" | "mean" => Ok(RewardMode::Average),
            _ => Err(ConfigError::UnknownRewardMode(s.to_string())),
        }
    }
}

impl fmt::Display for RewardMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RewardMode::Best => "best",
            RewardMode::Average => "average",
        })
    }
}

/// Reward for infeasible terminal designs.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "policy", rename_all = "lowercase", deny_unknown_fields)]
pub enum InfeasiblePolicy {
    #[default]
    Zero,
    /// Feasible reward scaled by `max_ratio^-exponent`.
    Penalty { exponent: f64 },
}

/// Reward scale: fixed in kg, or the best feasible weight so far.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Alpha {
    #[default]
    Adaptive,
    Fixed(f64),
}

impl FromStr for Alpha {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(Alpha::Adaptive);
        }
        match s.parse::<f64>() {
            Ok(v) if v > 0.0 && v.is_finite() => Ok(Alpha::Fixed(v)),
            Ok(v) => Err(ConfigError::OutOfRange { what: "alpha", value: v }),
            Err(_) => Err(ConfigError::OutOfRange { what: "alpha", value: f64::NAN }),
        }
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Adaptive => f.write_str("auto"),
            Alpha::Fixed(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum AlphaRepr {
    Kg(f64),
    Word(String),
}

impl Serialize for Alpha {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Alpha::Adaptive => AlphaRepr::Word("auto".into()),
            Alpha::Fixed(v) => AlphaRepr::Kg(*v),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Alpha {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match AlphaRepr::deserialize(d)? {
            AlphaRepr::Kg(v) => Ok(Alpha::Fixed(v)),
            AlphaRepr::Word(w) => w.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Terminal reward `(alpha / W)^2` for feasible designs, 0 otherwise.
pub fn terminal_reward(weight: f64, feasible: bool, alpha: f64) -> f64 {
    if feasible && weight > 0.0 && weight.is_finite() {
        let q = alpha / weight;
        q * q
    } else {
        0.0
    }
}

/// Terminal reward with a configured infeasibility policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RewardFn {
    pub alpha: f64,
    pub infeasible: InfeasiblePolicy,
}

impl RewardFn {
    pub fn reward(&self, e: &Evaluation) -> f64 {
        if e.feasible {
            return terminal_reward(e.weight, true, self.alpha);
        }
        match self.infeasible {
            InfeasiblePolicy::Zero => 0.0,
            InfeasiblePolicy::Penalty { exponent } => {
                if !e.max_ratio.is_finite() || e.max_ratio <= 0.0 {
                    0.0
                } else {
                    terminal_reward(e.weight, true, self.alpha) * e.max_ratio.powf(-exponent)
                }
            }
        }
    }
}

/// Improvement factor in percent.
pub fn improvement_factor(weight: f64, min_s: f64) -> Result<f64, ConfigError> {
    if min_s == 0.0 {
        return Err(ConfigError::ZeroReference);
    }
    Ok(((weight - min_s) / min_s).abs() * 100.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizationConfig {
    pub seed: u64,
    pub accel: AccelKind,
    pub reward_mode: RewardMode,
    pub alpha: Alpha,
    pub expansion: Expansion,
    /// UCB exploration constant.
    pub exploration: f64,
    /// Simulations per unit of log-width; `None` means three per design variable.
    pub j_mvs: Option<usize>,
    /// Percent.
    pub eta_min: f64,
    pub theta_max: u32,
    pub max_rounds: u32,
    pub reset_theta_on_improvement: bool,
    /// Start the next round from the best feasible design when a round ends infeasible.
    pub restart_from_best: bool,
    pub infeasible: InfeasiblePolicy,
    /// Relative slack on constraint ratios.
    pub constraint_tolerance: f64,
    pub schedule: ScheduleConstants,
}

impl Default for OptimizationConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            accel: AccelKind::Geometric,
            reward_mode: RewardMode::Best,
            alpha: Alpha::Adaptive,
            expansion: Expansion::default(),
            exploration: std::f64::consts::SQRT_2,
            j_mvs: None,
            eta_min: 0.01,
            theta_max: 3,
            max_rounds: 200,
            reset_theta_on_improvement: false,
            restart_from_best: true,
            infeasible: InfeasiblePolicy::Zero,
            constraint_tolerance: 1e-6,
            schedule: ScheduleConstants::default(),
        }
    }
}

impl OptimizationConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |what, value: f64| Err(ConfigError::OutOfRange { what, value });
        if !(self.eta_min > 0.0) {
            return bad("eta_min", self.eta_min);
        }
        if self.theta_max < 1 {
            return bad("theta_max", self.theta_max as f64);
        }
        if self.max_rounds < 1 {
            return bad("max_rounds", self.max_rounds as f64);
        }
        if let Alpha::Fixed(a) = self.alpha {
            if !(a > 0.0 && a.is_finite()) {
                return bad("alpha", a);
            }
        }
        if !(self.exploration >= 0.0 && self.exploration.is_finite()) {
            return bad("exploration", self.exploration);
        }
        for (what, a) in [("expansion.sizing", self.expansion.sizing), ("expansion.shape", self.expansion.shape)] {
            if !(0.0..=1.0).contains(&a) {
                return bad(what, a);
            }
        }
        if self.j_mvs == Some(0) {
            return bad("j_mvs", 0.0);
        }
        if let InfeasiblePolicy::Penalty { exponent } = self.infeasible {
            if !(exponent >= 0.0 && exponent.is_finite()) {
                return bad("infeasible.exponent", exponent);
            }
        }
        if !(self.constraint_tolerance >= 0.0) {
            return bad("constraint_tolerance", self.constraint_tolerance);
        }
        self.schedule.sizing.validate()?;
        self.schedule.shape.validate()
    }

    pub fn j_mvs_for(&self, vars: &VariableSet) -> usize {
        self.j_mvs.unwrap_or(3 * vars.len())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundRecord {
    pub round: u32,
    pub design: DesignVector,
    /// kg.
    pub weight: f64,
    pub feasible: bool,
    pub max_ratio: f64,
    /// Percent.
    pub eta: f64,
    pub theta: u32,
    pub min_s: f64,
    pub alpha: f64,
    pub schedule: ScheduleSnapshot,
    pub simulations: u64,
    pub evaluations: u64,
    pub wall_time: Duration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// The stagnation counter reached its limit.
    Converged,
    RoundCap,
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Termination::Converged => "converged",
            Termination::RoundCap => "round cap",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult {
    /// Lightest feasible design found (the initial design if none was feasible).
    pub best_design: DesignVector,
    pub best_weight: f64,
    pub best_feasible: bool,
    /// Round that produced the best design; 0 is the initial design.
    pub best_round: u32,
    pub initial_weight: f64,
    pub rounds: Vec<RoundRecord>,
    pub termination: Termination,
}

impl OptimizationResult {
    pub fn total_simulations(&self) -> u64 {
        self.rounds.iter().map(|r| r.simulations).sum()
    }

    pub fn total_time(&self) -> Duration {
        self.rounds.iter().map(|r| r.wall_time).sum()
    }
}

/// FEM-backed evaluator for a bound truss problem.
pub struct TrussEvaluator<'a> {
    structure: Structure<'a>,
    workspace: Workspace,
    vars: &'a VariableSet,
    base: Coordinates,
    coords: Coordinates,
    areas: Vec<f64>,
    tolerance: f64,
    count: u64,
}

impl<'a> TrussEvaluator<'a> {
    pub fn new(problem: &'a TrussProblem, vars: &'a VariableSet, tolerance: f64) -> Self {
        let base = problem.base_coordinates();
        let structure = Structure::new(problem);
        Self {
            workspace: structure.workspace(),
            structure,
            vars,
            coords: base.clone(),
            base,
            areas: vec![0.0; problem.members().len()],
            tolerance,
            count: 0,
        }
    }

    /// Number of designs evaluated so far.
    pub fn count(&self) -> u64 {
        self.count
    }
}

impl DesignEvaluator for TrussEvaluator<'_> {
    fn evaluate(&mut self, design: &DesignVector) -> Evaluation {
        self.count += 1;
        let problem = self.structure.problem();
        self.coords.clone_from(&self.base);
        self.vars.write_shape(&design.shape, &mut self.coords);
        let member_sizing = self.vars.member_sizing();
        let weight = match weight_of(problem, member_sizing, &self.coords, &design.sizing) {
            Ok(w) => w,
            Err(_) => return Evaluation { weight: f64::INFINITY, feasible: false, max_ratio: f64::INFINITY },
        };
        for (a, &v) in self.areas.iter_mut().zip(member_sizing) {
            *a = design.sizing[v] * 1e-6;
        }
        match self.structure.utilisation(&self.coords, &self.areas, &problem.limits(), &mut self.workspace) {
            Ok((stress, disp)) => {
                let limit = 1.0 + self.tolerance;
                Evaluation { weight, feasible: stress <= limit && disp <= limit, max_ratio: stress.max(disp) }
            }
            Err(_) => Evaluation { weight, feasible: false, max_ratio: f64::INFINITY },
        }
    }
}

/// Full structural assessment of one design.
#[derive(Debug, Clone)]
pub struct DesignAnalysis {
    pub coords: Coordinates,
    pub weight: f64,
    pub responses: Vec<StructuralResponse>,
    pub report: ConstraintReport,
}

pub fn analyze_design(
    problem: &TrussProblem,
    vars: &VariableSet,
    design: &DesignVector,
    tolerance: f64,
) -> Result<DesignAnalysis, FemError> {
    let coords = apply_shape(problem, vars, design)?;
    if let Some(a) = design.sizing.iter().find(|a| !(**a > 0.0)) {
        return Err(ModelError::InvalidParameter { what: "area", value: *a }.into());
    }
    let weight = weight_of(problem, vars.member_sizing(), &coords, &design.sizing)?;
    let areas: Vec<f64> = vars.member_sizing().iter().map(|&v| design.sizing[v] * 1e-6).collect();
    let responses = Structure::new(problem).analyze(&coords, &areas)?;
    let report = evaluate_constraints(problem, &responses, &problem.limits(), tolerance);
    Ok(DesignAnalysis { coords, weight, responses, report })
}

/// Runs the optimizer on a truss problem.
pub fn optimize(problem: &TrussProblem, vars: &VariableSet, config: &OptimizationConfig) -> Result<OptimizationResult, Error> {
    optimize_observed(problem, vars, config, |_| {})
}

/// As [`optimize`], calling `on_round` after every round.
pub fn optimize_observed(
    problem: &TrussProblem,
    vars: &VariableSet,
    config: &OptimizationConfig,
    on_round: impl FnMut(&RoundRecord),
) -> Result<OptimizationResult, Error> {
    let start = initial_design(vars);
    total_initial_check(problem, vars, &start)?;
    let mut evaluator = TrussEvaluator::new(problem, vars, config.constraint_tolerance);
    optimize_with(&mut evaluator, vars, config, on_round)
}

fn total_initial_check(problem: &TrussProblem, vars: &VariableSet, start: &DesignVector) -> Result<(), Error> {
    let coords = apply_shape(problem, vars, start)?;
    weight_of(problem, vars.member_sizing(), &coords, &start.sizing)?;
    Ok(())
}

/// Round loop over any evaluator.
pub fn optimize_with<E: DesignEvaluator>(
    evaluator: &mut E,
    vars: &VariableSet,
    config: &OptimizationConfig,
    mut on_round: impl FnMut(&RoundRecord),
) -> Result<OptimizationResult, Error> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut design = initial_design(vars);
    let first = evaluator.evaluate(&design);
    if !(first.weight > 0.0 && first.weight.is_finite()) {
        return Err(ConfigError::OutOfRange { what: "initial weight", value: first.weight }.into());
    }
    let initial_weight = first.weight;
    let mut min_s = initial_weight;
    let mut best = (design.clone(), initial_weight, first.feasible, 0u32);
    let mut theta = 0u32;
    let mut rounds = Vec::new();
    let j_mvs = config.j_mvs_for(vars);

    let termination = loop {
        let round = rounds.len() as u32 + 1;
        let clock = Instant::now();
        let alpha = match config.alpha {
            Alpha::Fixed(a) => a,
            Alpha::Adaptive => min_s,
        };
        design.mark_pending(true);
        let ctx = RoundContext::build(vars, &design, round, config.accel, &config.schedule, config.expansion)?;
        let settings = RoundSettings {
            exploration: config.exploration,
            j_mvs,
            mode: config.reward_mode,
            reward: RewardFn { alpha, infeasible: config.infeasible },
        };
        let outcome = run_round(&ctx, &design, evaluator, settings, &mut rng);
        let weight = outcome.evaluation.weight;
        let feasible = outcome.evaluation.feasible;
        let eta = improvement_factor(weight, min_s)?;
        if eta < config.eta_min {
            theta += 1;
        } else if config.reset_theta_on_improvement && feasible && weight < min_s {
            theta = 0;
        }
        if feasible {
            min_s = min_s.min(weight);
            if !best.2 || weight < best.1 {
                best = (outcome.design.clone(), weight, true, round);
            }
        }
        let record = RoundRecord {
            round,
            design: outcome.design.clone(),
            weight,
            feasible,
            max_ratio: outcome.evaluation.max_ratio,
            eta,
            theta,
            min_s,
            alpha,
            schedule: ctx.snapshot(),
            simulations: outcome.simulations,
            evaluations: outcome.evaluations,
            wall_time: clock.elapsed(),
        };
        design = if !feasible && config.restart_from_best && best.2 { best.0.clone() } else { outcome.design };
        on_round(&record);
        rounds.push(record);
        if theta >= config.theta_max {
            break Termination::Converged;
        }
        if round >= config.max_rounds {
            break Termination::RoundCap;
        }
    };

    let (best_design, best_weight, best_feasible, best_round) = best;
    Ok(OptimizationResult { best_design, best_weight, best_feasible, best_round, initial_weight, rounds, termination })
}
