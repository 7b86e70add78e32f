//! Run outputs: convergence CSV, result report, layout CSV and batch statistics.
//!
//! Floats use Rust's shortest round-trip formatting, so reports are
//! byte-identical across repeated seeded runs.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::Error;
use crate::model::{Role, TrussProblem, VariableSet};
use crate::optimizer::{DesignAnalysis, OptimizationConfig, OptimizationResult, RoundRecord};

/// One line of `convergence.csv`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub round: u32,
    pub final_weight_kg: f64,
    pub min_s_kg: f64,
    pub eta_pct: f64,
    pub theta: u32,
    pub feasible: bool,
    pub xi_sizing: Option<f64>,
    pub xi_shape: Option<f64>,
    pub kappa_or_beta_sizing: Option<usize>,
    pub kappa_or_beta_shape: Option<usize>,
    pub simulations: u64,
    pub wall_time_s: f64,
}

impl From<&RoundRecord> for ConvergenceRow {
    fn from(r: &RoundRecord) -> Self {
        Self {
            round: r.round,
            final_weight_kg: r.weight,
            min_s_kg: r.min_s,
            eta_pct: r.eta,
            theta: r.theta,
            feasible: r.feasible,
            xi_sizing: r.schedule.range_sizing,
            xi_shape: r.schedule.range_shape,
            kappa_or_beta_sizing: r.schedule.width_sizing,
            kappa_or_beta_shape: r.schedule.width_shape,
            simulations: r.simulations,
            wall_time_s: r.wall_time.as_secs_f64(),
        }
    }
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// CSV header; the wall-time column is only present when `timing` is set.
pub fn convergence_header(timing: bool) -> String {
    let mut h = String::from(
        "round,final_weight_kg,min_S_kg,eta_pct,theta,feasible,xi_sizing,xi_shape,kappa_or_beta_sizing,kappa_or_beta_shape,simulations",
    );
    if timing {
        h.push_str(",wall_time_s");
    }
    h
}

fn format_convergence(rows: &[ConvergenceRow], timing: bool) -> String {
    let mut out = convergence_header(timing);
    out.push('\n');
    for r in rows {
        let _ = write!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.round,
            r.final_weight_kg,
            r.min_s_kg,
            r.eta_pct,
            r.theta,
            r.feasible,
            opt(r.xi_sizing),
            opt(r.xi_shape),
            opt(r.kappa_or_beta_sizing),
            opt(r.kappa_or_beta_shape),
            r.simulations
        );
        if timing {
            let _ = write!(out, ",{:.6}", r.wall_time_s);
        }
        out.push('\n');
    }
    out
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

pub fn write_convergence_csv(rows: &[ConvergenceRow], path: &Path, timing: bool) -> Result<(), Error> {
    write_file(path, &format_convergence(rows, timing))
}

/// Text report of the best design with its stresses and displacements.
pub fn format_result(
    problem: &TrussProblem,
    vars: &VariableSet,
    config: &OptimizationConfig,
    result: &OptimizationResult,
    analysis: &DesignAnalysis,
) -> String {
    let mut o = String::new();
    let _ = writeln!(o, "problem {}", problem.name());
    let _ = writeln!(o, "seed {}", config.seed);
    let _ = writeln!(o, "accel {}", config.accel);
    let _ = writeln!(o, "reward_mode {}", config.reward_mode);
    let _ = writeln!(o, "alpha {}", config.alpha);
    let _ = writeln!(o, "expansion_sizing {}", config.expansion.sizing);
    let _ = writeln!(o, "expansion_shape {}", config.expansion.shape);
    let _ = writeln!(o, "termination {}", result.termination);
    let _ = writeln!(o, "rounds {}", result.rounds.len());
    let _ = writeln!(o, "simulations {}", result.total_simulations());
    let _ = writeln!(o, "initial_weight_kg {}", result.initial_weight);
    let _ = writeln!(o, "best_round {}", result.best_round);
    let _ = writeln!(o, "best_weight_kg {}", result.best_weight);
    let _ = writeln!(o, "feasible {}", analysis.report.feasible);
    let r = &analysis.report;
    let _ = writeln!(o, "max_stress_ratio {} member {}", r.max_stress_ratio, opt(r.worst_member));
    let worst_node = r.worst_node.map(|(n, a)| format!("{n}{a}"));
    let _ = writeln!(o, "max_displacement_ratio {} at {}", r.max_disp_ratio, opt(worst_node));

    o.push_str("\n[sizing] name group area_mm2\n");
    for i in 0..vars.sizing_count() {
        let s = vars.sizing_spec(i);
        if let Role::Sizing { group } = s.role {
            let _ = writeln!(o, "{} {} {}", s.name, group, result.best_design.sizing[i]);
        }
    }
    o.push_str("\n[shape] name value_m\n");
    for i in 0..vars.shape_count() {
        let _ = writeln!(o, "{} {}", vars.shape_spec(i).name, result.best_design.shape[i]);
    }
    for resp in &analysis.responses {
        let case = resp.load_case;
        let _ = writeln!(o, "\n[stress case {case}] member stress_MPa force_kN");
        for (m, member) in problem.members().iter().enumerate() {
            let _ = writeln!(o, "{} {} {}", member.id, resp.member_stress[m] * 1e-6, resp.member_force[m] * 1e-3);
        }
        let _ = writeln!(o, "\n[displacement case {case}] node ux_mm uy_mm uz_mm");
        for (n, node) in problem.nodes().iter().enumerate() {
            let [x, y, z] = resp.displacements[n];
            let _ = writeln!(o, "{} {} {} {}", node.id, x * 1e3, y * 1e3, z * 1e3);
        }
    }
    o
}

/// Node coordinates and member connectivity of a design, for plotting.
pub fn format_layout(problem: &TrussProblem, vars: &VariableSet, analysis: &DesignAnalysis, areas: &[f64]) -> String {
    let mut o = String::from("kind,id,x,y,z,start,end,group,area_mm2\n");
    for (n, node) in problem.nodes().iter().enumerate() {
        let [x, y, z] = analysis.coords[n];
        let _ = writeln!(o, "node,{},{x},{y},{z},,,,", node.id);
    }
    for (m, member) in problem.members().iter().enumerate() {
        let area = areas[vars.member_sizing()[m]];
        let _ = writeln!(o, "member,{},,,,{},{},{},{area}", member.id, member.start, member.end, member.group);
    }
    o
}

/// Summary of a batch of seeded runs.
#[derive(Debug, Clone, PartialEq)]
pub struct RunStats {
    pub seeds: Vec<u64>,
    pub weights: Vec<f64>,
    pub feasible: Vec<bool>,
}

impl RunStats {
    pub fn best(&self) -> f64 {
        self.weights.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn worst(&self) -> f64 {
        self.weights.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn mean(&self) -> f64 {
        self.weights.iter().sum::<f64>() / self.weights.len() as f64
    }

    /// Sample standard deviation (zero for a single run).
    pub fn std_dev(&self) -> f64 {
        let n = self.weights.len();
        if n < 2 {
            return 0.0;
        }
        let m = self.mean();
        (self.weights.iter().map(|w| (w - m) * (w - m)).sum::<f64>() / (n - 1) as f64).sqrt()
    }
}

pub fn format_stats(problem: &str, stats: &RunStats) -> String {
    let mut o = String::new();
    let _ = writeln!(o, "problem {problem}");
    let _ = writeln!(o, "runs {}", stats.weights.len());
    let _ = writeln!(o, "best_kg {:.2}", stats.best());
    let _ = writeln!(o, "worst_kg {:.2}", stats.worst());
    let _ = writeln!(o, "mean_kg {:.2}", stats.mean());
    let _ = writeln!(o, "std_kg {:.2}", stats.std_dev());
    o.push_str("\nseed weight_kg feasible\n");
    for ((s, w), f) in stats.seeds.iter().zip(&stats.weights).zip(&stats.feasible) {
        let _ = writeln!(o, "{s} {w} {f}");
    }
    o
}
