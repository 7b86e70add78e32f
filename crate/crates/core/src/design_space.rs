//! Round-indexed candidate generation.
//!
//! Each round the search starts from the previous round's final design. For
//! a continuous variable the candidates are a uniform mesh over a search
//! region of range `xi` placed around the current value; for a discrete
//! variable they are a window of `beta` consecutive list entries centred on
//! the current value. The acceleration schedules shrink `xi`, the mesh
//! count `kappa` and `beta` as rounds progress.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{ConfigError, StateError};
use crate::model::{DesignVector, Domain, VariableSet, VariableSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AccelKind {
    None,
    #[default]
    Geometric,
    Linear,
    Step,
}

impl AccelKind {
    pub const ALL: [AccelKind; 4] = [AccelKind::None, AccelKind::Geometric, AccelKind::Linear, AccelKind::Step];
}

impl FromStr for AccelKind {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "none" => Ok(AccelKind::None),
            "geometric" | "geo" => Ok(AccelKind::Geometric),
            "linear" | "lin" => Ok(AccelKind::Linear),
            "step" | "red" => Ok(AccelKind::Step),
            _ => Err(ConfigError::UnknownAccel(s.to_string())),
        }
    }
}

impl fmt::Display for AccelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AccelKind::None => "none",
            AccelKind::Geometric => "geometric",
            AccelKind::Linear => "linear",
            AccelKind::Step => "step",
        })
    }
}

/// Schedule constants for one variable role (sizing or shape).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RoleSchedule {
    /// Discrete window: geometric ratio and period.
    pub window_ratio: f64,
    pub window_period: u32,
    /// Discrete window: linear decrement per round.
    pub window_step_linear: f64,
    /// Discrete window: step decrement and period.
    pub window_step: f64,
    pub window_step_period: u32,
    /// Continuous range: geometric ratio and period.
    pub range_ratio: f64,
    pub range_period: u32,
    /// Continuous range: linear decrement, also the floor fraction.
    pub range_step_linear: f64,
    /// Continuous range: step decrement (also the floor fraction) and period.
    pub range_step: f64,
    pub range_step_period: u32,
    /// Mesh count: geometric ratio and period.
    pub mesh_ratio: f64,
    pub mesh_period: u32,
    /// Mesh count: linear decrement per round.
    pub mesh_step_linear: f64,
    /// Mesh count: step decrement and period.
    pub mesh_step: f64,
    pub mesh_step_period: u32,
    /// First-round mesh count; defaults to the number of variables in the role.
    pub initial_mesh: Option<usize>,
}

impl RoleSchedule {
    pub fn sizing() -> Self {
        Self {
            window_ratio: 0.5,
            window_period: 3,
            window_step_linear: 2.0,
            window_step: 2.0,
            window_step_period: 3,
            range_ratio: 0.5,
            range_period: 3,
            range_step_linear: 0.05,
            range_step: 0.05,
            range_step_period: 3,
            mesh_ratio: 0.5,
            mesh_period: 3,
            mesh_step_linear: 2.0,
            mesh_step: 2.0,
            mesh_step_period: 3,
            initial_mesh: None,
        }
    }

    pub fn shape() -> Self {
        Self {
            window_period: 3,
            window_step_period: 5,
            range_period: 5,
            range_step_period: 5,
            mesh_period: 5,
            mesh_step_period: 5,
            ..Self::sizing()
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let ratios = [
            ("window ratio", self.window_ratio),
            ("range ratio", self.range_ratio),
            ("mesh ratio", self.mesh_ratio),
        ];
        for (what, v) in ratios {
            if !(v > 0.0 && v <= 1.0) {
                return Err(ConfigError::OutOfRange { what, value: v });
            }
        }
        let steps = [
            ("window linear step", self.window_step_linear),
            ("window step", self.window_step),
            ("range linear step", self.range_step_linear),
            ("range step", self.range_step),
            ("mesh linear step", self.mesh_step_linear),
            ("mesh step", self.mesh_step),
        ];
        for (what, v) in steps {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(ConfigError::OutOfRange { what, value: v });
            }
        }
        for (what, v) in [("range linear step", self.range_step_linear), ("range step", self.range_step)] {
            if v > 1.0 {
                return Err(ConfigError::OutOfRange { what, value: v });
            }
        }
        let periods = [
            ("window period", self.window_period),
            ("window step period", self.window_step_period),
            ("range period", self.range_period),
            ("range step period", self.range_step_period),
            ("mesh period", self.mesh_period),
            ("mesh step period", self.mesh_step_period),
        ];
        for (what, v) in periods {
            if v == 0 {
                return Err(ConfigError::OutOfRange { what, value: 0.0 });
            }
        }
        if let Some(k) = self.initial_mesh {
            if k < 3 {
                return Err(ConfigError::OutOfRange { what: "initial mesh", value: k as f64 });
            }
        }
        Ok(())
    }
}

impl Default for RoleSchedule {
    fn default() -> Self {
        Self::sizing()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScheduleConstants {
    pub sizing: RoleSchedule,
    pub shape: RoleSchedule,
}

impl Default for ScheduleConstants {
    fn default() -> Self {
        Self { sizing: RoleSchedule::sizing(), shape: RoleSchedule::shape() }
    }
}

/// `⌈(p − 1) / period⌉`
fn ceil_rounds(p: u32, period: u32) -> i32 {
    (p - 1).div_ceil(period) as i32
}

/// Search-region range `xi` of a continuous variable with global bounds `[lo, hi]` in round `p`.
pub fn range_schedule(kind: AccelKind, p: u32, lo: f64, hi: f64, c: &RoleSchedule) -> f64 {
    assert!(p >= 1, "rounds are numbered from 1");
    let first = hi - lo;
    if p == 1 {
        return first;
    }
    match kind {
        AccelKind::None => first,
        AccelKind::Geometric => first * c.range_ratio.powi(ceil_rounds(p, c.range_period)),
        AccelKind::Linear => {
            let floor = c.range_step_linear * first;
            floor.max(first - c.range_step_linear * (p - 1) as f64)
        }
        AccelKind::Step => {
            let floor = c.range_step * first;
            floor.max(first - c.range_step * ceil_rounds(p, c.range_step_period) as f64)
        }
    }
}

/// Mesh count `kappa` for continuous variables in round `p`; `first` is the round-1 count.
pub fn width_schedule_continuous(kind: AccelKind, p: u32, first: usize, c: &RoleSchedule) -> usize {
    assert!(p >= 1, "rounds are numbered from 1");
    let first = first.max(3);
    if p == 1 || kind == AccelKind::None {
        return first;
    }
    let g = first as f64;
    let raw = match kind {
        AccelKind::None => unreachable!(),
        AccelKind::Geometric => g * c.mesh_ratio.powi(ceil_rounds(p, c.mesh_period)),
        AccelKind::Linear => g - c.mesh_step_linear * (p - 1) as f64,
        AccelKind::Step => g - c.mesh_step * ceil_rounds(p, c.mesh_step_period) as f64,
    };
    (raw.floor().max(3.0)) as usize
}

fn odd_ceil(n: i64) -> i64 {
    if n % 2 == 0 {
        n + 1
    } else {
        n
    }
}

/// Window width `beta` for a discrete list of `b` values in round `p`. Always odd and at least 3.
pub fn width_schedule_discrete(kind: AccelKind, p: u32, b: usize, c: &RoleSchedule) -> usize {
    assert!(p >= 1, "rounds are numbered from 1");
    let first = odd_ceil(b as i64).max(3);
    if p == 1 || kind == AccelKind::None {
        return first as usize;
    }
    let g = first as f64;
    let raw = match kind {
        AccelKind::None => unreachable!(),
        AccelKind::Geometric => g * c.window_ratio.powi(ceil_rounds(p, c.window_period)),
        AccelKind::Linear => g - c.window_step_linear * (p - 1) as f64,
        AccelKind::Step => g - c.window_step * ceil_rounds(p, c.window_step_period) as f64,
    };
    odd_ceil(raw.floor() as i64).max(3) as usize
}

/// Uniform mesh of `count` values over the region `[center − a·xi, center + (1 − a)·xi]`
/// intersected with `[global_lo, global_hi]`. A region collapsed onto a bound yields one value.
pub fn continuous_candidates(center: f64, xi: f64, count: usize, a: f64, global_lo: f64, global_hi: f64) -> Vec<f64> {
    let lo = (center - a * xi).max(global_lo);
    let hi = (center + (1.0 - a) * xi).min(global_hi);
    if !(hi > lo) || count < 2 {
        return vec![lo.clamp(global_lo, global_hi)];
    }
    let step = (hi - lo) / (count - 1) as f64;
    let mut out: Vec<f64> = (0..count).map(|h| lo + step * h as f64).collect();
    out[count - 1] = hi;
    out
}

/// `beta` consecutive entries of `list` around `current`, shifted inward at the list ends.
pub fn discrete_window(list: &[f64], current: f64, beta: usize) -> Result<&[f64], StateError> {
    let idx = list
        .iter()
        .position(|&v| v == current)
        .ok_or(StateError::NotInList { value: current })?;
    let len = beta.min(list.len());
    let start = idx.saturating_sub((len - 1) / 2).min(list.len() - len);
    Ok(&list[start..start + len])
}

/// Starting design for round 1: sizing at its largest value, shape at the
/// middle of its range (or the median of its list).
pub fn initial_design(vars: &VariableSet) -> DesignVector {
    let sizing = (0..vars.sizing_count())
        .map(|i| vars.sizing_spec(i).domain.bounds().1)
        .collect();
    let shape = (0..vars.shape_count())
        .map(|i| match &vars.shape_spec(i).domain {
            Domain::Discrete(list) => list[(list.len() - 1) / 2],
            Domain::Continuous { lo, hi } => 0.5 * (lo + hi),
        })
        .collect();
    DesignVector::new(sizing, shape)
}

/// Expansion-position constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Expansion {
    pub sizing: f64,
    pub shape: f64,
}

impl Default for Expansion {
    fn default() -> Self {
        Self { sizing: 0.5, shape: 0.5 }
    }
}

/// Which variable a search layer decides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarRef {
    Sizing(usize),
    Shape(usize),
}

/// Candidates for one variable in one round.
#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    pub var: VarRef,
    pub candidates: Vec<f64>,
    /// Scheduled branching factor (`beta` or `kappa`) used by the iteration budget.
    pub width: usize,
    /// Search-region range for continuous variables.
    pub range: Option<f64>,
}

/// Per-round schedule values and the layered action space.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundContext {
    pub round: u32,
    pub kind: AccelKind,
    /// Shape layers first, then sizing layers.
    pub layers: Vec<Layer>,
}

/// Snapshot of the schedules reported per round (first variable of each role).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ScheduleSnapshot {
    pub range_sizing: Option<f64>,
    pub range_shape: Option<f64>,
    pub width_sizing: Option<usize>,
    pub width_shape: Option<usize>,
}

impl RoundContext {
    pub fn build(
        vars: &VariableSet,
        design: &DesignVector,
        round: u32,
        kind: AccelKind,
        schedule: &ScheduleConstants,
        expansion: Expansion,
    ) -> Result<Self, StateError> {
        let mut layers = Vec::with_capacity(vars.len());
        let g_y = vars.shape_count();
        let g_x = vars.sizing_count();
        for i in 0..g_y {
            layers.push(layer(
                vars.shape_spec(i),
                VarRef::Shape(i),
                design.shape[i],
                round,
                kind,
                &schedule.shape,
                g_y,
                expansion.shape,
            )?);
        }
        for i in 0..g_x {
            layers.push(layer(
                vars.sizing_spec(i),
                VarRef::Sizing(i),
                design.sizing[i],
                round,
                kind,
                &schedule.sizing,
                g_x,
                expansion.sizing,
            )?);
        }
        Ok(Self { round, kind, layers })
    }

    pub fn snapshot(&self) -> ScheduleSnapshot {
        let first = |sizing: bool| {
            self.layers
                .iter()
                .find(|l| matches!(l.var, VarRef::Sizing(_)) == sizing)
        };
        ScheduleSnapshot {
            range_sizing: first(true).and_then(|l| l.range),
            range_shape: first(false).and_then(|l| l.range),
            width_sizing: first(true).map(|l| l.width),
            width_shape: first(false).map(|l| l.width),
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn layer(
    spec: &VariableSpec,
    var: VarRef,
    current: f64,
    round: u32,
    kind: AccelKind,
    c: &RoleSchedule,
    role_count: usize,
    a: f64,
) -> Result<Layer, StateError> {
    Ok(match &spec.domain {
        Domain::Discrete(list) => {
            let width = width_schedule_discrete(kind, round, list.len(), c);
            Layer { var, candidates: discrete_window(list, current, width)?.to_vec(), width, range: None }
        }
        Domain::Continuous { lo, hi } => {
            let xi = range_schedule(kind, round, *lo, *hi, c);
            let width = width_schedule_continuous(kind, round, c.initial_mesh.unwrap_or(role_count), c);
            Layer {
                var,
                candidates: continuous_candidates(current, xi, width, a, *lo, *hi),
                width,
                range: Some(xi),
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geo_sizing() -> RoleSchedule {
        RoleSchedule::sizing()
    }

    #[test]
    fn geometric_range_halves_on_period_boundaries() {
        let c = geo_sizing();
        let xi = |p| range_schedule(AccelKind::Geometric, p, 64.52, 22582.0, &c);
        assert!((xi(1) - 22517.48).abs() < 1e-9);
        assert!((xi(2) - 11258.74).abs() < 1e-9);
        assert!((xi(4) - 11258.74).abs() < 1e-9);
        assert!((xi(5) - 5629.37).abs() < 1e-9);
    }

    #[test]
    fn range_without_acceleration_is_constant() {
        let c = geo_sizing();
        for p in 1..50 {
            assert_eq!(range_schedule(AccelKind::None, p, 1.0, 3.0, &c), 2.0);
        }
    }

    #[test]
    fn linear_range_uses_absolute_decrement() {
        let c = geo_sizing();
        assert!((range_schedule(AccelKind::Linear, 2, 0.0, 100.0, &c) - 99.95).abs() < 1e-12);
        // floor at 5% of the first range
        assert_eq!(range_schedule(AccelKind::Linear, 10_000, 0.0, 100.0, &c), 5.0);
    }

    #[test]
    fn continuous_width_schedules() {
        let c = geo_sizing();
        let geo = |p| width_schedule_continuous(AccelKind::Geometric, p, 10, &c);
        assert_eq!((geo(1), geo(2), geo(5)), (10, 5, 3));
        for p in 1..30 {
            assert_eq!(width_schedule_continuous(AccelKind::None, p, 10, &c), 10);
        }
        assert_eq!(width_schedule_continuous(AccelKind::Linear, 3, 8, &c), 4);
    }

    #[test]
    fn discrete_width_schedules() {
        let c = geo_sizing();
        let geo = |p| width_schedule_discrete(AccelKind::Geometric, p, 64, &c);
        assert_eq!((geo(1), geo(2), geo(5), geo(14)), (65, 33, 17, 3));
        for p in 1..40 {
            assert_eq!(width_schedule_discrete(AccelKind::Geometric, p, 3, &c), 3);
        }
        assert_eq!(width_schedule_discrete(AccelKind::Geometric, 1, 34, &c), 35);
    }

    #[test]
    fn unknown_kind_is_config_error() {
        assert_eq!("spiral".parse::<AccelKind>(), Err(ConfigError::UnknownAccel("spiral".into())));
        assert_eq!("step".parse::<AccelKind>(), Ok(AccelKind::Step));
    }

    #[test]
    fn centred_mesh() {
        assert_eq!(continuous_candidates(100.0, 50.0, 5, 0.5, 0.0, 1000.0), vec![75.0, 87.5, 100.0, 112.5, 125.0]);
    }

    #[test]
    fn clamped_mesh() {
        assert_eq!(continuous_candidates(10.0, 50.0, 3, 0.5, 0.0, 1000.0), vec![0.0, 17.5, 35.0]);
    }

    #[test]
    fn left_anchored_mesh_starts_at_center() {
        let m = continuous_candidates(10.0, 8.0, 5, 0.0, 0.0, 1000.0);
        assert_eq!(m[0], 10.0);
        assert_eq!(m[4], 18.0);
    }

    #[test]
    fn collapsed_region_gives_single_candidate() {
        assert_eq!(continuous_candidates(100.0, 50.0, 5, 0.0, 0.0, 100.0), vec![100.0]);
    }

    #[test]
    fn windows() {
        let d: Vec<f64> = (1..=9).map(f64::from).collect();
        assert_eq!(discrete_window(&d, 5.0, 3).unwrap(), &[4.0, 5.0, 6.0]);
        assert_eq!(discrete_window(&d, 1.0, 3).unwrap(), &[1.0, 2.0, 3.0]);
        assert_eq!(discrete_window(&d, 9.0, 3).unwrap(), &[7.0, 8.0, 9.0]);
        assert_eq!(discrete_window(&[1.0, 2.0, 3.0], 2.0, 65).unwrap(), &[1.0, 2.0, 3.0]);
        assert_eq!(discrete_window(&d, 4.5, 3), Err(StateError::NotInList { value: 4.5 }));
    }
}
