//! Test-side oracles kept independent of the library's solver.
#![allow(dead_code)]

use mvsmcts::TrussProblem;

/// Dense Gaussian elimination with partial pivoting.
pub fn gauss_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| a[i][k] * x[k]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    Some(x)
}

/// Method of joints for a statically determinate truss: member forces (kN,
/// tension positive) and nodal displacements (mm) under load case 1.
/// `areas` are per member in mm², E is taken from the problem.
pub fn joints(problem: &TrussProblem, areas: &[f64]) -> Option<(Vec<f64>, Vec<[f64; 3]>)> {
    let coords = problem.base_coordinates();
    let fixed = problem.fixed_dofs();
    let mut dof = Vec::new();
    for (n, f) in fixed.iter().enumerate() {
        for k in 0..3 {
            if !f[k] {
                dof.push((n, k));
            }
        }
    }
    let ends = problem.member_ends();
    if dof.len() != ends.len() {
        return None;
    }
    // Equilibrium at every free DOF: sum of member pulls plus the load is zero.
    let unit = |a: usize, b: usize| {
        let d: Vec<f64> = (0..3).map(|k| coords[b][k] - coords[a][k]).collect();
        let l = d.iter().map(|x| x * x).sum::<f64>().sqrt();
        ([d[0] / l, d[1] / l, d[2] / l], l)
    };
    let mut eq = vec![vec![0.0; ends.len()]; dof.len()];
    for (m, &(a, b)) in ends.iter().enumerate() {
        let (e, _) = unit(a, b);
        for (r, &(n, k)) in dof.iter().enumerate() {
            if n == a {
                eq[r][m] += e[k];
            }
            if n == b {
                eq[r][m] -= e[k];
            }
        }
    }
    let mut load = vec![0.0; dof.len()];
    for l in &problem.load_cases()[0].loads {
        let n = problem.node_index(l.node)?;
        for (r, &(dn, k)) in dof.iter().enumerate() {
            if dn == n {
                load[r] -= l.force[k];
            }
        }
    }
    let forces = gauss_solve(eq.clone(), load)?;

    // Compatibility: elongation of each member equals the projection of the
    // relative end displacement, i.e. eq^T u = e.
    let e_kn_mm2 = problem.material().elastic_modulus; // GPa = kN/mm²
    let elong: Vec<f64> = ends
        .iter()
        .enumerate()
        .map(|(m, &(a, b))| forces[m] * unit(a, b).1 * 1e3 / (e_kn_mm2 * areas[m]))
        .collect();
    let eqt: Vec<Vec<f64>> = (0..ends.len()).map(|m| (0..dof.len()).map(|r| -eq[r][m]).collect()).collect();
    let u = gauss_solve(eqt, elong)?;
    let mut disp = vec![[0.0; 3]; coords.len()];
    for (r, &(n, k)) in dof.iter().enumerate() {
        disp[n][k] = u[r];
    }
    Some((forces, disp))
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1e-300)
}

use mvsmcts::design_space::VarRef;
use mvsmcts::model::{Axis, CoordinateLink, Sign};
use mvsmcts::{build_benchmark, BenchmarkId, DesignVector, Domain, Evaluation, RoundContext, VariableSet, VariableSpec};

/// Two discrete areas and two continuous apex coordinates on the two-bar frame.
pub fn toy_mixed() -> (TrussProblem, VariableSet) {
    let problem = build_benchmark(BenchmarkId::TwoBarFixture).problem;
    let list = |v: [f64; 5]| Domain::Discrete(v.to_vec());
    let specs = vec![
        VariableSpec::sizing("X1", 1, list([100.0, 200.0, 300.0, 400.0, 500.0])),
        VariableSpec::sizing("X2", 2, list([150.0, 250.0, 350.0, 450.0, 550.0])),
        VariableSpec::shape("Y1", vec![CoordinateLink::new(3, Axis::X, Sign::Plus)], Domain::Continuous { lo: 0.5, hi: 1.5 }),
        VariableSpec::shape("Y2", vec![CoordinateLink::new(3, Axis::Y, Sign::Plus)], Domain::Continuous { lo: 0.5, hi: 2.0 }),
    ];
    let vars = VariableSet::bind(&problem, specs).unwrap();
    (problem, vars)
}

/// Smooth synthetic objective with a coupling constraint; irrational
/// coefficients keep grid values distinct.
pub fn toy_evaluation(d: &DesignVector) -> Evaluation {
    let (x1, x2, y1, y2) = (d.sizing[0], d.sizing[1], d.shape[0], d.shape[1]);
    let weight = x1 * std::f64::consts::E + x2 * std::f64::consts::PI + 40.0 * (y1 - 0.9).powi(2) + 25.0 * y2;
    let demand = 420.0 / y2.max(0.1);
    let ratio = demand / (x1 + 0.75 * x2);
    Evaluation { weight, feasible: ratio <= 1.0, max_ratio: ratio }
}

/// Every terminal design of `ctx` applied to `start`.
pub fn enumerate(ctx: &RoundContext, start: &DesignVector) -> Vec<DesignVector> {
    let mut out = vec![start.clone()];
    for layer in &ctx.layers {
        let mut next = Vec::new();
        for d in &out {
            for &v in &layer.candidates {
                let mut d = d.clone();
                match layer.var {
                    VarRef::Sizing(i) => d.sizing[i] = v,
                    VarRef::Shape(i) => d.shape[i] = v,
                }
                next.push(d);
            }
        }
        out = next;
    }
    out
}
