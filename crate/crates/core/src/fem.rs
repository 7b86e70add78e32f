//! Linear-elastic pin-jointed truss analysis by the direct stiffness method.
//!
//! Everything in this module is SI: metres, square metres, newtons and
//! pascals. [`Structure`] performs the one conversion from the tabulated
//! units of a [`TrussProblem`].

use crate::error::{FemError, ModelError};
use crate::model::{Axis, Limits, TrussProblem};

/// Solves whose relative residual exceeds this are rejected.
pub const RESIDUAL_TOLERANCE: f64 = 1e-8;

/// A Cholesky pivot smaller than this fraction of its original diagonal
/// entry marks the system as singular.
pub const PIVOT_TOLERANCE: f64 = 1e-11;

/// Numbering of the unrestrained degrees of freedom.
#[derive(Debug, Clone)]
pub struct DofMap {
    index: Vec<[Option<usize>; 3]>,
    free: usize,
    half_bandwidth: usize,
}

impl DofMap {
    pub fn new(problem: &TrussProblem) -> Self {
        let mut free = 0;
        let index: Vec<[Option<usize>; 3]> = problem
            .fixed_dofs()
            .iter()
            .map(|fixed| {
                let mut row = [None; 3];
                for k in 0..3 {
                    if !fixed[k] {
                        row[k] = Some(free);
                        free += 1;
                    }
                }
                row
            })
            .collect();
        let mut half_bandwidth = 0;
        for &(a, b) in problem.member_ends() {
            let dofs = index[a].iter().chain(index[b].iter()).flatten();
            let (lo, hi) = dofs.fold((usize::MAX, 0), |(lo, hi), &d| (lo.min(d), hi.max(d)));
            if lo != usize::MAX {
                half_bandwidth = half_bandwidth.max(hi - lo);
            }
        }
        Self { index, free, half_bandwidth }
    }

    pub fn free_count(&self) -> usize {
        self.free
    }

    pub fn half_bandwidth(&self) -> usize {
        self.half_bandwidth
    }

    pub fn get(&self, node: usize, axis: usize) -> Option<usize> {
        self.index[node][axis]
    }
}

/// Symmetric matrix stored as its upper band, row by row: entry `(i, i + t)`
/// lives at `i * (bw + 1) + t`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandMatrix {
    n: usize,
    bw: usize,
    data: Vec<f64>,
}

impl BandMatrix {
    pub fn zeros(n: usize, half_bandwidth: usize) -> Self {
        let bw = half_bandwidth.min(n.saturating_sub(1));
        Self { n, bw, data: vec![0.0; n * (bw + 1)] }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    fn slot(&self, i: usize, j: usize) -> Option<usize> {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        (j - i <= self.bw).then(|| i * (self.bw + 1) + j - i)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.slot(i, j).map_or(0.0, |s| self.data[s])
    }

    #[inline]
    fn add(&mut self, i: usize, j: usize, v: f64) {
        let s = self.slot(i, j).expect("entry outside the band");
        self.data[s] += v;
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n];
        self.mul_vec_into(x, &mut y);
        y
    }

    fn mul_vec_into(&self, x: &[f64], y: &mut [f64]) {
        let w = self.bw + 1;
        y.iter_mut().for_each(|v| *v = 0.0);
        for i in 0..self.n {
            let m = self.bw.min(self.n - 1 - i);
            let row = &self.data[i * w..i * w + m + 1];
            let xi = x[i];
            let mut acc = row[0] * xi;
            for ((yv, &xv), &a) in y[i + 1..i + m + 1].iter_mut().zip(&x[i + 1..i + m + 1]).zip(&row[1..]) {
                acc += a * xv;
                *yv += a * xi;
            }
            y[i] += acc;
        }
    }

    /// In-place banded Cholesky factorisation `A = Uᵀ U`.
    fn factorize(&mut self) -> Result<(), FemError> {
        let (n, bw) = (self.n, self.bw);
        let w = bw + 1;
        let original: Vec<f64> = (0..n).map(|i| self.data[i * w]).collect();
        for k in 0..n {
            let pivot = self.data[k * w];
            if !(pivot > PIVOT_TOLERANCE * original[k].abs()) || !pivot.is_finite() {
                return Err(FemError::Singular { dof: k });
            }
            let r = pivot.sqrt();
            let m = bw.min(n - 1 - k);
            let (head, tail) = self.data.split_at_mut((k + 1) * w);
            let row_k = &mut head[k * w..k * w + m + 1];
            row_k[0] = r;
            for v in &mut row_k[1..] {
                *v /= r;
            }
            for t in 1..=m {
                let f = row_k[t];
                if f == 0.0 {
                    continue;
                }
                let row_j = &mut tail[(t - 1) * w..(t - 1) * w + m - t + 1];
                for (a, &b) in row_j.iter_mut().zip(&row_k[t..]) {
                    *a -= f * b;
                }
            }
        }
        Ok(())
    }

    fn substitute(&self, b: &mut [f64]) {
        let (n, bw) = (self.n, self.bw);
        let w = bw + 1;
        for i in 0..n {
            let m = bw.min(n - 1 - i);
            let row = &self.data[i * w..i * w + m + 1];
            let (done, rest) = b[i..i + m + 1].split_first_mut().expect("non-empty");
            *done /= row[0];
            let bi = *done;
            for (x, &u) in rest.iter_mut().zip(&row[1..]) {
                *x -= u * bi;
            }
        }
        for i in (0..n).rev() {
            let m = bw.min(n - 1 - i);
            let row = &self.data[i * w..i * w + m + 1];
            let s: f64 = row[1..].iter().zip(&b[i + 1..i + m + 1]).map(|(u, x)| u * x).sum();
            b[i] = (b[i] - s) / row[0];
        }
    }
}

/// Unit vector and length of the segment `a → b`.
fn direction(a: [f64; 3], b: [f64; 3]) -> Option<([f64; 3], f64)> {
    let len = crate::model::member_length(a, b)?;
    Some(([(b[0] - a[0]) / len, (b[1] - a[1]) / len, (b[2] - a[2]) / len], len))
}

/// Global stiffness over the free DOFs. `areas` are per member in m², `e` in Pa.
pub fn assemble_global_stiffness(
    problem: &TrussProblem,
    dofs: &DofMap,
    coords: &[[f64; 3]],
    areas: &[f64],
    e: f64,
) -> Result<BandMatrix, FemError> {
    let mut k = BandMatrix::zeros(dofs.free_count(), dofs.half_bandwidth());
    assemble_into(&mut k, problem, dofs, coords, areas, e)?;
    Ok(k)
}

fn assemble_into(
    k: &mut BandMatrix,
    problem: &TrussProblem,
    dofs: &DofMap,
    coords: &[[f64; 3]],
    areas: &[f64],
    e: f64,
) -> Result<(), FemError> {
    k.data.iter_mut().for_each(|v| *v = 0.0);
    for (m, &(a, b)) in problem.member_ends().iter().enumerate() {
        let (dir, len) = direction(coords[a], coords[b])
            .ok_or(ModelError::DegenerateMember(problem.members()[m].id))?;
        let s = e * areas[m] / len;
        let ends = [(a, 1.0), (b, -1.0)];
        for &(na, sa) in &ends {
            for p in 0..3 {
                let Some(i) = dofs.get(na, p) else { continue };
                for &(nb, sb) in &ends {
                    for q in 0..3 {
                        let Some(j) = dofs.get(nb, q) else { continue };
                        if j <= i {
                            k.add(i, j, s * sa * sb * dir[p] * dir[q]);
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Solves `K u = f` and checks the relative residual.
pub fn solve_displacements(k: &BandMatrix, f: &[f64]) -> Result<Vec<f64>, FemError> {
    if f.len() != k.size() {
        return Err(FemError::LoadLength { got: f.len(), expected: k.size() });
    }
    let mut factor = k.clone();
    factor.factorize()?;
    let mut u = f.to_vec();
    factor.substitute(&mut u);
    check_residual(k, &u, f)?;
    Ok(u)
}

fn check_residual(k: &BandMatrix, u: &[f64], f: &[f64]) -> Result<(), FemError> {
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let fnorm = norm(f);
    if fnorm == 0.0 {
        return Ok(());
    }
    let r: Vec<f64> = k.mul_vec(u).iter().zip(f).map(|(a, b)| a - b).collect();
    let residual = norm(&r) / fnorm;
    if !(residual <= RESIDUAL_TOLERANCE) {
        return Err(FemError::IllConditioned { residual });
    }
    Ok(())
}

/// Elongation `B u` of a member with end positions `a`, `b` and end displacements `ua`, `ub`.
pub fn member_elongation(a: [f64; 3], b: [f64; 3], ua: [f64; 3], ub: [f64; 3]) -> Option<f64> {
    let (dir, _) = direction(a, b)?;
    Some((0..3).map(|k| dir[k] * (ub[k] - ua[k])).sum())
}

/// Axial stress (Pa, tension positive) of member `ends` given full nodal displacements.
pub fn member_stress(coords: &[[f64; 3]], u_full: &[[f64; 3]], ends: (usize, usize), e: f64) -> Option<f64> {
    let (a, b) = ends;
    let len = crate::model::member_length(coords[a], coords[b])?;
    Some(e / len * member_elongation(coords[a], coords[b], u_full[a], u_full[b])?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reaction {
    pub node: u32,
    pub axis: Axis,
    /// N
    pub force: f64,
}

/// Response of the truss to one load case (SI units).
#[derive(Debug, Clone, PartialEq)]
pub struct StructuralResponse {
    pub load_case: u32,
    /// Free-DOF displacement vector, m.
    pub u: Vec<f64>,
    /// Per-node displacement including zeros at restrained DOFs, m.
    pub displacements: Vec<[f64; 3]>,
    /// Per-member stress, Pa.
    pub member_stress: Vec<f64>,
    /// Per-member elongation, m.
    pub member_elongation: Vec<f64>,
    /// Per-member axial force, N.
    pub member_force: Vec<f64>,
    pub reactions: Vec<Reaction>,
    /// Applied loads per node, N.
    pub applied: Vec<[f64; 3]>,
    /// Sum of unbalanced nodal forces at free DOFs, N (should vanish).
    pub free_residual: f64,
}

impl StructuralResponse {
    /// `Σ reactions + Σ applied loads` per axis, N.
    pub fn global_balance(&self) -> [f64; 3] {
        let mut sum = [0.0; 3];
        for r in &self.reactions {
            sum[r.axis.index()] += r.force;
        }
        for f in &self.applied {
            for k in 0..3 {
                sum[k] += f[k];
            }
        }
        sum
    }

    pub fn applied_magnitude(&self) -> f64 {
        self.applied.iter().flat_map(|f| f.iter()).map(|x| x.abs()).fold(0.0, f64::max)
    }
}

/// A problem prepared for repeated analysis.
#[derive(Debug, Clone)]
pub struct Structure<'a> {
    problem: &'a TrussProblem,
    dofs: DofMap,
    e: f64,
    loads: Vec<Vec<[f64; 3]>>,
}

impl<'a> Structure<'a> {
    pub fn new(problem: &'a TrussProblem) -> Self {
        let dofs = DofMap::new(problem);
        let loads = problem
            .load_cases()
            .iter()
            .map(|case| {
                let mut f = vec![[0.0; 3]; problem.nodes().len()];
                for l in &case.loads {
                    let n = problem.node_index(l.node).expect("validated");
                    for k in 0..3 {
                        f[n][k] += l.force[k] * 1e3;
                    }
                }
                f
            })
            .collect();
        let e = problem.material().elastic_modulus * 1e9;
        Self { problem, dofs, e, loads }
    }

    pub fn problem(&self) -> &TrussProblem {
        self.problem
    }

    pub fn dofs(&self) -> &DofMap {
        &self.dofs
    }

    /// Elastic modulus in Pa.
    pub fn elastic_modulus(&self) -> f64 {
        self.e
    }

    /// Analyses every load case. `areas` are per member in m².
    pub fn analyze(&self, coords: &[[f64; 3]], areas: &[f64]) -> Result<Vec<StructuralResponse>, FemError> {
        let k = assemble_global_stiffness(self.problem, &self.dofs, coords, areas, self.e)?;
        let mut factor = k.clone();
        factor.factorize()?;
        let n_nodes = coords.len();
        let mut out = Vec::with_capacity(self.loads.len());
        for (case, applied) in self.problem.load_cases().iter().zip(&self.loads) {
            let mut f = vec![0.0; self.dofs.free_count()];
            for (n, load) in applied.iter().enumerate() {
                for p in 0..3 {
                    if let Some(i) = self.dofs.get(n, p) {
                        f[i] = load[p];
                    }
                }
            }
            let mut u = f.clone();
            factor.substitute(&mut u);
            check_residual(&k, &u, &f)?;

            let mut displacements = vec![[0.0; 3]; n_nodes];
            for (n, d) in displacements.iter_mut().enumerate() {
                for p in 0..3 {
                    if let Some(i) = self.dofs.get(n, p) {
                        d[p] = u[i];
                    }
                }
            }
            let members = self.problem.member_ends();
            let mut stress = Vec::with_capacity(members.len());
            let mut elongation = Vec::with_capacity(members.len());
            let mut force = Vec::with_capacity(members.len());
            let mut nodal = applied.clone();
            for (m, &(a, b)) in members.iter().enumerate() {
                let (dir, len) = direction(coords[a], coords[b]).expect("checked during assembly");
                let eps: f64 = (0..3).map(|k| dir[k] * (displacements[b][k] - displacements[a][k])).sum();
                let sigma = self.e / len * eps;
                let axial = sigma * areas[m];
                for k in 0..3 {
                    nodal[a][k] += axial * dir[k];
                    nodal[b][k] -= axial * dir[k];
                }
                stress.push(sigma);
                elongation.push(eps);
                force.push(axial);
            }
            let mut reactions = Vec::new();
            let mut free_residual: f64 = 0.0;
            for (n, r) in nodal.iter().enumerate() {
                for p in 0..3 {
                    if self.dofs.get(n, p).is_some() {
                        free_residual = free_residual.max(r[p].abs());
                    } else {
                        reactions.push(Reaction {
                            node: self.problem.nodes()[n].id,
                            axis: Axis::ALL[p],
                            force: -r[p],
                        });
                    }
                }
            }
            out.push(StructuralResponse {
                load_case: case.id,
                u,
                displacements,
                member_stress: stress,
                member_elongation: elongation,
                member_force: force,
                reactions,
                applied: applied.clone(),
                free_residual,
            });
        }
        Ok(out)
    }
}

/// Reusable buffers for [`Structure::utilisation`].
#[derive(Debug, Clone)]
pub struct Workspace {
    k: BandMatrix,
    factor: BandMatrix,
    f: Vec<f64>,
    u: Vec<f64>,
    r: Vec<f64>,
}

impl Structure<'_> {
    pub fn workspace(&self) -> Workspace {
        let n = self.dofs.free_count();
        let k = BandMatrix::zeros(n, self.dofs.half_bandwidth());
        Workspace { factor: k.clone(), k, f: vec![0.0; n], u: vec![0.0; n], r: vec![0.0; n] }
    }

    /// Largest stress and displacement ratios over all load cases, without
    /// building full responses. Agrees bit for bit with [`Structure::analyze`]
    /// followed by [`evaluate_constraints`].
    pub fn utilisation(
        &self,
        coords: &[[f64; 3]],
        areas: &[f64],
        limits: &Limits,
        ws: &mut Workspace,
    ) -> Result<(f64, f64), FemError> {
        assemble_into(&mut ws.k, self.problem, &self.dofs, coords, areas, self.e)?;
        ws.factor.data.copy_from_slice(&ws.k.data);
        ws.factor.factorize()?;
        let (smin, smax) = (limits.stress_min * 1e6, limits.stress_max * 1e6);
        let (dmin, dmax) = (limits.displacement_min * 1e-3, limits.displacement_max * 1e-3);
        let (mut stress, mut disp) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for applied in &self.loads {
            ws.f.iter_mut().for_each(|v| *v = 0.0);
            for (n, load) in applied.iter().enumerate() {
                for p in 0..3 {
                    if let Some(i) = self.dofs.get(n, p) {
                        ws.f[i] = load[p];
                    }
                }
            }
            ws.u.copy_from_slice(&ws.f);
            ws.factor.substitute(&mut ws.u);
            ws.k.mul_vec_into(&ws.u, &mut ws.r);
            let norm = |v: &mut dyn Iterator<Item = f64>| v.map(|x| x * x).sum::<f64>().sqrt();
            let fnorm = norm(&mut ws.f.iter().copied());
            if fnorm != 0.0 {
                let residual = norm(&mut ws.r.iter().zip(&ws.f).map(|(a, b)| a - b)) / fnorm;
                if !(residual <= RESIDUAL_TOLERANCE) {
                    return Err(FemError::IllConditioned { residual });
                }
            }
            let at = |n: usize, p: usize| self.dofs.get(n, p).map_or(0.0, |i| ws.u[i]);
            for &(a, b) in self.problem.member_ends() {
                let (dir, len) = direction(coords[a], coords[b]).expect("checked during assembly");
                let eps: f64 = (0..3).map(|k| dir[k] * (at(b, k) - at(a, k))).sum();
                stress = stress.max(ratio(self.e / len * eps, smin, smax));
            }
            for &d in &ws.u {
                disp = disp.max(ratio(d, dmin, dmax));
            }
        }
        Ok((stress.max(0.0), disp.max(0.0)))
    }
}

/// Worst constraint utilisation over all load cases.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintReport {
    pub max_stress_ratio: f64,
    pub max_disp_ratio: f64,
    pub feasible: bool,
    /// Member id with the largest stress ratio.
    pub worst_member: Option<u32>,
    /// Node id and axis with the largest displacement ratio.
    pub worst_node: Option<(u32, Axis)>,
}

impl ConstraintReport {
    pub fn max_ratio(&self) -> f64 {
        self.max_stress_ratio.max(self.max_disp_ratio)
    }
}

fn ratio(value: f64, lo: f64, hi: f64) -> f64 {
    if value >= 0.0 {
        value / hi
    } else {
        value / lo
    }
}

/// Checks stresses and free-DOF displacements against the limits.
/// A design is feasible when both ratios are at most `1 + tolerance`.
pub fn evaluate_constraints(
    problem: &TrussProblem,
    responses: &[StructuralResponse],
    limits: &Limits,
    tolerance: f64,
) -> ConstraintReport {
    let (smin, smax) = (limits.stress_min * 1e6, limits.stress_max * 1e6);
    let (dmin, dmax) = (limits.displacement_min * 1e-3, limits.displacement_max * 1e-3);
    let fixed = problem.fixed_dofs();
    let mut stress: Option<(f64, u32)> = None;
    let mut disp: Option<(f64, (u32, Axis))> = None;
    for r in responses {
        for (m, &s) in r.member_stress.iter().enumerate() {
            let q = ratio(s, smin, smax);
            if stress.map_or(true, |(w, _)| q > w) {
                stress = Some((q, problem.members()[m].id));
            }
        }
        for (n, d) in r.displacements.iter().enumerate() {
            for p in 0..3 {
                if fixed[n][p] {
                    continue;
                }
                let q = ratio(d[p], dmin, dmax);
                if disp.map_or(true, |(w, _)| q > w) {
                    disp = Some((q, (problem.nodes()[n].id, Axis::ALL[p])));
                }
            }
        }
    }
    let max_stress_ratio = stress.map_or(0.0, |s| s.0.max(0.0));
    let max_disp_ratio = disp.map_or(0.0, |d| d.0.max(0.0));
    let limit = 1.0 + tolerance;
    ConstraintReport {
        max_stress_ratio,
        max_disp_ratio,
        feasible: max_stress_ratio <= limit && max_disp_ratio <= limit,
        worst_member: stress.map(|s| s.1),
        worst_node: disp.map(|d| d.1),
    }
}
