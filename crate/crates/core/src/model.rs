//! Structural data model, design variables and the weight objective.
//!
//! Values are stored in the units the benchmark tables use: coordinates in
//! metres, forces in kN, elastic modulus in GPa, stress limits in MPa,
//! displacement limits in mm, density in kg/m³ and areas in mm². The solver
//! converts to SI once when it prepares a problem.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::ModelError;

/// Below this length (m) a member is treated as collapsed.
pub const MIN_MEMBER_LENGTH: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Axis::X => 'x',
            Axis::Y => 'y',
            Axis::Z => 'z',
        }
    }

    pub fn from_char(c: char) -> Option<Axis> {
        match c.to_ascii_lowercase() {
            'x' => Some(Axis::X),
            'y' => Some(Axis::Y),
            'z' => Some(Axis::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub id: u32,
    /// Base position in metres.
    pub position: [f64; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct Member {
    pub id: u32,
    pub start: u32,
    pub end: u32,
    pub group: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Support {
    pub node: u32,
    pub fixed: [bool; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodalLoad {
    pub node: u32,
    /// Force components in kN.
    pub force: [f64; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoadCase {
    pub id: u32,
    pub loads: Vec<NodalLoad>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Material {
    /// kg/m³
    pub density: f64,
    /// GPa
    pub elastic_modulus: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Limits {
    /// Allowed member stress range in MPa, compression negative.
    pub stress_min: f64,
    pub stress_max: f64,
    /// Allowed nodal displacement range in mm, applied per component.
    pub displacement_min: f64,
    pub displacement_max: f64,
}

impl Limits {
    pub fn symmetric(stress: f64, displacement: f64) -> Self {
        Self {
            stress_min: -stress,
            stress_max: stress,
            displacement_min: -displacement,
            displacement_max: displacement,
        }
    }
}

/// Plain description of a truss before validation.
#[derive(Debug, Clone, PartialEq)]
pub struct TrussData {
    pub name: String,
    /// Free-form remarks carried through the problem file.
    pub notes: Vec<String>,
    pub nodes: Vec<Node>,
    pub members: Vec<Member>,
    pub supports: Vec<Support>,
    pub load_cases: Vec<LoadCase>,
    pub material: Material,
    pub limits: Limits,
}

/// Node positions indexed like [`TrussProblem::nodes`].
pub type Coordinates = Vec<[f64; 3]>;

/// A validated, immutable truss model.
#[derive(Debug, Clone)]
pub struct TrussProblem {
    data: TrussData,
    node_index: HashMap<u32, usize>,
    member_ends: Vec<(usize, usize)>,
    groups: BTreeMap<u32, Vec<usize>>,
    fixed: Vec<[bool; 3]>,
}

impl PartialEq for TrussProblem {
    fn eq(&self, other: &Self) -> bool {
        self.data == other.data
    }
}

impl TrussProblem {
    pub fn new(data: TrussData) -> Result<Self, ModelError> {
        let mut node_index = HashMap::with_capacity(data.nodes.len());
        for (i, node) in data.nodes.iter().enumerate() {
            if node_index.insert(node.id, i).is_some() {
                return Err(ModelError::DuplicateNode(node.id));
            }
        }
        if data.members.is_empty() {
            return Err(ModelError::NoMembers);
        }
        let mut member_ids = HashMap::new();
        let mut member_ends = Vec::with_capacity(data.members.len());
        let mut groups: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (i, m) in data.members.iter().enumerate() {
            if member_ids.insert(m.id, i).is_some() {
                return Err(ModelError::DuplicateMember(m.id));
            }
            let lookup = |node| {
                node_index
                    .get(&node)
                    .copied()
                    .ok_or(ModelError::UnknownNode { member: m.id, node })
            };
            let (a, b) = (lookup(m.start)?, lookup(m.end)?);
            if a == b {
                return Err(ModelError::SelfLoop(m.id));
            }
            member_ends.push((a, b));
            groups.entry(m.group).or_default().push(i);
        }
        let mut fixed = vec![[false; 3]; data.nodes.len()];
        for s in &data.supports {
            let idx = *node_index.get(&s.node).ok_or_else(|| ModelError::DanglingNode {
                context: "support".into(),
                node: s.node,
            })?;
            for k in 0..3 {
                fixed[idx][k] |= s.fixed[k];
            }
        }
        if data.load_cases.is_empty() {
            return Err(ModelError::NoLoadCases);
        }
        for case in &data.load_cases {
            for load in &case.loads {
                if !node_index.contains_key(&load.node) {
                    return Err(ModelError::DanglingNode {
                        context: format!("load case {}", case.id),
                        node: load.node,
                    });
                }
            }
        }
        let m = data.material;
        if !(m.density > 0.0 && m.density.is_finite()) {
            return Err(ModelError::InvalidParameter { what: "density", value: m.density });
        }
        if !(m.elastic_modulus > 0.0 && m.elastic_modulus.is_finite()) {
            return Err(ModelError::InvalidParameter {
                what: "elastic modulus",
                value: m.elastic_modulus,
            });
        }
        let l = data.limits;
        if !(l.stress_min < l.stress_max) {
            return Err(ModelError::InvalidParameter { what: "stress limits", value: l.stress_min });
        }
        if !(l.displacement_min < l.displacement_max) {
            return Err(ModelError::InvalidParameter {
                what: "displacement limits",
                value: l.displacement_min,
            });
        }
        Ok(Self { data, node_index, member_ends, groups, fixed })
    }

    pub fn data(&self) -> &TrussData {
        &self.data
    }

    pub fn name(&self) -> &str {
        &self.data.name
    }

    pub fn nodes(&self) -> &[Node] {
        &self.data.nodes
    }

    pub fn members(&self) -> &[Member] {
        &self.data.members
    }

    pub fn load_cases(&self) -> &[LoadCase] {
        &self.data.load_cases
    }

    pub fn material(&self) -> Material {
        self.data.material
    }

    pub fn limits(&self) -> Limits {
        self.data.limits
    }

    pub fn node_index(&self, id: u32) -> Option<usize> {
        self.node_index.get(&id).copied()
    }

    /// Node indices of each member's ends.
    pub fn member_ends(&self) -> &[(usize, usize)] {
        &self.member_ends
    }

    /// Group id → member indices, ordered by group id.
    pub fn groups(&self) -> &BTreeMap<u32, Vec<usize>> {
        &self.groups
    }

    /// Per node index, which axes are restrained.
    pub fn fixed_dofs(&self) -> &[[bool; 3]] {
        &self.fixed
    }

    pub fn base_coordinates(&self) -> Coordinates {
        self.data.nodes.iter().map(|n| n.position).collect()
    }

    pub fn member_length(&self, coords: &[[f64; 3]], member: usize) -> Result<f64, ModelError> {
        let (a, b) = self.member_ends[member];
        member_length(coords[a], coords[b])
            .ok_or(ModelError::DegenerateMember(self.data.members[member].id))
    }
}

/// Euclidean distance between two points; `None` when they coincide.
pub fn member_length(a: [f64; 3], b: [f64; 3]) -> Option<f64> {
    let d = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let len = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
    (len > MIN_MEMBER_LENGTH).then_some(len)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Domain {
    /// Strictly ascending list of admissible values.
    Discrete(Vec<f64>),
    Continuous { lo: f64, hi: f64 },
}

impl Domain {
    pub fn is_discrete(&self) -> bool {
        matches!(self, Domain::Discrete(_))
    }

    pub fn bounds(&self) -> (f64, f64) {
        match self {
            Domain::Discrete(list) => (list[0], list[list.len() - 1]),
            Domain::Continuous { lo, hi } => (*lo, *hi),
        }
    }

    fn validate(&self, name: &str) -> Result<(), ModelError> {
        let bad = |reason: &str| ModelError::InvalidDomain {
            name: name.to_string(),
            reason: reason.to_string(),
        };
        match self {
            Domain::Discrete(list) => {
                if list.len() < 2 {
                    return Err(bad("discrete list needs at least two values"));
                }
                if list.iter().any(|v| !v.is_finite()) {
                    return Err(bad("discrete list contains a non-finite value"));
                }
                if list.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(bad("discrete list is not strictly ascending"));
                }
            }
            Domain::Continuous { lo, hi } => {
                if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                    return Err(bad("continuous bounds need lo < hi"));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// One coordinate driven by a shape variable: `coord = sign * value`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoordinateLink {
    pub node: u32,
    pub axis: Axis,
    pub sign: Sign,
}

impl CoordinateLink {
    pub fn new(node: u32, axis: Axis, sign: Sign) -> Self {
        Self { node, axis, sign }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Role {
    /// Cross-sectional area (mm²) of every member in the group.
    Sizing { group: u32 },
    /// A set of nodal coordinates (m) moved together.
    Shape { links: Vec<CoordinateLink> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct VariableSpec {
    pub name: String,
    pub role: Role,
    pub domain: Domain,
}

impl VariableSpec {
    pub fn sizing(name: impl Into<String>, group: u32, domain: Domain) -> Self {
        Self { name: name.into(), role: Role::Sizing { group }, domain }
    }

    pub fn shape(name: impl Into<String>, links: Vec<CoordinateLink>, domain: Domain) -> Self {
        Self { name: name.into(), role: Role::Shape { links }, domain }
    }

    pub fn is_sizing(&self) -> bool {
        matches!(self.role, Role::Sizing { .. })
    }
}

#[derive(Debug, Clone, Copy)]
struct ResolvedLink {
    node: usize,
    axis: usize,
    sign: f64,
}

/// Design variables validated against a particular problem.
///
/// Sizing variables are numbered in the order they appear in the spec list,
/// and so are shape variables.
#[derive(Debug, Clone)]
pub struct VariableSet {
    specs: Vec<VariableSpec>,
    sizing: Vec<usize>,
    shape: Vec<usize>,
    member_sizing: Vec<usize>,
    links: Vec<Vec<ResolvedLink>>,
    node_count: usize,
}

impl PartialEq for VariableSet {
    fn eq(&self, other: &Self) -> bool {
        self.specs == other.specs
    }
}

impl VariableSet {
    pub fn bind(problem: &TrussProblem, specs: Vec<VariableSpec>) -> Result<Self, ModelError> {
        if specs.is_empty() {
            return Err(ModelError::NoVariables);
        }
        let mut sizing = Vec::new();
        let mut shape = Vec::new();
        let mut group_var: BTreeMap<u32, usize> = BTreeMap::new();
        let mut linked: HashMap<(usize, usize), ()> = HashMap::new();
        let mut links = Vec::new();
        for (i, spec) in specs.iter().enumerate() {
            spec.domain.validate(&spec.name)?;
            match &spec.role {
                Role::Sizing { group } => {
                    if !problem.groups().contains_key(group) {
                        return Err(ModelError::UnknownGroup { name: spec.name.clone(), group: *group });
                    }
                    if group_var.insert(*group, sizing.len()).is_some() {
                        return Err(ModelError::GroupSizedTwice(*group));
                    }
                    let (lo, _) = spec.domain.bounds();
                    if lo <= 0.0 {
                        return Err(ModelError::InvalidDomain {
                            name: spec.name.clone(),
                            reason: "areas must be positive".into(),
                        });
                    }
                    sizing.push(i);
                }
                Role::Shape { links: set } => {
                    if set.is_empty() {
                        return Err(ModelError::EmptyLinkSet(spec.name.clone()));
                    }
                    let mut resolved = Vec::with_capacity(set.len());
                    for link in set {
                        let node = problem.node_index(link.node).ok_or_else(|| ModelError::DanglingNode {
                            context: format!("shape variable {}", spec.name),
                            node: link.node,
                        })?;
                        if linked.insert((node, link.axis.index()), ()).is_some() {
                            return Err(ModelError::CoordinateLinkedTwice {
                                node: link.node,
                                axis: link.axis.as_char(),
                            });
                        }
                        resolved.push(ResolvedLink { node, axis: link.axis.index(), sign: link.sign.factor() });
                    }
                    links.push(resolved);
                    shape.push(i);
                }
            }
        }
        if let Some(g) = problem.groups().keys().find(|g| !group_var.contains_key(g)) {
            return Err(ModelError::UncoveredGroup(*g));
        }
        let member_sizing = problem.members().iter().map(|m| group_var[&m.group]).collect();
        Ok(Self { specs, sizing, shape, member_sizing, links, node_count: problem.nodes().len() })
    }

    pub fn specs(&self) -> &[VariableSpec] {
        &self.specs
    }

    pub fn sizing_count(&self) -> usize {
        self.sizing.len()
    }

    pub fn shape_count(&self) -> usize {
        self.shape.len()
    }

    pub fn len(&self) -> usize {
        self.specs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.specs.is_empty()
    }

    pub fn sizing_spec(&self, i: usize) -> &VariableSpec {
        &self.specs[self.sizing[i]]
    }

    pub fn shape_spec(&self, i: usize) -> &VariableSpec {
        &self.specs[self.shape[i]]
    }

    /// Sizing-variable position of every member.
    pub fn member_sizing(&self) -> &[usize] {
        &self.member_sizing
    }

    fn check(&self, problem: &TrussProblem, design: &DesignVector) -> Result<(), ModelError> {
        if self.node_count != problem.nodes().len() || self.member_sizing.len() != problem.members().len() {
            return Err(ModelError::DesignShape("variable set was bound to a different problem".into()));
        }
        if design.sizing.len() != self.sizing.len() || design.shape.len() != self.shape.len() {
            return Err(ModelError::DesignShape(format!(
                "expected {} sizing and {} shape values, got {} and {}",
                self.sizing.len(),
                self.shape.len(),
                design.sizing.len(),
                design.shape.len()
            )));
        }
        Ok(())
    }

    /// Writes the shape values into `coords` (which must hold the base coordinates).
    pub(crate) fn write_shape(&self, shape: &[f64], coords: &mut [[f64; 3]]) {
        for (links, value) in self.links.iter().zip(shape) {
            for l in links {
                coords[l.node][l.axis] = l.sign * value;
            }
        }
    }
}

/// Current values of every sizing (mm²) and shape (m) variable, with the
/// per-variable pending flags (`true` until fixed in the current round).
#[derive(Debug, Clone, PartialEq)]
pub struct DesignVector {
    pub sizing: Vec<f64>,
    pub shape: Vec<f64>,
    pub sizing_pending: Vec<bool>,
    pub shape_pending: Vec<bool>,
}

impl DesignVector {
    /// A design with every variable still pending.
    pub fn new(sizing: Vec<f64>, shape: Vec<f64>) -> Self {
        let sizing_pending = vec![true; sizing.len()];
        let shape_pending = vec![true; shape.len()];
        Self { sizing, shape, sizing_pending, shape_pending }
    }

    /// A design with every variable determined.
    pub fn determined(sizing: Vec<f64>, shape: Vec<f64>) -> Self {
        let sizing_pending = vec![false; sizing.len()];
        let shape_pending = vec![false; shape.len()];
        Self { sizing, shape, sizing_pending, shape_pending }
    }

    pub fn is_terminal(&self) -> bool {
        self.sizing_pending.iter().chain(&self.shape_pending).all(|p| !p)
    }

    pub fn mark_pending(&mut self, pending: bool) {
        self.sizing_pending.iter_mut().for_each(|f| *f = pending);
        self.shape_pending.iter_mut().for_each(|f| *f = pending);
    }
}

/// Node coordinates after applying the design's shape variables.
pub fn apply_shape(
    problem: &TrussProblem,
    vars: &VariableSet,
    design: &DesignVector,
) -> Result<Coordinates, ModelError> {
    vars.check(problem, design)?;
    let mut coords = problem.base_coordinates();
    vars.write_shape(&design.shape, &mut coords);
    Ok(coords)
}

/// Structural mass in kg: density × Σ area × length.
pub fn total_weight(
    problem: &TrussProblem,
    vars: &VariableSet,
    design: &DesignVector,
) -> Result<f64, ModelError> {
    let coords = apply_shape(problem, vars, design)?;
    if let Some(a) = design.sizing.iter().find(|a| !(**a > 0.0)) {
        return Err(ModelError::InvalidParameter { what: "area", value: *a });
    }
    weight_of(problem, vars.member_sizing(), &coords, &design.sizing)
}

pub(crate) fn weight_of(
    problem: &TrussProblem,
    member_sizing: &[usize],
    coords: &[[f64; 3]],
    areas_mm2: &[f64],
) -> Result<f64, ModelError> {
    let mut sum = 0.0;
    for (m, &var) in member_sizing.iter().enumerate() {
        sum += areas_mm2[var] * 1e-6 * problem.member_length(coords, m)?;
    }
    Ok(problem.material().density * sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bar(length: f64, rho: f64) -> TrussProblem {
        TrussProblem::new(TrussData {
            name: "bar".into(),
            notes: vec![],
            nodes: vec![
                Node { id: 1, position: [0.0, 0.0, 0.0] },
                Node { id: 2, position: [length, 0.0, 0.0] },
            ],
            members: vec![Member { id: 1, start: 1, end: 2, group: 1 }],
            supports: vec![Support { node: 1, fixed: [true; 3] }],
            load_cases: vec![LoadCase { id: 1, loads: vec![] }],
            material: Material { density: rho, elastic_modulus: 200.0 },
            limits: Limits::symmetric(100.0, 10.0),
        })
        .unwrap()
    }

    fn shape_problem() -> TrussProblem {
        let nodes = (1..=10)
            .map(|id| Node { id, position: [id as f64, 2.0 * id as f64, 0.5] })
            .collect();
        TrussProblem::new(TrussData {
            name: "links".into(),
            notes: vec![],
            nodes,
            members: vec![Member { id: 1, start: 1, end: 2, group: 1 }],
            supports: vec![],
            load_cases: vec![LoadCase { id: 1, loads: vec![] }],
            material: Material { density: 1.0, elastic_modulus: 1.0 },
            limits: Limits::symmetric(1.0, 1.0),
        })
        .unwrap()
    }

    fn y7_links() -> Vec<CoordinateLink> {
        vec![
            CoordinateLink::new(7, Axis::Y, Sign::Plus),
            CoordinateLink::new(8, Axis::Y, Sign::Plus),
            CoordinateLink::new(9, Axis::Y, Sign::Minus),
            CoordinateLink::new(10, Axis::Y, Sign::Minus),
        ]
    }

    fn sizing1() -> VariableSpec {
        VariableSpec::sizing("A1", 1, Domain::Continuous { lo: 1.0, hi: 10.0 })
    }

    #[test]
    fn shape_links_apply_signed_values() {
        let p = shape_problem();
        let vars = VariableSet::bind(
            &p,
            vec![sizing1(), VariableSpec::shape("y7", y7_links(), Domain::Continuous { lo: 2.54, hi: 3.56 })],
        )
        .unwrap();
        let design = DesignVector::new(vec![1.0], vec![3.49]);
        let c = apply_shape(&p, &vars, &design).unwrap();
        assert_eq!(c[6][1], 3.49);
        assert_eq!(c[7][1], 3.49);
        assert_eq!(c[8][1], -3.49);
        assert_eq!(c[9][1], -3.49);
        // untouched coordinates keep their base values
        assert_eq!(c[6][0], 7.0);
        assert_eq!(c[0], [1.0, 2.0, 0.5]);
        assert_eq!(apply_shape(&p, &vars, &design).unwrap(), c);
    }

    #[test]
    fn no_shape_variables_is_identity() {
        let p = shape_problem();
        let vars = VariableSet::bind(&p, vec![sizing1()]).unwrap();
        let c = apply_shape(&p, &vars, &DesignVector::new(vec![2.0], vec![])).unwrap();
        assert_eq!(c, p.base_coordinates());
    }

    #[test]
    fn negative_link_of_zero_is_zero() {
        let p = shape_problem();
        let links = vec![CoordinateLink::new(3, Axis::X, Sign::Minus)];
        let vars = VariableSet::bind(
            &p,
            vec![sizing1(), VariableSpec::shape("x3", links, Domain::Continuous { lo: -1.0, hi: 1.0 })],
        )
        .unwrap();
        let c = apply_shape(&p, &vars, &DesignVector::new(vec![2.0], vec![0.0])).unwrap();
        assert_eq!(c[2][0], 0.0);
    }

    #[test]
    fn unknown_link_node_is_rejected() {
        let p = shape_problem();
        let links = vec![CoordinateLink::new(42, Axis::X, Sign::Plus)];
        let err = VariableSet::bind(
            &p,
            vec![sizing1(), VariableSpec::shape("bad", links, Domain::Continuous { lo: 0.0, hi: 1.0 })],
        )
        .unwrap_err();
        assert!(matches!(err, ModelError::DanglingNode { node: 42, .. }));
    }

    #[test]
    fn coordinate_linked_twice_is_rejected() {
        let p = shape_problem();
        let a = VariableSpec::shape("a", y7_links(), Domain::Continuous { lo: 0.0, hi: 1.0 });
        let b = VariableSpec::shape(
            "b",
            vec![CoordinateLink::new(8, Axis::Y, Sign::Minus)],
            Domain::Continuous { lo: 0.0, hi: 1.0 },
        );
        let err = VariableSet::bind(&p, vec![sizing1(), a, b]).unwrap_err();
        assert_eq!(err, ModelError::CoordinateLinkedTwice { node: 8, axis: 'y' });
    }

    #[test]
    fn domain_validation() {
        let p = shape_problem();
        let bad = VariableSpec::sizing("A", 1, Domain::Discrete(vec![1.0, 3.0, 2.0]));
        assert!(matches!(VariableSet::bind(&p, vec![bad]), Err(ModelError::InvalidDomain { .. })));
        let bad = VariableSpec::sizing("A", 1, Domain::Continuous { lo: 2.0, hi: 2.0 });
        assert!(matches!(VariableSet::bind(&p, vec![bad]), Err(ModelError::InvalidDomain { .. })));
        assert_eq!(VariableSet::bind(&p, vec![]), Err(ModelError::NoVariables));
    }

    #[test]
    fn lengths() {
        assert_eq!(member_length([0.0, 0.0, 0.0], [3.0, 4.0, 0.0]), Some(5.0));
        assert_eq!(member_length([0.0, 0.0, 0.0], [0.0, 0.0, 2.0]), Some(2.0));
        assert_eq!(member_length([1.0, 1.0, 1.0], [1.0, 1.0, 1.0]), None);
    }

    #[test]
    fn degenerate_member_propagates_from_weight() {
        let p = bar(0.0, 1.0);
        let vars = VariableSet::bind(&p, vec![sizing1()]).unwrap();
        let err = total_weight(&p, &vars, &DesignVector::new(vec![1.0], vec![])).unwrap_err();
        assert_eq!(err, ModelError::DegenerateMember(1));
    }

    #[test]
    fn single_member_weight() {
        let p = bar(2.0, 7860.0);
        let vars = VariableSet::bind(
            &p,
            vec![VariableSpec::sizing("A", 1, Domain::Continuous { lo: 1.0, hi: 5000.0 })],
        )
        .unwrap();
        let w = total_weight(&p, &vars, &DesignVector::new(vec![1000.0], vec![])).unwrap();
        assert!((w - 15.72).abs() < 1e-12);
    }

    #[test]
    fn group_weight_is_linear() {
        let mut data = bar(2.0, 7860.0).data().clone();
        data.nodes.push(Node { id: 3, position: [0.0, 2.0, 0.0] });
        data.members.push(Member { id: 2, start: 1, end: 3, group: 1 });
        let p = TrussProblem::new(data).unwrap();
        let vars = VariableSet::bind(
            &p,
            vec![VariableSpec::sizing("A", 1, Domain::Continuous { lo: 1.0, hi: 5000.0 })],
        )
        .unwrap();
        let w = total_weight(&p, &vars, &DesignVector::new(vec![1000.0], vec![])).unwrap();
        assert!((w - 2.0 * 15.72).abs() < 1e-12);
        let w2 = total_weight(&p, &vars, &DesignVector::new(vec![2000.0], vec![])).unwrap();
        assert!((w2 - 2.0 * w).abs() < 1e-12);
    }

    #[test]
    fn model_validation_errors() {
        let mut data = bar(1.0, 1.0).data().clone();
        data.members.push(Member { id: 2, start: 1, end: 9, group: 1 });
        assert_eq!(TrussProblem::new(data).unwrap_err(), ModelError::UnknownNode { member: 2, node: 9 });

        let mut data = bar(1.0, 1.0).data().clone();
        data.members.push(Member { id: 2, start: 2, end: 2, group: 1 });
        assert_eq!(TrussProblem::new(data).unwrap_err(), ModelError::SelfLoop(2));

        let mut data = bar(1.0, 1.0).data().clone();
        data.load_cases.clear();
        assert_eq!(TrussProblem::new(data).unwrap_err(), ModelError::NoLoadCases);
    }

    #[test]
    fn every_group_needs_a_variable() {
        let mut data = bar(1.0, 1.0).data().clone();
        data.members.push(Member { id: 2, start: 1, end: 2, group: 5 });
        let p = TrussProblem::new(data).unwrap();
        assert_eq!(VariableSet::bind(&p, vec![sizing1()]).unwrap_err(), ModelError::UncoveredGroup(5));
    }
}
