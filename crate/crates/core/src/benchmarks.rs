//! Benchmark problems and small statically determinate fixtures.
//!
//! The 10-bar and 25-bar geometries are the usual literature configurations
//! (originally tabulated in inches). The 220-bar tower geometry is a
//! reconstruction: level heights and plan offsets are the midpoints of the
//! shape-variable bounds, and the base square is an assumption.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ModelError};
use crate::model::{
    Axis, CoordinateLink, Domain, Limits, LoadCase, Material, Member, NodalLoad, Node, Sign, Support, TrussData,
    TrussProblem, VariableSet, VariableSpec,
};

const INCH: f64 = 0.0254;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BenchmarkId {
    TenBarContinuous,
    TwentyFiveBarMixed,
    TwentyFiveBarDiscrete,
    TwentyFiveBarContinuous,
    Tower220Mixed,
    TwoBarFixture,
}

impl BenchmarkId {
    pub const ALL: [BenchmarkId; 6] = [
        BenchmarkId::TenBarContinuous,
        BenchmarkId::TwentyFiveBarMixed,
        BenchmarkId::TwentyFiveBarDiscrete,
        BenchmarkId::TwentyFiveBarContinuous,
        BenchmarkId::Tower220Mixed,
        BenchmarkId::TwoBarFixture,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BenchmarkId::TenBarContinuous => "ten_bar_continuous",
            BenchmarkId::TwentyFiveBarMixed => "twenty_five_bar_mixed",
            BenchmarkId::TwentyFiveBarDiscrete => "twenty_five_bar_discrete",
            BenchmarkId::TwentyFiveBarContinuous => "twenty_five_bar_continuous",
            BenchmarkId::Tower220Mixed => "tower_220_mixed",
            BenchmarkId::TwoBarFixture => "two_bar_fixture",
        }
    }
}

impl fmt::Display for BenchmarkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchmarkId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BenchmarkId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownBenchmark(s.to_string()))
    }
}

/// A benchmark problem with its design variables bound.
#[derive(Debug, Clone)]
pub struct Benchmark {
    pub problem: TrussProblem,
    pub vars: VariableSet,
}

pub fn build_benchmark(id: BenchmarkId) -> Benchmark {
    let (data, specs) = match id {
        BenchmarkId::TenBarContinuous => ten_bar(),
        BenchmarkId::TwentyFiveBarMixed => twenty_five_bar(true, false),
        BenchmarkId::TwentyFiveBarDiscrete => twenty_five_bar(true, true),
        BenchmarkId::TwentyFiveBarContinuous => twenty_five_bar(false, false),
        BenchmarkId::Tower220Mixed => tower_220(),
        BenchmarkId::TwoBarFixture => two_bar_design(),
    };
    let problem = TrussProblem::new(data).expect("benchmark data is valid");
    let vars = VariableSet::bind(&problem, specs).expect("benchmark variables are valid");
    Benchmark { problem, vars }
}

fn node(id: u32, x: f64, y: f64, z: f64) -> Node {
    Node { id, position: [x, y, z] }
}

fn member(id: u32, start: u32, end: u32, group: u32) -> Member {
    Member { id, start, end, group }
}

fn pinned(node: u32) -> Support {
    Support { node, fixed: [true; 3] }
}

fn load(node: u32, fx: f64, fy: f64, fz: f64) -> NodalLoad {
    NodalLoad { node, force: [fx, fy, fz] }
}

fn link(node: u32, axis: Axis, sign: Sign) -> CoordinateLink {
    CoordinateLink::new(node, axis, sign)
}

fn continuous(lo: f64, hi: f64) -> Domain {
    Domain::Continuous { lo, hi }
}

/// 25-bar sizing list: 0.65 to 22.10 cm² in steps of 0.65 cm², as mm².
pub fn twenty_five_bar_area_list() -> Vec<f64> {
    (1..=34).map(|k| k as f64 * 65.0).collect()
}

/// AISC area list (mm²) used by the tower.
pub const AISC_AREAS: [f64; 64] = [
    71.61, 90.97, 126.45, 161.29, 198.06, 252.26, 285.16, 363.23, 388.39, 494.19, 506.45, 641.29, 645.16, 792.26,
    816.77, 940.00, 1008.39, 1045.16, 1161.29, 1283.87, 1374.19, 1535.48, 1690.32, 1696.77, 1858.06, 1890.32,
    1993.54, 2019.35, 2180.64, 2238.71, 2290.32, 2341.93, 2477.41, 2496.77, 2503.22, 2696.77, 2722.58, 2896.77,
    2961.28, 3096.77, 3206.45, 3303.22, 3703.22, 4658.06, 5141.93, 5503.22, 5999.99, 6999.99, 7419.34, 8709.66,
    8967.72, 9161.27, 9999.98, 10322.56, 10903.20, 12129.01, 12838.68, 14193.52, 14774.16, 15806.42, 17096.74,
    18064.48, 19354.80, 21612.86,
];

fn ten_bar() -> (TrussData, Vec<VariableSpec>) {
    let nodes = vec![
        node(1, 18.288, 9.144, 0.0),
        node(2, 18.288, 0.0, 0.0),
        node(3, 9.144, 9.144, 0.0),
        node(4, 9.144, 0.0, 0.0),
        node(5, 0.0, 9.144, 0.0),
        node(6, 0.0, 0.0, 0.0),
    ];
    let ends = [(3, 5), (1, 3), (4, 6), (2, 4), (3, 4), (1, 2), (4, 5), (3, 6), (2, 3), (1, 4)];
    let members = ends.iter().enumerate().map(|(i, &(a, b))| member(i as u32 + 1, a, b, i as u32 + 1)).collect();
    let mut supports = vec![pinned(5), pinned(6)];
    supports.extend((1..=4).map(|n| Support { node: n, fixed: [false, false, true] }));
    let data = TrussData {
        name: "ten_bar_continuous".into(),
        notes: vec!["geometry reconstructed from the canonical 10-bar benchmark (two 9.144 m bays)".into()],
        nodes,
        members,
        supports,
        load_cases: vec![LoadCase { id: 1, loads: vec![load(2, 0.0, -444.82, 0.0), load(4, 0.0, -444.82, 0.0)] }],
        material: Material { density: 2767.99, elastic_modulus: 68.95 },
        limits: Limits::symmetric(172.37, 50.80),
    };
    let specs = (1..=10).map(|g| VariableSpec::sizing(format!("X{g}"), g, continuous(64.52, 22582.0))).collect();
    (data, specs)
}

fn twenty_five_bar(discrete_sizing: bool, discrete_shape: bool) -> (TrussData, Vec<VariableSpec>) {
    let a = 37.5 * INCH;
    let b = 100.0 * INCH;
    let nodes = vec![
        node(1, -a, 0.0, 2.0 * b),
        node(2, a, 0.0, 2.0 * b),
        node(3, -a, a, b),
        node(4, a, a, b),
        node(5, a, -a, b),
        node(6, -a, -a, b),
        node(7, -b, b, 0.0),
        node(8, b, b, 0.0),
        node(9, b, -b, 0.0),
        node(10, -b, -b, 0.0),
    ];
    let ends = [
        (1, 2),
        (1, 4),
        (2, 3),
        (1, 5),
        (2, 6),
        (2, 5),
        (2, 4),
        (1, 3),
        (1, 6),
        (3, 6),
        (4, 5),
        (3, 4),
        (5, 6),
        (3, 10),
        (6, 7),
        (4, 9),
        (5, 8),
        (3, 8),
        (4, 7),
        (6, 9),
        (5, 10),
        (3, 7),
        (4, 8),
        (5, 9),
        (6, 10),
    ];
    let group_of = |m: u32| match m {
        1 => 1,
        2..=5 => 2,
        6..=9 => 3,
        10..=11 => 4,
        12..=13 => 5,
        14..=17 => 6,
        18..=21 => 7,
        _ => 8,
    };
    let members = ends
        .iter()
        .enumerate()
        .map(|(i, &(s, e))| member(i as u32 + 1, s, e, group_of(i as u32 + 1)))
        .collect();
    let kind = match (discrete_sizing, discrete_shape) {
        (true, true) => "discrete",
        (true, false) => "mixed",
        _ => "continuous",
    };
    let data = TrussData {
        name: format!("twenty_five_bar_{kind}"),
        notes: vec!["geometry reconstructed from the canonical 25-bar benchmark (inch dimensions)".into()],
        nodes,
        members,
        supports: (7..=10).map(pinned).collect(),
        load_cases: vec![LoadCase {
            id: 1,
            loads: vec![
                load(1, 4.45, -44.48, -44.48),
                load(2, 0.0, -44.48, -44.48),
                load(3, 2.22, 0.0, 0.0),
                load(6, 2.67, 0.0, 0.0),
            ],
        }],
        material: Material { density: 2767.99, elastic_modulus: 68.95 },
        limits: Limits::symmetric(275.79, 8.89),
    };

    let mut specs: Vec<VariableSpec> = (1..=8)
        .map(|g| {
            let domain = if discrete_sizing { Domain::Discrete(twenty_five_bar_area_list()) } else { continuous(64.52, 2193.68) };
            VariableSpec::sizing(format!("X{g}"), g, domain)
        })
        .collect();

    use Axis::{X, Y, Z};
    use Sign::{Minus, Plus};
    let links = [
        vec![link(4, X, Plus), link(5, X, Plus), link(3, X, Minus), link(6, X, Minus)],
        vec![link(3, Y, Plus), link(4, Y, Plus), link(5, Y, Minus), link(6, Y, Minus)],
        vec![link(3, Z, Plus), link(4, Z, Plus), link(5, Z, Plus), link(6, Z, Plus)],
        vec![link(8, X, Plus), link(9, X, Plus), link(7, X, Minus), link(10, X, Minus)],
        vec![link(7, Y, Plus), link(8, Y, Plus), link(9, Y, Minus), link(10, Y, Minus)],
    ];
    let bounds = [(0.51, 1.52), (1.02, 2.03), (2.29, 3.30), (1.02, 2.03), (2.54, 3.56)];
    // discrete lists: 17 values in 2.5 inch steps
    let first_inch = [20.0, 40.0, 90.0, 40.0, 100.0];
    for (i, l) in links.into_iter().enumerate() {
        let domain = if discrete_shape {
            Domain::Discrete((0..17).map(|k| (first_inch[i] + 2.5 * k as f64) * INCH).collect())
        } else {
            continuous(bounds[i].0, bounds[i].1)
        };
        specs.push(VariableSpec::shape(format!("Y{}", i + 1), l, domain));
    }
    (data, specs)
}

/// Shape bounds of the tower: plan offsets Y1..Y6, apex x/y, then 13 level heights.
const TOWER_SHAPE_BOUNDS: [(f64, f64); 21] = [
    (-0.25, 0.25),
    (2.79, 3.30),
    (0.25, 0.76),
    (2.29, 2.79),
    (0.76, 1.27),
    (1.78, 2.29),
    (1.27, 1.78),
    (1.27, 1.78),
    (1.27, 1.78),
    (2.79, 3.30),
    (4.32, 4.83),
    (5.84, 6.35),
    (7.34, 7.87),
    (8.89, 9.40),
    (10.41, 10.92),
    (11.94, 12.45),
    (13.46, 13.97),
    (14.99, 15.49),
    (16.51, 17.02),
    (18.03, 18.54),
    (19.56, 20.07),
];

/// Plan corner pattern of a level with low/high offsets (a, b).
fn corners(a: f64, b: f64) -> [(f64, f64); 4] {
    [(a, a), (b, a), (b, b), (a, b)]
}

fn tower_220() -> (TrussData, Vec<VariableSpec>) {
    let mid = |i: usize| 0.5 * (TOWER_SHAPE_BOUNDS[i].0 + TOWER_SHAPE_BOUNDS[i].1);
    let mut nodes = Vec::with_capacity(53);
    for (k, &(x, y)) in corners(-0.51, 3.56).iter().enumerate() {
        nodes.push(node(k as u32 + 1, x, y, 0.0));
    }
    for level in 0..12usize {
        let pair = level / 4;
        let (a, b) = (mid(2 * pair), mid(2 * pair + 1));
        let z = mid(8 + level);
        for (k, &(x, y)) in corners(a, b).iter().enumerate() {
            nodes.push(node((4 * (level + 1) + k + 1) as u32, x, y, z));
        }
    }
    nodes.push(node(53, mid(6), mid(7), mid(20)));

    let mut members = Vec::with_capacity(220);
    let mut push = |s: u32, e: u32, g: u32| {
        let id = members.len() as u32 + 1;
        members.push(member(id, s, e, g));
    };
    for k in 0..12u32 {
        let l = |i: u32| 4 * k + 1 + i % 4;
        let u = |i: u32| 4 * k + 5 + i % 4;
        let g = 4 * k;
        for i in 0..4 {
            push(l(i), u(i), g + 1);
        }
        for i in 0..4 {
            push(l(i), u(i + 1), g + 2);
            push(l(i + 1), u(i), g + 2);
        }
        for i in 0..4 {
            push(u(i), u(i + 1), g + 3);
        }
        push(u(0), u(2), g + 4);
        push(u(1), u(3), g + 4);
    }
    for n in 49..=52 {
        push(n, 53, 49);
    }

    let mut case1: Vec<NodalLoad> = (49..=52).map(|n| load(n, 0.0, 0.0, 0.0)).collect();
    case1.push(load(53, 0.0, 0.0, -2000.0));
    let case2 = (49..=53).map(|n| load(n, 0.0, 0.0, -400.0)).collect();
    let data = TrussData {
        name: "tower_220_mixed".into(),
        notes: vec![
            "geometry reconstructed: levels and plan offsets at the midpoints of the shape bounds".into(),
            "base square corners at -0.51 and 3.56 m are assumed".into(),
        ],
        nodes,
        members,
        supports: (1..=4).map(pinned).collect(),
        load_cases: vec![LoadCase { id: 1, loads: case1 }, LoadCase { id: 2, loads: case2 }],
        material: Material { density: 7860.0, elastic_modulus: 207.0 },
        limits: Limits::symmetric(180.0, 6.35),
    };

    let mut specs: Vec<VariableSpec> =
        (1..=49).map(|g| VariableSpec::sizing(format!("X{g}"), g, Domain::Discrete(AISC_AREAS.to_vec()))).collect();
    // plan offsets: pair j drives levels 4j+1..4j+4, low value on the a-slots and high on the b-slots
    for pair in 0..3usize {
        let mut low = Vec::new();
        let mut high = Vec::new();
        for level in 4 * pair..4 * pair + 4 {
            let base = 4 * (level + 1) as u32;
            for (k, (xa, ya)) in [(true, true), (false, true), (false, false), (true, false)].into_iter().enumerate() {
                let n = base + k as u32 + 1;
                if xa { &mut low } else { &mut high }.push(link(n, Axis::X, Sign::Plus));
                if ya { &mut low } else { &mut high }.push(link(n, Axis::Y, Sign::Plus));
            }
        }
        let (lo_a, hi_a) = TOWER_SHAPE_BOUNDS[2 * pair];
        let (lo_b, hi_b) = TOWER_SHAPE_BOUNDS[2 * pair + 1];
        specs.push(VariableSpec::shape(format!("Y{}", 2 * pair + 1), low, continuous(lo_a, hi_a)));
        specs.push(VariableSpec::shape(format!("Y{}", 2 * pair + 2), high, continuous(lo_b, hi_b)));
    }
    specs.push(VariableSpec::shape("Y7", vec![link(53, Axis::X, Sign::Plus)], continuous(1.27, 1.78)));
    specs.push(VariableSpec::shape("Y8", vec![link(53, Axis::Y, Sign::Plus)], continuous(1.27, 1.78)));
    for level in 0..12usize {
        let base = 4 * (level + 1) as u32;
        let l = (1..=4).map(|k| link(base + k, Axis::Z, Sign::Plus)).collect();
        let (lo, hi) = TOWER_SHAPE_BOUNDS[8 + level];
        specs.push(VariableSpec::shape(format!("Y{}", 9 + level), l, continuous(lo, hi)));
    }
    specs.push(VariableSpec::shape("Y21", vec![link(53, Axis::Z, Sign::Plus)], continuous(19.56, 20.07)));
    (data, specs)
}

/// Two-bar planar truss with two sizing and two shape variables.
fn two_bar_design() -> (TrussData, Vec<VariableSpec>) {
    let data = TrussData {
        name: "two_bar_fixture".into(),
        notes: vec!["symmetric supports 2 m apart; the loaded node moves in x and y".into()],
        nodes: vec![node(1, 0.0, 0.0, 0.0), node(2, 2.0, 0.0, 0.0), node(3, 1.0, 1.0, 0.0)],
        members: vec![member(1, 1, 3, 1), member(2, 2, 3, 2)],
        supports: vec![pinned(1), pinned(2), Support { node: 3, fixed: [false, false, true] }],
        load_cases: vec![LoadCase { id: 1, loads: vec![load(3, 0.0, -100.0, 0.0)] }],
        material: Material { density: 7860.0, elastic_modulus: 200.0 },
        limits: Limits::symmetric(150.0, 10.0),
    };
    let specs = vec![
        VariableSpec::sizing("X1", 1, continuous(50.0, 2000.0)),
        VariableSpec::sizing("X2", 2, continuous(50.0, 2000.0)),
        VariableSpec::shape("Y1", vec![link(3, Axis::X, Sign::Plus)], continuous(0.5, 1.5)),
        VariableSpec::shape("Y2", vec![link(3, Axis::Y, Sign::Plus)], continuous(0.5, 2.0)),
    ];
    (data, specs)
}

/// A statically determinate test truss with hand-derived answers.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub problem: TrussProblem,
    /// Area of each member (mm²), in member order.
    pub areas: Vec<f64>,
    /// Closed-form axial force per member (kN, tension positive), load case 1.
    pub forces: Vec<f64>,
    /// Closed-form displacement (node id, axis, mm), load case 1.
    pub displacement: Option<(u32, Axis, f64)>,
    pub expects_singular: bool,
}

pub const FIXTURES: [&str; 7] =
    ["axial_bar", "two_bar", "asymmetric_two_bar", "tripod", "simple_triangle", "collinear_bars", "unsupported_bar"];

fn planar(nodes: &[Node], supports: Vec<Support>) -> Vec<Support> {
    let mut out = supports;
    for n in nodes {
        if !out.iter().any(|s| s.node == n.id) {
            out.push(Support { node: n.id, fixed: [false, false, true] });
        }
    }
    out
}

fn fixture_data(name: &str, nodes: Vec<Node>, members: Vec<Member>, supports: Vec<Support>, loads: Vec<NodalLoad>) -> TrussData {
    TrussData {
        name: name.into(),
        notes: vec![],
        nodes,
        members,
        supports,
        load_cases: vec![LoadCase { id: 1, loads }],
        material: Material { density: 7860.0, elastic_modulus: 200.0 },
        limits: Limits::symmetric(250.0, 25.0),
    }
}

pub fn build_fixture(name: &str) -> Result<Fixture, Error> {
    let e_kn_per_mm2 = 200.0; // 200 GPa = 200 kN/mm²
    let f = match name {
        "axial_bar" => {
            let nodes = vec![node(1, 0.0, 0.0, 0.0), node(2, 2.0, 0.0, 0.0)];
            let supports = vec![pinned(1), Support { node: 2, fixed: [false, true, true] }];
            let data = fixture_data(name, nodes, vec![member(1, 1, 2, 1)], supports, vec![load(2, 10.0, 0.0, 0.0)]);
            // u = F L / (E A)
            let u = 10.0 * 2000.0 / (e_kn_per_mm2 * 1000.0);
            (data, vec![1000.0], vec![10.0], Some((2, Axis::X, u)), false)
        }
        "two_bar" => {
            let (h, p) = (1.5, 100.0);
            let nodes = vec![node(1, 0.0, 0.0, 0.0), node(2, 2.0, 0.0, 0.0), node(3, 1.0, h, 0.0)];
            let supports = planar(&nodes, vec![pinned(1), pinned(2)]);
            let members = vec![member(1, 1, 3, 1), member(2, 2, 3, 1)];
            let len = (1.0f64 + h * h).sqrt();
            let sin = h / len;
            let n = -p / (2.0 * sin);
            let area = 800.0;
            // vertical tip movement: elongation N L / (E A) = v sin
            let v = n * len * 1000.0 / (e_kn_per_mm2 * area) / sin;
            let data = fixture_data(name, nodes, members, supports, vec![load(3, 0.0, -p, 0.0)]);
            (data, vec![area; 2], vec![n, n], Some((3, Axis::Y, v)), false)
        }
        "asymmetric_two_bar" => {
            let (px, py) = (30.0, -50.0);
            let nodes = vec![node(1, 0.0, 0.0, 0.0), node(2, 4.0, 0.0, 0.0), node(3, 1.0, 2.0, 0.0)];
            let supports = planar(&nodes, vec![pinned(1), pinned(2)]);
            let members = vec![member(1, 1, 3, 1), member(2, 2, 3, 2)];
            // unit vectors from node 3 toward each support; tension pulls node 3 along them, so N1 e1 + N2 e2 = -P
            let e1 = [-1.0 / 5f64.sqrt(), -2.0 / 5f64.sqrt()];
            let e2 = [3.0 / 13f64.sqrt(), -2.0 / 13f64.sqrt()];
            let det = e1[0] * e2[1] - e1[1] * e2[0];
            let n1 = (-px * e2[1] + py * e2[0]) / det;
            let n2 = (-e1[0] * py + e1[1] * px) / det;
            let data = fixture_data(name, nodes, members, supports, vec![load(3, px, py, 0.0)]);
            (data, vec![600.0, 900.0], vec![n1, n2], None, false)
        }
        "tripod" => {
            let (r, h, p) = (1.0, 2.0, 90.0);
            let mut nodes = vec![node(4, 0.0, 0.0, h)];
            for k in 0..3 {
                let t = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
                nodes.push(node(k + 1, r * t.cos(), r * t.sin(), 0.0));
            }
            let members = (1..=3).map(|k| member(k, k, 4, 1)).collect();
            let len = (r * r + h * h).sqrt();
            let n = -p / (3.0 * h / len);
            let data = fixture_data(name, nodes, members, (1..=3).map(pinned).collect(), vec![load(4, 0.0, 0.0, -p)]);
            let area = 500.0;
            let w = n * len * 1000.0 / (e_kn_per_mm2 * area) / (h / len);
            (data, vec![area; 3], vec![n; 3], Some((4, Axis::Z, w)), false)
        }
        "simple_triangle" => {
            let (span, h, p) = (4.0, 3.0, 60.0);
            let nodes = vec![node(1, 0.0, 0.0, 0.0), node(2, span, 0.0, 0.0), node(3, span / 2.0, h, 0.0)];
            let supports = planar(&nodes, vec![pinned(1), Support { node: 2, fixed: [false, true, true] }]);
            let members = vec![member(1, 1, 2, 1), member(2, 1, 3, 2), member(3, 2, 3, 2)];
            let len = (span * span / 4.0 + h * h).sqrt();
            let (sin, cos) = (h / len, span / 2.0 / len);
            let diag = -p / (2.0 * sin);
            let chord = -diag * cos;
            let data = fixture_data(name, nodes, members, supports, vec![load(3, 0.0, -p, 0.0)]);
            (data, vec![300.0, 700.0, 700.0], vec![chord, diag, diag], None, false)
        }
        "collinear_bars" => {
            let (f2, f3) = (-15.0, 25.0);
            let nodes = vec![node(1, 0.0, 0.0, 0.0), node(2, 1.0, 0.0, 0.0), node(3, 3.0, 0.0, 0.0)];
            let supports = vec![
                pinned(1),
                Support { node: 2, fixed: [false, true, true] },
                Support { node: 3, fixed: [false, true, true] },
            ];
            let members = vec![member(1, 1, 2, 1), member(2, 2, 3, 2)];
            let (a1, a2) = (400.0, 250.0);
            let (n1, n2) = (f2 + f3, f3);
            let u3 = n1 * 1000.0 / (e_kn_per_mm2 * a1) + n2 * 2000.0 / (e_kn_per_mm2 * a2);
            let data = fixture_data(name, nodes, members, supports, vec![load(2, f2, 0.0, 0.0), load(3, f3, 0.0, 0.0)]);
            (data, vec![a1, a2], vec![n1, n2], Some((3, Axis::X, u3)), false)
        }
        "unsupported_bar" => {
            let nodes = vec![node(1, 0.0, 0.0, 0.0), node(2, 1.0, 0.0, 0.0)];
            let data = fixture_data(name, nodes, vec![member(1, 1, 2, 1)], vec![], vec![load(2, 1.0, 0.0, 0.0)]);
            (data, vec![100.0], vec![], None, true)
        }
        other => return Err(Error::UnknownBenchmark(other.to_string())),
    };
    let (data, areas, forces, displacement, expects_singular) = f;
    let name = FIXTURES.iter().copied().find(|n| *n == name).expect("listed fixture");
    let problem = TrussProblem::new(data).map_err(|e: ModelError| Error::Model(e))?;
    Ok(Fixture { name, problem, areas, forces, displacement, expects_singular })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Role;

    #[test]
    fn ids_round_trip() {
        for id in BenchmarkId::ALL {
            assert_eq!(id.name().parse::<BenchmarkId>().unwrap(), id);
        }
        assert!("fifteen_bar".parse::<BenchmarkId>().is_err());
    }

    #[test]
    fn twenty_five_bar_groups() {
        let b = build_benchmark(BenchmarkId::TwentyFiveBarMixed);
        assert_eq!(b.problem.members().len(), 25);
        assert_eq!(b.problem.groups().len(), 8);
        let g3: Vec<u32> = b.problem.groups()[&3].iter().map(|&m| b.problem.members()[m].id).collect();
        assert_eq!(g3, vec![6, 7, 8, 9]);
        assert_eq!((b.vars.sizing_count(), b.vars.shape_count()), (8, 5));
    }

    #[test]
    fn twenty_five_bar_discrete_lists() {
        let b = build_benchmark(BenchmarkId::TwentyFiveBarDiscrete);
        let sizing = &b.vars.sizing_spec(0).domain;
        let Domain::Discrete(list) = sizing else { panic!() };
        assert_eq!(list.len(), 34);
        assert_eq!((list[0], list[33]), (65.0, 2210.0));
        let ends = [(0.51, 1.52), (1.02, 2.03), (2.29, 3.30), (1.02, 2.03), (2.54, 3.56)];
        for (i, (lo, hi)) in ends.into_iter().enumerate() {
            let Domain::Discrete(l) = &b.vars.shape_spec(i).domain else { panic!() };
            assert_eq!(l.len(), 17);
            assert!(l.windows(2).all(|w| w[0] < w[1]));
            assert!((l[0] - lo).abs() < 0.005 && (l[16] - hi).abs() < 0.005);
        }
    }

    #[test]
    fn tower_tables() {
        let b = build_benchmark(BenchmarkId::Tower220Mixed);
        assert_eq!(b.problem.nodes().len(), 53);
        assert_eq!(b.problem.members().len(), 220);
        assert_eq!(b.problem.groups().len(), 49);
        let sizes: Vec<usize> = b.problem.groups().values().map(|m| m.len()).collect();
        for (g, &n) in sizes.iter().enumerate() {
            let expected = if g == 48 { 4 } else { [4, 8, 4, 2][g % 4] };
            assert_eq!(n, expected, "group {}", g + 1);
        }
        let Domain::Discrete(list) = &b.vars.sizing_spec(0).domain else { panic!() };
        assert_eq!((list.len(), list[0], list[63]), (64, 71.61, 21612.86));
        assert_eq!(b.vars.shape_count(), 21);
        assert_eq!(b.problem.load_cases().len(), 2);
        // every moving coordinate is linked exactly once
        let linked: usize = b
            .vars
            .specs()
            .iter()
            .map(|s| match &s.role {
                Role::Shape { links } => links.len(),
                _ => 0,
            })
            .sum();
        assert_eq!(linked, 48 * 2 + 2 + 48 + 1);
    }

    #[test]
    fn ten_bar_bounds() {
        let b = build_benchmark(BenchmarkId::TenBarContinuous);
        assert_eq!(b.vars.sizing_count(), 10);
        assert_eq!(b.vars.shape_count(), 0);
        assert_eq!(b.vars.sizing_spec(0).domain.bounds(), (64.52, 22582.0));
    }

    #[test]
    fn fixtures_build() {
        for name in FIXTURES {
            let f = build_fixture(name).unwrap();
            assert_eq!(f.areas.len(), f.problem.members().len());
            assert!(f.expects_singular || f.forces.len() == f.areas.len());
        }
        assert!(build_fixture("nope").is_err());
    }

    #[test]
    fn symmetric_two_bar_force() {
        let f = build_fixture("two_bar").unwrap();
        let sin = 1.5 / 3.25f64.sqrt();
        assert!((f.forces[0] + 100.0 / (2.0 * sin)).abs() < 1e-12);
    }
}
