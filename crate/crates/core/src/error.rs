use thiserror::Error;

/// Problems with the structural model or the design variables bound to it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("node {0} is defined more than once")]
    DuplicateNode(u32),
    #[error("member {0} is defined more than once")]
    DuplicateMember(u32),
    #[error("member {member} references unknown node {node}")]
    UnknownNode { member: u32, node: u32 },
    #[error("{context} references unknown node {node}")]
    DanglingNode { context: String, node: u32 },
    #[error("member {0} connects a node to itself")]
    SelfLoop(u32),
    #[error("member {0} has zero length")]
    DegenerateMember(u32),
    #[error("group {0} has no design variable")]
    UncoveredGroup(u32),
    #[error("group {0} is sized by more than one variable")]
    GroupSizedTwice(u32),
    #[error("sizing variable {name} targets unknown group {group}")]
    UnknownGroup { name: String, group: u32 },
    #[error("coordinate {node}{axis} is linked by more than one shape variable")]
    CoordinateLinkedTwice { node: u32, axis: char },
    #[error("shape variable {0} has an empty link set")]
    EmptyLinkSet(String),
    #[error("variable {name}: {reason}")]
    InvalidDomain { name: String, reason: String },
    #[error("no design variables")]
    NoVariables,
    #[error("no load cases")]
    NoLoadCases,
    #[error("no members")]
    NoMembers,
    #[error("invalid {what}: {value}")]
    InvalidParameter { what: &'static str, value: f64 },
    #[error("design vector does not match the variable set: {0}")]
    DesignShape(String),
}

/// Failures of the direct stiffness solve.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FemError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("stiffness matrix is singular at free DOF {dof} (mechanism or missing support)")]
    Singular { dof: usize },
    #[error("relative residual {residual:e} exceeds tolerance")]
    IllConditioned { residual: f64 },
    #[error("load vector has length {got}, expected {expected}")]
    LoadLength { got: usize, expected: usize },
}

/// Invalid optimizer or schedule configuration.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("unknown acceleration kind `{0}` (expected none, geometric, linear or step)")]
    UnknownAccel(String),
    #[error("unknown reward mode `{0}` (expected best or average)")]
    UnknownRewardMode(String),
    #[error("invalid {what}: {value}")]
    OutOfRange { what: &'static str, value: f64 },
    #[error("invalid configuration: {0}")]
    Invalid(String),
    #[error("minimum of S is zero; improvement factor undefined")]
    ZeroReference,
}

/// Runtime state violations inside a search round.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum StateError {
    #[error("value {value} is not an element of the discrete list")]
    NotInList { value: f64 },
}

/// Top-level error for optimization runs.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Fem(#[from] FemError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Parse(#[from] crate::io::ParseError),
    #[error("unknown benchmark or fixture `{0}`")]
    UnknownBenchmark(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
