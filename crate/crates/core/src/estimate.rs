use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The graph parameter an estimator maintains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Param {
    Diameter,
    Radius,
    Eccentricities,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::Diameter => "diameter",
            Param::Radius => "radius",
            Param::Eccentricities => "eccentricities",
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "diameter" => Ok(Param::Diameter),
            "radius" => Ok(Param::Radius),
            "eccentricities" | "ecc" => Ok(Param::Eccentricities),
            other => Err(format!("unknown parameter `{other}`")),
        }
    }
}

/// Partially dynamic update model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    Incremental,
    Decremental,
}

/// Current output of an estimator. Values are reals because the radius and
/// eccentricity formulas apply correction factors; `f64::INFINITY` means
/// "no finite estimate".
#[derive(Debug, Clone, PartialEq)]
pub enum Estimate {
    Scalar(f64),
    PerVertex(Vec<f64>),
}

impl Estimate {
    pub fn scalar(&self) -> Option<f64> {
        match self {
            Estimate::Scalar(x) => Some(*x),
            Estimate::PerVertex(_) => None,
        }
    }

    pub fn per_vertex(&self) -> Option<&[f64]> {
        match self {
            Estimate::Scalar(_) => None,
            Estimate::PerVertex(v) => Some(v),
        }
    }

    /// Values indexed like the parameter list (one entry for scalars).
    pub fn values(&self) -> Vec<f64> {
        match self {
            Estimate::Scalar(x) => vec![*x],
            Estimate::PerVertex(v) => v.clone(),
        }
    }
}

/// Cumulative engine work split by the role of the engine.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct WorkBreakdown {
    /// Engines rooted at the random sample `S`, plus `d(·, S)`.
    pub sample: u64,
    /// Pivot engine, `S'` engines and `d'(S', ·)`.
    pub pivot: u64,
    /// Engines rooted at deterministic centers.
    pub centers: u64,
    /// Edges scanned while selecting centers.
    pub selection: u64,
}

impl WorkBreakdown {
    pub fn total(&self) -> u64 {
        self.sample + self.pivot + self.centers + self.selection
    }
}

impl std::ops::AddAssign for WorkBreakdown {
    fn add_assign(&mut self, o: Self) {
        self.sample += o.sample;
        self.pivot += o.pivot;
        self.centers += o.centers;
        self.selection += o.selection;
    }
}

/// Counters exposed for reports and benchmarks.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EstimatorStats {
    pub phase: u64,
    pub reinit_count: u64,
    /// Equal to `work_classes.total()`.
    pub work: u64,
    pub work_classes: WorkBreakdown,
    pub engines: usize,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EstimatorError {
    #[error("guess must be positive")]
    GuessNonPositive,
    #[error("epsilon {eps} outside {range}")]
    EpsOutOfRange { eps: f64, range: &'static str },
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("graph is not strongly connected")]
    NotStronglyConnected,
    #[error("vertex {0} left without a center")]
    NotCoveringScope(usize),
    #[error("{0:?} updates are not accepted by this estimator")]
    ModeMismatch(crate::graph::UpdateKind),
    #[error(transparent)]
    Sssp(#[from] crate::sssp::SsspError),
    #[error(transparent)]
    Bootstrap(#[from] crate::bootstrap::BootstrapError),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
}
