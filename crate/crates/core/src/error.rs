use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("face {face}: {reason}")]
    InvalidFace { face: usize, reason: String },
    #[error("duplicate face: face {face} repeats face {first}")]
    DuplicateFace { face: usize, first: usize },
    #[error("non-manifold edge ({u}, {v}): more than two incident faces")]
    NonManifoldEdge { u: usize, v: usize },
    #[error("non-manifold vertex {vertex}: incident faces do not form a single fan")]
    NonManifoldVertex { vertex: usize },
    #[error("faces {} and {} intersect in more than a vertex or an edge", faces.0, faces.1)]
    NotCellComplex { faces: (usize, usize) },
    #[error("invalid weight {weight} on edge ({u}, {v})")]
    InvalidWeight { u: usize, v: usize, weight: f64 },
    #[error("complex is disconnected")]
    Disconnected,
    #[error("mesh has boundary")]
    HasBoundary,
    #[error("not a cut graph: {0}")]
    NotCutGraph(String),
    #[error("cutting along the edge set leaves a piece that is not a disk")]
    NotDisks,
    #[error("mesh has {edges} edges, budget allows {max}")]
    BudgetExceeded { edges: usize, max: usize },
    #[error("instance too large for brute force: {0}")]
    TooLarge(String),
    #[error("no punctures")]
    NoPunctures,
    #[error("cycle is not simple and closed: {0}")]
    NotSimpleCycle(String),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
