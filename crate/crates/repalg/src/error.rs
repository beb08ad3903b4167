use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },

    #[error("owner algebra mismatch: {context}")]
    OwnerMismatch { context: String },

    #[error("quiver has an oriented cycle: {context}")]
    CycleDetected { context: String },

    #[error("relation is not admissible: {context}")]
    NonAdmissible { context: String },

    #[error("Schur check failed: indecomposable {module} has End/rad of dimension {dim}")]
    SchurViolation { module: String, dim: usize },

    #[error("could not split a decomposable module of dimension {dim} (searched {tried} endomorphisms)")]
    DecompositionStuck { dim: usize, tried: usize },

    #[error("resolution exceeded the safety bound {bound} (construction bug?): {context}")]
    ResolutionBound { bound: usize, context: String },

    #[error("knitting cutoff exceeded ({cutoff} vertices) where a complete quiver was required")]
    KnittingCutoff { cutoff: usize },

    #[error("invalid input: {0}")]
    BadInput(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
