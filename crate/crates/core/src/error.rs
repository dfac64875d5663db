use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("block {0} is empty; every block needs at least one variable")]
    EmptyBlock(usize),
    #[error("exponent at block {block}, position {position} must be positive")]
    ZeroExponent { block: usize, position: usize },
    #[error("block {0} is a single variable with exponent 1 (linear term); the hypersurface is an affine space")]
    HasLinearTerm(usize),
    #[error("trinomial is not factorial: block gcds {gcds:?} are not pairwise coprime")]
    NotFactorial { gcds: [u64; 3] },
    #[error("lattice basis does not span a direct summand; no integral section exists")]
    NoSection,
    #[error("pinned basis does not generate the kernel lattice of L")]
    BasisMismatch,
    #[error("matrix is not a section of the kernel basis (S·B != I)")]
    InvalidSection,
    #[error("degree {0} is outside the weight cone")]
    OutsideDualCone(String),
    #[error("recession cone is not pointed")]
    NotPointed,
    #[error("exponent at block {block}, position {position} is {exponent}, not 1")]
    NotUnitExponent {
        block: usize,
        position: usize,
        exponent: u64,
    },
    #[error("variable position (block {block}, position {position}) does not exist")]
    NoSuchVariable { block: usize, position: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid trinomial JSON: {0}")]
    Json(String),
}

impl Error {
    /// True for errors reporting that an input lies outside a theorem's
    /// hypotheses (as opposed to malformed input or internal inconsistency).
    pub fn is_scope(&self) -> bool {
        matches!(self, Error::HasLinearTerm(_) | Error::NotFactorial { .. })
    }
}
