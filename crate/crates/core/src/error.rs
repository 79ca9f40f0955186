use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),

    #[error("infinite root system: no closure below height {0}")]
    InfiniteRootSystem(i64),

    #[error("unknown root system type `{0}`")]
    UnknownType(String),

    #[error("node index {index} out of range for rank {rank}")]
    NodeOutOfRange { index: usize, rank: usize },

    #[error("not a root of this system: {0:?}")]
    NotARoot(Vec<i64>),

    #[error("elements belong to different root systems")]
    MixedSystems,

    #[error("parabolic subsets are not nested")]
    NotNested,

    #[error("codimension {codim} out of range 0..={dim}")]
    CodimOutOfRange { codim: usize, dim: usize },

    #[error("degrees {0} and {1} are not complementary")]
    NotComplementary(usize, usize),

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("not in the image lattice: coefficient {coeff} on {class}")]
    NotInImageLattice { class: String, coeff: String },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("correspondence shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),
}
