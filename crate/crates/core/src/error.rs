use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("poset size {0} is outside the supported range 1..=64")]
    Capacity(usize),

    #[error("element {index} is out of range for a poset on {n} elements")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("relation contains a cycle through element {0}")]
    Cycle(usize),

    #[error("mask {mask:#x} is not an antichain")]
    NotAnAntichain { mask: u64 },

    #[error("mask {mask:#x} is not an order ideal")]
    NotAnOrderIdeal { mask: u64 },

    #[error("element {0} is not minimal")]
    NotMinimal(usize),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid degree list: {0}")]
    InvalidDegrees(String),

    #[error("Catalan product is not integral for degrees {0:?}")]
    NonIntegralCatalan(Vec<u32>),

    #[error("unknown profile `{0}`")]
    UnknownProfile(String),

    #[error("profile `{profile}` lacks {what}")]
    MissingProfileData { profile: String, what: &'static str },

    #[error("no reference root poset for diagram component {0}")]
    NoReference(String),

    #[error("unknown property `{0}`")]
    UnknownProperty(String),

    #[error("polynomial division left a nonzero remainder")]
    InexactDivision,

    #[error("specialization leaves a negative exponent {0}")]
    NegativeExponent(i64),

    #[error("polynomial has no decomposition into q^a[b]_(q^2) summands: {0}")]
    NoDecomposition(String),

    #[error("bracket length must be at least 1")]
    EmptyBracket,

    #[error("coordinates {0:?} are not in the root lattice")]
    NotInRootLattice(Vec<i64>),

    #[error("root {0:?} has no tau partner")]
    Unpaired(Vec<i32>),

    #[error("constructed relation is not graded")]
    NotGraded,

    #[error("invalid search setup: {0}")]
    InvalidSearch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
