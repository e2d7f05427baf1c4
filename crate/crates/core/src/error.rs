use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("group table is not a group: {0}")]
    Axiom(#[from] AxiomViolation),

    #[error("unsupported group spec `{0}`")]
    UnsupportedSpec(String),

    #[error("{what}: order {order} exceeds threshold {limit}")]
    Threshold {
        what: &'static str,
        order: usize,
        limit: usize,
    },

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("automorphism is not involutory: element {witness} maps to {image} under alpha^2")]
    NotInvolutory { witness: usize, image: usize },

    #[error("objects belong to different groups")]
    ParentMismatch,

    #[error("not a generalized Cayley subset: {0}")]
    InvalidSubset(#[from] SubsetViolation),

    #[error("group is not abelian: {a}*{b} != {b}*{a}")]
    NonAbelian { a: usize, b: usize },

    #[error("alpha does not preserve the subgroup: {witness} in H but alpha({witness}) = {image} is not")]
    AlphaNotPreserving { witness: usize, image: usize },

    #[error("element {0} is not fixed by alpha")]
    NotFixed(usize),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("element `{0}` is not in the group")]
    UnknownElement(String),

    #[error("malformed input at {location}: {message}")]
    Parse { location: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn is_threshold(&self) -> bool {
        matches!(self, Error::Threshold { .. })
    }
}

/// The first group axiom a table fails, with its witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomViolation {
    #[error("table must be non-empty")]
    Empty,
    #[error("row {row} has {len} entries, expected {order}")]
    Shape {
        row: usize,
        len: usize,
        order: usize,
    },
    #[error("entry table[{a}][{b}] = {value} is out of range")]
    OutOfRange { a: usize, b: usize, value: usize },
    #[error("no identity element")]
    NoIdentity,
    #[error("row {0} is not a permutation")]
    RowNotPermutation(usize),
    #[error("column {0} is not a permutation")]
    ColumnNotPermutation(usize),
    #[error("associativity fails at ({a}, {b}, {c})")]
    Associativity { a: usize, b: usize, c: usize },
}

/// Why a set fails to be a generalized Cayley subset.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubsetViolation {
    #[error("element {0} lies in omega")]
    MeetsOmega(usize),
    #[error("alpha({element}^-1) = {image} is missing from S")]
    NotTauClosed { element: usize, image: usize },
    #[error("element {0} outside the group")]
    OutOfRange(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
