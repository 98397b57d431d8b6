use thiserror::Error;

use crate::semigroup::Elem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table entry {value} at ({row}, {col}) is out of range for order {order}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("table is not square: row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("empty table")]
    EmptyTable,
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})", .witness.0, .witness.1, .witness.2)]
    NotAssociative { witness: (Elem, Elem, Elem) },
    #[error("element index {0} is out of range")]
    InvalidElement(usize),
    #[error("generating set is empty")]
    EmptyGenerators,
    #[error("subset is not closed: {x}*{y} = {product} is missing")]
    NotClosed { x: Elem, y: Elem, product: Elem },
    #[error("homomorphism domain or codomain does not match")]
    DomainMismatch,
    #[error("map is not a homomorphism at ({x}, {y})")]
    NotHomomorphism { x: Elem, y: Elem },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("the given set does not generate: {0}")]
    NotGenerating(String),
    #[error("letter {0} is not in the alphabet")]
    InvalidLetter(String),
    #[error("empty word")]
    EmptyWord,
    #[error("the given set is not a relative H-class")]
    NotAnHClass,
    #[error("classes {0} and {1} are neither L- nor R-related")]
    NotComparable(usize, usize),
    #[error("element {0} is not in the generated subsemigroup")]
    NotInSubsemigroup(Elem),
    #[error("input presentation failed verification: {0}")]
    BadInputPresentation(String),
    #[error("dagger convention violated: {0}")]
    DaggerViolation(String),
    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("alphabet mismatch")]
    AlphabetMismatch,
    #[error("delay bound {bound} exceeded")]
    DelayExceeded { bound: usize },
    #[error("exploration budget of {0} elements exceeded")]
    BudgetExceeded(usize),
    #[error("hypothesis fails: {0}")]
    HypothesisFails(String),
    #[error("malformed input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
