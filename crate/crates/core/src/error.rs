use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("invalid polynomial text {0:?}")]
    PolyParse(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not an odd prime power")]
    NotOddPrimePower(u64),
    #[error("field modulus must be monic of degree {expected}, got degree {got}")]
    BadModulus { expected: usize, got: usize },
    #[error("modulus is reducible over F_{p}")]
    ReducibleModulus { p: u64 },
    #[error("field too large to tabulate: {0} elements")]
    FieldTooLarge(u64),
    #[error("group axiom violated: {0}")]
    GroupAxiom(String),
    #[error("action is not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("map does not preserve the subgroup: {0}")]
    SubgroupNotPreserved(String),
    #[error("generator set is not closed under inversion")]
    AsymmetricGenerators,
    #[error("identity element appears in the generator set")]
    IdentityInGenerators,
    #[error("generator set does not generate the group (reached {reached} of {order})")]
    NotGenerating { reached: usize, order: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not regular")]
    NotRegular,
    #[error("construction would create a self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("construction would create a parallel edge {0}-{1}")]
    ParallelEdge(usize, usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("dense spectrum limited to {cap} vertices (graph has {n}); use the iterative bound")]
    DenseCapExceeded { n: usize, cap: usize },
    #[error("map is not a bijection")]
    NotBijective,
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("invalid symmetry datum: {0}")]
    InvalidDatum(String),
    #[error("seed search exhausted after {tried} candidates")]
    SearchExhausted { tried: usize },
    #[error("no Ramanujan seed found after {tried} candidates")]
    NoRamanujanSeed { tried: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("code length must be positive")]
    EmptyLength,
    #[error("generator polynomial does not divide X^{0} - 1")]
    NotDivisor(usize),
    #[error("exhaustive search over dimension {dim} exceeds the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("local code is not invariant under translation by H")]
    NotTranslationInvariant,
    #[error("malformed action: {0}")]
    MalformedAction(String),
    #[error("empty vertex set")]
    EmptySet,
    #[error("subset enumeration too costly: about {estimated} subsets (budget {budget})")]
    BudgetExceeded { estimated: f64, budget: f64 },
    #[error("bound inapplicable: {0}")]
    BoundInapplicable(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
