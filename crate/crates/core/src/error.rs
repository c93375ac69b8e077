//! Error types for the crate.

use thiserror::Error;

/// Relation-closure exploration hit a configured cap before stabilizing.
#[derive(Debug, Clone, Error)]
#[error("closure cap exceeded: {0}")]
pub struct ClosureCapExceeded(pub String);

/// Errors raised while building a Garside system from a presentation.
#[derive(Debug, Error)]
pub enum BuildError {
    #[error("malformed definition: {0}")]
    MalformedDef(String),
    /// The designated element is not balanced: its left and right divisor
    /// sets differ.
    #[error("delta is not balanced: {0}")]
    NotBalanced(String),
    /// Some pair of divisors lacks a unique gcd or lcm inside the divisor set.
    #[error("divisor set is not a lattice: {0}")]
    NotLattice(String),
    /// The desk-scale cancellativity check over the divisor set failed.
    #[error("monoid is not cancellative on the divisor set: {0}")]
    NotCancellative(String),
    #[error(transparent)]
    Closure(#[from] ClosureCapExceeded),
}

/// Errors from word-level operations.
#[derive(Debug, Error)]
pub enum WordError {
    #[error("cannot parse word: {0}")]
    Parse(String),
    #[error("word is not positive: contains {0}")]
    NotPositive(String),
    #[error("system has no matrix representation")]
    NoRepresentation,
    #[error("generator matrix is not invertible over Laurent polynomials: {0}")]
    NonInvertibleGenerator(String),
    #[error(transparent)]
    Closure(#[from] ClosureCapExceeded),
}

/// Errors from the geodesic routines.
#[derive(Debug, Error)]
pub enum GeodesicError {
    /// Geodesic rewriting needs every defining relation to preserve length;
    /// torus-type presentations a^p = b^q with p != q are the standard
    /// counterexample family where reduction can increase length.
    #[error(
        "system '{system}' is not homogeneous (relation {relation} relates words of \
         lengths {lhs} and {rhs}); rewriting can increase length for such \
         presentations, e.g. torus-type a^p = b^q with p != q"
    )]
    NotHomogeneous {
        system: String,
        relation: String,
        lhs: usize,
        rhs: usize,
    },
    #[error("breadth-first search exceeded cap {0} without reaching the target")]
    CapExceeded(usize),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Errors from conjugacy routines.
#[derive(Debug, Error)]
pub enum ConjugacyError {
    #[error("operation requires canonical length >= 1")]
    ZeroCanonicalLength,
    #[error("conjugate saturation exceeded cap of {0} normal forms")]
    SaturationCapExceeded(usize),
    /// Internal guard: an assembled conjugator failed oracle verification.
    #[error("witness verification failed (internal error)")]
    WitnessVerificationFailed,
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Errors from the streaming framework.
#[derive(Debug, Error)]
pub enum StreamError {
    #[error("work state budget exceeded: {used} bits used, budget {budget}")]
    StateBudgetExceeded { used: u64, budget: u64 },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Errors from the HNN module.
#[derive(Debug, Error)]
pub enum HnnError {
    #[error("growth experiment budget exceeded: requested m = {m}, limit {max}")]
    BudgetExceeded { m: u32, max: u32 },
}
