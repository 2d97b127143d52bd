use thiserror::Error;

/// Every failure the library can report.
///
/// Verification failures (`RelationViolated`, `IntertwiningViolated`, ...)
/// carry enough data to reproduce the counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("evaluation at a pole: u = {0}")]
    PoleEvaluation(String),
    #[error("polynomial {0} does not split over the rationals")]
    IrrationalRoots(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index tuple {0:?} is not strictly increasing")]
    NonIncreasingTuple(Vec<usize>),
    #[error("weight difference w_{a} - w_{b} = {diff} is a negative integer")]
    ForbiddenWeightDifference { a: usize, b: usize, diff: String },
    #[error("invalid module spec: {0}")]
    InvalidSpec(String),
    #[error("highest vector is not an eigenvector of T_{i}{i}(u): {detail}")]
    NotEigenvector { i: usize, detail: String },
    #[error("RTT relation violated for (i,j,k,l) = ({i},{j},{k},{l}) at u = {u}, v = {v}")]
    RelationViolated {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        u: String,
        v: String,
    },
    #[error("characteristic polynomial of T_{i}{i}(u) has no factorization into candidate eigenvalues")]
    NoCandidateFactorization { i: usize },
    #[error("word {0:?} is not a reduced decomposition of the longest element")]
    NotReduced(Vec<usize>),
    #[error("weight lambda-bar is not dominant: lambda-bar_{a} - lambda-bar_{b} = {diff}")]
    NotDominant { a: usize, b: usize, diff: String },
    #[error("intertwiners for words {first:?} and {second:?} differ")]
    WordDependenceViolated { first: Vec<usize>, second: Vec<usize> },
    #[error("operator does not intertwine T_{i}{j}(u)")]
    IntertwiningViolated { i: usize, j: usize },
    #[error("no solution of Q(u+1)/Q(u) = {0}")]
    NoSolution(String),
    #[error("numerator and denominator of Q_n share the root {0}")]
    CommonZeroes(String),
    #[error("composite identity failed: {0}")]
    CompositeMismatch(String),
    #[error("operation requires a polynomial module (all nu_a >= 0)")]
    NotPolynomial,
    #[error("{0}")]
    Precondition(String),
    #[error("identity check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
