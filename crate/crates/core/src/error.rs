use thiserror::Error;

/// A monomial `s^j p^k` of one component of a candidate map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub struct Violation {
    pub component: Component,
    pub j: u32,
    pub k: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub enum Component {
    S,
    P,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}:({},{})", self.component, self.j, self.k)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parameter out of domain: {0}")]
    ParameterOutOfDomain(String),
    #[error("pole encountered: |1 - conj(a) * lambda| = {0:e}")]
    PoleEncountered(f64),
    #[error("denominator degenerate: |1 - conj(a) s + conj(a)^2 p| = {0:e}")]
    DenominatorDegenerate(f64),
    #[error("point is not on the royal variety (residual {0:e})")]
    NotOnRoyalVariety(f64),
    #[error("singular Jacobian (|det| = {0:e})")]
    SingularJacobian(f64),
    #[error("Jacobian is not normalized: {0}")]
    NotNormalized(String),
    #[error("map is not weighted homogeneous; offending monomials: {}", fmt_violations(.0))]
    NotWeightedHomogeneous(Vec<Violation>),
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("invalid candidate map: {0}")]
    InvalidCandidate(String),
}

fn fmt_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T> = std::result::Result<T, Error>;
