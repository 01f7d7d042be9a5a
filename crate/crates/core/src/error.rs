use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix determinant {0} is not positive")]
    NonPositiveDeterminant(f64),
    #[error("matrix is not elliptic")]
    NotElliptic,
    #[error("matrix is not hyperbolic")]
    NotHyperbolic,
    #[error("matrix fixes no boundary point (elliptic or identity)")]
    NotBoundaryFixing,
    #[error("one-parameter subgroup through the identity is ambiguous")]
    IdentityInput,
    #[error("rotation angle {0} outside (0, 2π)")]
    InvalidAngle(f64),
    #[error("rotation center is not an interior point of the hyperbolic plane")]
    BoundaryCenter,
    #[error("no lift with a real fixed point: matrix has no boundary fixed point")]
    NoBoundaryFixedPoint,
    #[error("surface relation violated: residual {residual:e} exceeds {tolerance:e}")]
    RelationViolated { residual: f64, tolerance: f64 },
    #[error("lifted product {value} is not within {tolerance} of an integer")]
    RoundingAmbiguous { value: f64, tolerance: f64 },
    #[error("SL(2,R) commutator product is not close to ±I (residual {residual:e})")]
    SignAmbiguous { residual: f64 },
    #[error("commutator is not hyperbolic")]
    NotHyperbolicCommutator,
    #[error("commutator defect {0} outside {{-1, 0, 1}}")]
    DefectOutOfRange(i64),
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("signature has cusps but the operation needs a cocompact group")]
    NotCocompact,
    #[error("({0}, {1}, {2}) is not a hyperbolic triple")]
    NotHyperbolicTriple(u64, u64, u64),
    #[error("polygon solver failed: {0}")]
    SolverNoConvergence(String),
    #[error("Euler class {euler} violates |e| <= {bound} for genus {genus}")]
    EulerOutOfRange {
        genus: usize,
        euler: i64,
        bound: i64,
    },
    #[error("image of b1 is the identity; no one-parameter subgroup to deform along")]
    IdentityB1,
    #[error("representation is not in E: images of a1 and b1 must both be elliptic")]
    NotInE,
    #[error("no rational rotation angle with denominator <= {qmax} reachable for t in [-1, 1]")]
    NoRationalInRange { qmax: u64 },
    #[error("first handle commutator of the maximal representation is not hyperbolic")]
    FirstCommutatorNotHyperbolic,
    #[error("search depth must be at least 1")]
    InvalidDepth,
    #[error("genus must be at least {min}, got {got}")]
    InvalidGenus { min: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
