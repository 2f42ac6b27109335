use thiserror::Error;

/// Rejections raised by the structure, correspondence and geometry layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TwistorError {
    #[error("not a complex structure: max |J^2 + 1| = {residual:.3e}")]
    NotComplex { residual: f64 },
    #[error("not orthogonal: max |J^T J - 1| = {residual:.3e}")]
    NotOrthogonal { residual: f64 },
    #[error("wrong orientation: frame determinant {determinant:.3e} has the opposite sign")]
    WrongOrientation { determinant: f64 },
    #[error("no J-adapted frame found (smallest pivot {residual:.3e})")]
    DegenerateFrame { residual: f64 },
    #[error("2-form does not define a point of Z: {0}")]
    NotInZ(Box<TwistorError>),
    #[error("domain error: 1 - |c|^2 = {value:.3e}")]
    DomainError { value: f64 },
    #[error("not a rotation: orthogonality residual {residual:.3e}, det {det:.6}")]
    NotRotation { residual: f64, det: f64 },
    #[error("covectors are not orthonormal (residual {residual:.3e})")]
    NotOrthonormal { residual: f64 },
    #[error("subspace does not split g* (x) C (smallest singular value {residual:.3e})")]
    DegenerateSubspace { residual: f64 },
    #[error("kernel of u ^ beta = 0 has dimension {dimension}, expected 1")]
    KernelRankError { dimension: usize },
    #[error("all homogeneous coordinates vanish")]
    ZeroPoint,
    #[error("edge endpoints coincide projectively")]
    DegenerateEdge,
    #[error("alpha z + beta u vanishes")]
    ZeroCombination,
    #[error("parameters off their constraint surface (residual {residual:.3e})")]
    ParamDomain { residual: f64 },
    #[error("2-form is not decomposable (|sigma ^ sigma| = {residual:.3e})")]
    NotDecomposable { residual: f64 },
    #[error("2-form is not unit (|sigma|^2 = {norm_sq:.6})")]
    NotUnit { norm_sq: f64 },
    #[error("2-form is zero")]
    ZeroForm,
}

pub type Result<T> = std::result::Result<T, TwistorError>;
