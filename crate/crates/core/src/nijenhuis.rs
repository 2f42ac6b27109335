//! The Nijenhuis tensor on the algebra and its norm functional on `Z`.
//!
//! `‖N‖² = Σ_{i,j,k} (N^k_ij)²` over ordered pairs. The functional satisfies
//! `‖N‖² = κ (1 − ‖c‖²)` where `c` is the second diagonal block and
//! `κ = ‖N(I_N)‖²` is calibrated once from the factor-swapping structure.

use crate::acs::{self, Acs, Blocks};
use crate::algebra::bracket;
use crate::error::{Result, TwistorError};
use crate::exterior::AlgebraVector;
use nalgebra::{Matrix3, Vector6};
use std::sync::OnceLock;

pub const DEFAULT_INTEGRABILITY_TOL: f64 = 1e-9;

/// Maximum of `‖N‖` as printed in the literature under its own normalization.
pub const PRINTED_MAX_NORM: f64 = 13.856_406_460_551_018; // 8√3

/// `N^k_ij`, stored as `N(e_i, e_j)` vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct NijenhuisComponents {
    pairs: [[Vector6<f64>; 6]; 6],
}

impl NijenhuisComponents {
    /// `N^k_ij`.
    pub fn get(&self, k: usize, i: usize, j: usize) -> f64 {
        self.pairs[i][j][k]
    }

    /// `N(e_i, e_j)`.
    pub fn pair(&self, i: usize, j: usize) -> AlgebraVector {
        AlgebraVector(self.pairs[i][j])
    }

    pub fn norm_sq(&self) -> f64 {
        self.pairs
            .iter()
            .flat_map(|row| row.iter())
            .map(|v| v.norm_squared())
            .sum()
    }
}

/// `N(X, Y) = [JX, JY] − [X, Y] − J[X, JY] − J[JX, Y]`.
pub fn nijenhuis_pair(acs: &Acs, x: &AlgebraVector, y: &AlgebraVector) -> AlgebraVector {
    let j = acs.matrix();
    let jx = AlgebraVector(j * x.0);
    let jy = AlgebraVector(j * y.0);
    let inner = bracket(x, &jy) + bracket(&jx, y);
    bracket(&jx, &jy) - bracket(x, y) - AlgebraVector(j * inner.0)
}

pub fn nijenhuis(acs: &Acs) -> NijenhuisComponents {
    let mut pairs = [[Vector6::zeros(); 6]; 6];
    for i in 0..6 {
        for k in i + 1..6 {
            let v = nijenhuis_pair(acs, &AlgebraVector::basis(i), &AlgebraVector::basis(k)).0;
            pairs[i][k] = v;
            pairs[k][i] = -v;
        }
    }
    NijenhuisComponents { pairs }
}

pub fn nijenhuis_norm(acs: &Acs) -> f64 {
    nijenhuis(acs).norm_sq().sqrt()
}

/// `κ = ‖N(I_N)‖²`, computed by direct expansion.
pub fn kappa() -> f64 {
    static KAPPA: OnceLock<f64> = OnceLock::new();
    *KAPPA.get_or_init(|| nijenhuis(&acs::ank_reference()).norm_sq())
}

/// Calibrated maximum `√κ`.
pub fn max_norm() -> f64 {
    kappa().sqrt()
}

/// `√κ · √(1 − ‖c‖²)`.
pub fn closed_form_norm(b: &Blocks) -> Result<f64> {
    let value = 1.0 - b.c_norm_sq();
    if value < -acs::VALIDATION_TOL {
        return Err(TwistorError::DomainError { value });
    }
    Ok(max_norm() * value.max(0.0).sqrt())
}

pub fn is_integrable(acs: &Acs, tol: f64) -> bool {
    nijenhuis_norm(acs) < tol
}

/// Residuals of the cofactor chain for `B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CofactorResiduals {
    /// `max |BᵀB − (1 + C²)|`.
    pub btb: f64,
    /// `|‖Bᵃ‖² − (det B)² tr((BᵀB)⁻¹)|`, `None` when `det B` vanishes.
    pub trace_identity: Option<f64>,
    /// `|‖Bᵃ‖² − (λ₁λ₂ + λ₂λ₃ + λ₁λ₃)|` for the eigenvalues of `1 + C²`.
    pub eigen_identity: f64,
    /// `‖Bᵃ‖²`.
    pub cofactor_norm_sq: f64,
}

impl CofactorResiduals {
    pub fn max(&self) -> f64 {
        self.btb
            .max(self.trace_identity.unwrap_or(0.0))
            .max(self.eigen_identity)
    }
}

/// Matrix of algebraic complements (signed 2×2 minors).
pub fn cofactor_matrix(b: &Matrix3<f64>) -> Matrix3<f64> {
    Matrix3::from_fn(|r, c| {
        let rows: Vec<usize> = (0..3).filter(|&x| x != r).collect();
        let cols: Vec<usize> = (0..3).filter(|&x| x != c).collect();
        let minor = b[(rows[0], cols[0])] * b[(rows[1], cols[1])]
            - b[(rows[0], cols[1])] * b[(rows[1], cols[0])];
        if (r + c) % 2 == 0 {
            minor
        } else {
            -minor
        }
    })
}

pub fn cofactor_checks(bl: &Blocks) -> CofactorResiduals {
    let one_c2 = Matrix3::identity() + bl.c * bl.c;
    let btb = bl.b.transpose() * bl.b;
    let cof = cofactor_matrix(&bl.b);
    let cof_sq = cof.norm_squared();
    let det = bl.b.determinant();
    let trace_identity = if det.abs() > 1e-9 {
        btb.try_inverse()
            .map(|inv| (cof_sq - det * det * inv.trace()).abs())
    } else {
        None
    };
    let lam = one_c2.symmetric_eigenvalues();
    let e2 = lam[0] * lam[1] + lam[1] * lam[2] + lam[0] * lam[2];
    CofactorResiduals {
        btb: (btb - one_c2).amax(),
        trace_identity,
        eigen_identity: (cof_sq - e2).abs(),
        cofactor_norm_sq: cof_sq,
    }
}

fn rotation_residual(o: &Matrix3<f64>) -> f64 {
    (o.transpose() * o - Matrix3::identity()).amax()
}

/// `diag(O₁, O₂) I_H diag(O₁, O₂)ᵀ`, an integrable point of `Z`.
pub fn statement1_structure(o1: &Matrix3<f64>, o2: &Matrix3<f64>) -> Result<Acs> {
    for o in [o1, o2] {
        let residual = rotation_residual(o);
        let det = o.determinant();
        if !(residual < acs::VALIDATION_TOL) || det <= 0.0 {
            return Err(TwistorError::NotRotation { residual, det });
        }
    }
    acs::hopf().conjugate_blockwise(o1, o2)
}
