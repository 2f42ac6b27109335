//! Covariant derivative of the fundamental form and the nearly-Kähler test.

use crate::acs::{self, acs_from_form, blocks, fundamental_form, Acs};
use crate::algebra::bracket;
use crate::error::{Result, TwistorError};
use crate::exterior::{eval_form, wedge, AlgebraVector, Covector, TwoForm};

pub const DEFAULT_ANK_TOL: f64 = 1e-9;

/// Value the literature reports for `(∇_{e₂+e₄} ω)(e₂ + e₄, e₁)` on an ANK
/// structure, under its own normalization of `∇`.
pub const PRINTED_MIXED_VALUE: f64 = -1.0;

/// `(∇_X ω)(Y, Z) = −½ω([X, Y], Z) − ½ω(Y, [X, Z])`.
pub fn nabla_omega(acs: &Acs, x: &AlgebraVector, y: &AlgebraVector, z: &AlgebraVector) -> f64 {
    nabla_form(&fundamental_form(acs), x, y, z)
}

fn nabla_form(w: &TwoForm, x: &AlgebraVector, y: &AlgebraVector, z: &AlgebraVector) -> f64 {
    -0.5 * eval_form(w, &bracket(x, y), z) - 0.5 * eval_form(w, y, &bracket(x, z))
}

/// Norm of `S(X, Y; Z) = (∇_X ω)(Y, Z) + (∇_Y ω)(X, Z)` over basis triples.
pub fn nk_defect(acs: &Acs) -> f64 {
    let w = fundamental_form(acs);
    let e = AlgebraVector::basis;
    let mut total = 0.0;
    for i in 0..6 {
        for j in 0..6 {
            for k in 0..6 {
                let s = nabla_form(&w, &e(i), &e(j), &e(k)) + nabla_form(&w, &e(j), &e(i), &e(k));
                total += s * s;
            }
        }
    }
    total.sqrt()
}

/// Largest `|(∇_{e_i} ω)(e_i, e_j)|` over all basis pairs.
pub fn basis_diagonal_residual(acs: &Acs) -> f64 {
    let w = fundamental_form(acs);
    let e = AlgebraVector::basis;
    let mut worst: f64 = 0.0;
    for i in 0..6 {
        for j in 0..6 {
            worst = worst.max(nabla_form(&w, &e(i), &e(i), &e(j)).abs());
        }
    }
    worst
}

/// `J` swaps the two factors: `‖A‖ < tol` and `‖C‖ < tol`.
pub fn is_ank(acs: &Acs, tol: f64) -> bool {
    let b = blocks(acs);
    b.a.norm() < tol && b.c.norm() < tol
}

/// Covectors `f¹, f², f³` in `span(e¹, e², e³)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnkForm {
    pub f: [Covector; 3],
}

impl AnkForm {
    /// `fⁱ = Σ_k O_ki e^k` from a 3×3 matrix (columns are the `fⁱ`).
    pub fn from_matrix(o: &nalgebra::Matrix3<f64>) -> Self {
        let f = std::array::from_fn(|i| {
            let mut c = Covector::zero();
            for k in 0..3 {
                c.0[k] = o[(k, i)];
            }
            c
        });
        Self { f }
    }

    /// `e⁴∧f¹ + e⁵∧f² + e⁶∧f³`.
    pub fn assemble(&self) -> TwoForm {
        (0..3).fold(TwoForm::zero(), |acc, i| acc + wedge(&Covector::basis(i + 3), &self.f[i]))
    }
}

/// Structure of an ANK 2-form. Orientation failures are rejected, never
/// repaired by a sign flip.
pub fn ank_form(f: &AnkForm) -> Result<Acs> {
    let mut worst: f64 = 0.0;
    for (i, fi) in f.f.iter().enumerate() {
        worst = worst.max(fi.0.fixed_rows::<3>(3).amax());
        for (k, fk) in f.f.iter().enumerate() {
            let target = if i == k { 1.0 } else { 0.0 };
            worst = worst.max((fi.0.dot(&fk.0) - target).abs());
        }
    }
    if !(worst < acs::VALIDATION_TOL) {
        return Err(TwistorError::NotOrthonormal { residual: worst });
    }
    match acs_from_form(&f.assemble()) {
        Err(TwistorError::NotInZ(inner)) => match *inner {
            TwistorError::WrongOrientation { determinant } => {
                Err(TwistorError::WrongOrientation { determinant })
            }
            other => Err(TwistorError::NotInZ(Box::new(other))),
        },
        other => other,
    }
}
