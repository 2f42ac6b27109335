//! Orthogonal, orientation-compatible almost complex structures on the
//! algebra: the twistor space `Z ≅ SO(6)/U(3)`.
//!
//! An [`Acs`] stores the VECTOR action `J` (column `i` is `J e_i`). The dual
//! action on covectors is `Jᵀ = −J`. Fixtures listed by their covector action
//! (the tetrahedron vertices, `I_N`) are translated here once.

use crate::error::{Result, TwistorError};
use crate::exterior::TwoForm;
use nalgebra::{Matrix3, Matrix6, SMatrix, Vector6};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use std::sync::OnceLock;

/// Membership tolerance for `Z`.
pub const VALIDATION_TOL: f64 = 1e-9;

/// A validated point of `Z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Acs {
    matrix: Matrix6<f64>,
}

impl Acs {
    /// Wraps a matrix already known to lie in `Z` (a conjugate of a member
    /// by an orthogonal matrix of determinant one).
    pub(crate) fn from_matrix_unchecked(matrix: Matrix6<f64>) -> Acs {
        Acs { matrix }
    }

    /// Vector action `J`.
    pub fn matrix(&self) -> &Matrix6<f64> {
        &self.matrix
    }

    /// Action on covectors, `Jᵀ`.
    pub fn covector_action(&self) -> Matrix6<f64> {
        self.matrix.transpose()
    }

    /// `Q J Qᵀ`, revalidated.
    pub fn conjugate(&self, q: &Matrix6<f64>) -> Result<Acs> {
        validate(&(q * self.matrix * q.transpose()))
    }

    /// Conjugation by `diag(O₁, O₂)`.
    pub fn conjugate_blockwise(&self, o1: &Matrix3<f64>, o2: &Matrix3<f64>) -> Result<Acs> {
        self.conjugate(&block_diag(o1, o2))
    }

    /// Row-major entries of `J`.
    pub fn to_row_major(&self) -> [f64; 36] {
        let mut out = [0.0; 36];
        for r in 0..6 {
            for c in 0..6 {
                out[6 * r + c] = self.matrix[(r, c)];
            }
        }
        out
    }
}

pub fn block_diag(o1: &Matrix3<f64>, o2: &Matrix3<f64>) -> Matrix6<f64> {
    let mut q = Matrix6::zeros();
    q.fixed_view_mut::<3, 3>(0, 0).copy_from(o1);
    q.fixed_view_mut::<3, 3>(3, 3).copy_from(o2);
    q
}

pub fn matrix_from_row_major(entries: &[f64; 36]) -> Matrix6<f64> {
    Matrix6::from_row_slice(entries)
}

/// Vector action sending `e_a ↦ e_b` (and `e_b ↦ −e_a`) for each pair,
/// 0-based indices.
fn from_rotations(pairs: &[(usize, usize, f64)]) -> Matrix6<f64> {
    let mut j = Matrix6::zeros();
    for &(a, b, s) in pairs {
        j[(b, a)] = s;
        j[(a, b)] = -s;
    }
    j
}

/// Tetrahedron vertex `I_kᵛ`, `k = 0..4`, the points `[1,0,0,0] … [0,0,0,1]`.
///
/// Listed by covector action as `I₀e¹ = −e²` etc., so the vector action is
/// `e₁ ↦ e₂` for `I₀ᵛ`.
pub fn vertex(k: usize) -> Acs {
    let signs: [[f64; 3]; 4] = [
        [1.0, 1.0, 1.0],
        [1.0, -1.0, -1.0],
        [-1.0, 1.0, -1.0],
        [-1.0, -1.0, 1.0],
    ];
    let s = signs[k];
    Acs {
        matrix: from_rotations(&[(0, 1, s[0]), (2, 3, s[1]), (4, 5, s[2])]),
    }
}

/// The integrable Hopf structure `I_H`: `e₁ ↦ e₄, e₂ ↦ e₃, e₅ ↦ e₆`.
pub fn hopf() -> Acs {
    Acs {
        matrix: from_rotations(&[(0, 3, 1.0), (1, 2, 1.0), (4, 5, 1.0)]),
    }
}

/// The factor-swapping structure `I_N`, covector action `(0 −E; E 0)`,
/// vector action `e_i ↦ −e_{i+3}`.
pub fn ank_reference() -> Acs {
    Acs {
        matrix: from_rotations(&[(0, 3, -1.0), (1, 4, -1.0), (2, 5, -1.0)]),
    }
}

fn max_abs(m: &Matrix6<f64>) -> f64 {
    m.iter().fold(0.0, |acc: f64, x| {
        if x.is_nan() {
            f64::INFINITY
        } else {
            acc.max(x.abs())
        }
    })
}

/// Validates a vector-action matrix as a point of `Z`.
///
/// On success the stored matrix is the exact antisymmetric part of the input.
pub fn validate(matrix: &Matrix6<f64>) -> Result<Acs> {
    let id = Matrix6::<f64>::identity();
    let complex = max_abs(&(matrix * matrix + id));
    if !(complex < VALIDATION_TOL) {
        return Err(TwistorError::NotComplex { residual: complex });
    }
    let orth = max_abs(&(matrix.transpose() * matrix - id));
    if !(orth < VALIDATION_TOL) {
        return Err(TwistorError::NotOrthogonal { residual: orth });
    }
    let (sign, det) = orientation(matrix)?;
    if sign != reference_sign() {
        return Err(TwistorError::WrongOrientation { determinant: det });
    }
    Ok(Acs {
        matrix: (matrix - matrix.transpose()) * 0.5,
    })
}

/// Determinant of `[X₁ X₂ X₃ JX₁ JX₂ JX₃]`.
pub fn frame_determinant(j: &Matrix6<f64>, frame: &[Vector6<f64>; 3]) -> f64 {
    let mut m = Matrix6::zeros();
    for (k, x) in frame.iter().enumerate() {
        m.set_column(k, x);
        m.set_column(k + 3, &(j * x));
    }
    m.determinant()
}

/// Sign and determinant of a `J`-adapted frame chosen greedily from the
/// basis. For a complex structure the sign does not depend on the frame.
fn orientation(j: &Matrix6<f64>) -> Result<(f64, f64)> {
    let mut chosen: Vec<Vector6<f64>> = Vec::with_capacity(3);
    let mut weakest = f64::INFINITY;
    for i in 0..6 {
        if chosen.len() == 3 {
            break;
        }
        let mut candidate = chosen.clone();
        let mut x = Vector6::zeros();
        x[i] = 1.0;
        candidate.push(x);
        let cols: Vec<Vector6<f64>> = candidate
            .iter()
            .copied()
            .chain(candidate.iter().map(|v| j * v))
            .collect();
        let m = nalgebra::DMatrix::from_fn(6, cols.len(), |r, c| cols[c][r]);
        let sv = m.singular_values();
        let smallest = sv.iter().fold(f64::INFINITY, |a, &b| a.min(b));
        if smallest > 1e-6 {
            chosen = candidate;
        } else {
            weakest = weakest.min(smallest);
        }
    }
    if chosen.len() < 3 {
        return Err(TwistorError::DegenerateFrame { residual: weakest });
    }
    let det = frame_determinant(j, &[chosen[0], chosen[1], chosen[2]]);
    Ok((det.signum(), det))
}

/// Orientation sign of a complex orthogonal `J`.
pub fn orientation_sign(j: &Matrix6<f64>) -> Result<f64> {
    orientation(j).map(|(s, _)| s)
}

/// Orientation sign of `I₀ᵛ`, which defines the component `Z`.
pub fn reference_sign() -> f64 {
    static SIGN: OnceLock<f64> = OnceLock::new();
    *SIGN.get_or_init(|| {
        orientation(&vertex(0).matrix)
            .map(|(s, _)| s)
            .expect("reference vertex admits an adapted frame")
    })
}

/// `ω(X, Y) = g(JX, Y)`, i.e. `ω_ij = J_ji`.
pub fn fundamental_form(acs: &Acs) -> TwoForm {
    TwoForm::from_matrix(&acs.matrix.transpose())
}

/// Raises an index of `ω` with the orthonormal metric and validates.
pub fn acs_from_form(w: &TwoForm) -> Result<Acs> {
    validate(&w.to_matrix().transpose()).map_err(|e| TwistorError::NotInZ(Box::new(e)))
}

/// Block decomposition `(A B; −Bᵀ C)` of the covector action.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Blocks {
    pub a: Matrix3<f64>,
    pub b: Matrix3<f64>,
    pub c: Matrix3<f64>,
}

impl Blocks {
    /// `(a₁, a₂, a₃) = (A₁₂, A₁₃, A₂₃)`.
    pub fn a_vec(&self) -> [f64; 3] {
        [self.a[(0, 1)], self.a[(0, 2)], self.a[(1, 2)]]
    }

    /// `(c₁, c₂, c₃) = (C₁₂, C₁₃, C₂₃)`.
    pub fn c_vec(&self) -> [f64; 3] {
        [self.c[(0, 1)], self.c[(0, 2)], self.c[(1, 2)]]
    }

    /// `b₁ … b₉`, row-major.
    pub fn b_vec(&self) -> [f64; 9] {
        let mut out = [0.0; 9];
        for r in 0..3 {
            for c in 0..3 {
                out[3 * r + c] = self.b[(r, c)];
            }
        }
        out
    }

    pub fn a_norm_sq(&self) -> f64 {
        self.a_vec().iter().map(|x| x * x).sum()
    }

    pub fn c_norm_sq(&self) -> f64 {
        self.c_vec().iter().map(|x| x * x).sum()
    }

    /// Builds blocks from `a`, `b` (row-major) and `c` entry vectors.
    pub fn from_entries(a: [f64; 3], b: [f64; 9], c: [f64; 3]) -> Self {
        let skew = |v: [f64; 3]| Matrix3::new(0.0, v[0], v[1], -v[0], 0.0, v[2], -v[1], -v[2], 0.0);
        Self {
            a: skew(a),
            b: Matrix3::from_row_slice(&b),
            c: skew(c),
        }
    }

    /// Vector action `J` reassembled from the covector-action blocks.
    pub fn reassemble(&self) -> Matrix6<f64> {
        let mut m = Matrix6::zeros();
        m.fixed_view_mut::<3, 3>(0, 0).copy_from(&self.a);
        m.fixed_view_mut::<3, 3>(0, 3).copy_from(&self.b);
        m.fixed_view_mut::<3, 3>(3, 0).copy_from(&(-self.b.transpose()));
        m.fixed_view_mut::<3, 3>(3, 3).copy_from(&self.c);
        m.transpose()
    }
}

pub fn blocks(acs: &Acs) -> Blocks {
    let m = acs.covector_action();
    Blocks {
        a: m.fixed_view::<3, 3>(0, 0).into_owned(),
        b: m.fixed_view::<3, 3>(0, 3).into_owned(),
        c: m.fixed_view::<3, 3>(3, 3).into_owned(),
    }
}

/// Residuals of the necessary conditions for `I² = −1` in block form:
/// unit rows of `(A B)`, unit columns of `(B; C)`, the nine entries of
/// `AB + BC` and `a₁² + a₂² + a₃² = c₁² + c₂² + c₃²`.
pub fn constraint_residuals(bl: &Blocks) -> [f64; 16] {
    let (a, b, c) = (&bl.a, &bl.b, &bl.c);
    let upper = a * a.transpose() + b * b.transpose();
    let lower = b.transpose() * b + c * c.transpose();
    let cross = a * b + b * c;
    let mut out = [0.0; 16];
    for k in 0..3 {
        out[k] = upper[(k, k)] - 1.0;
        out[3 + k] = lower[(k, k)] - 1.0;
    }
    for r in 0..3 {
        for col in 0..3 {
            out[6 + 3 * r + col] = cross[(r, col)];
        }
    }
    out[15] = bl.a_norm_sq() - bl.c_norm_sq();
    out
}

/// Haar-distributed element of SO(N): QR of a Gaussian matrix with the
/// signs of `diag(R)` folded into `Q`, then one column flipped if needed.
pub fn haar_rotation<const N: usize, R: rand::Rng>(rng: &mut R) -> SMatrix<f64, N, N> {
    let z = nalgebra::DMatrix::<f64>::from_fn(N, N, |_, _| StandardNormal.sample(rng));
    let qr = z.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for k in 0..N {
        if r[(k, k)] < 0.0 {
            q.column_mut(k).neg_mut();
        }
    }
    if q.determinant() < 0.0 {
        q.column_mut(0).neg_mut();
    }
    SMatrix::<f64, N, N>::from_fn(|i, j| q[(i, j)])
}

/// Seeded generator used by every sampler in the crate.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `Q I₀ᵛ Qᵀ` with `Q` Haar on SO(6), deterministic per seed.
pub fn random_acs(seed: u64) -> Acs {
    let mut rng = seeded_rng(seed);
    random_acs_with(&mut rng)
}

pub fn random_acs_with<R: rand::Rng>(rng: &mut R) -> Acs {
    let q = haar_rotation::<6, _>(rng);
    vertex(0)
        .conjugate(&q)
        .expect("SO(6) conjugation preserves Z")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::TwoForm;

    fn flip_56(j: &Matrix6<f64>) -> Matrix6<f64> {
        let mut m = *j;
        m[(5, 4)] = -m[(5, 4)];
        m[(4, 5)] = -m[(4, 5)];
        m
    }

    /// Independent orientation oracle: explicit frame `e₁, e₃, e₅`.
    fn explicit_det(j: &Matrix6<f64>) -> f64 {
        let e = |i: usize| {
            let mut v = Vector6::zeros();
            v[i] = 1.0;
            v
        };
        frame_determinant(j, &[e(0), e(2), e(4)])
    }

    #[test]
    fn fixtures_validate() {
        for k in 0..4 {
            assert!(validate(vertex(k).matrix()).is_ok(), "vertex {k}");
        }
        assert!(validate(hopf().matrix()).is_ok());
        assert!(validate(ank_reference().matrix()).is_ok());
    }

    #[test]
    fn reference_sign_is_negative() {
        assert_eq!(reference_sign(), -1.0);
        assert_eq!(explicit_det(vertex(0).matrix()), -1.0);
    }

    #[test]
    fn validate_rejections() {
        let flipped = flip_56(vertex(0).matrix());
        assert!(explicit_det(&flipped) > 0.0);
        assert!(matches!(validate(&flipped), Err(TwistorError::WrongOrientation { .. })));
        assert!(matches!(validate(&Matrix6::zeros()), Err(TwistorError::NotComplex { .. })));
        // complex but not orthogonal: conjugate by a shear
        let mut s = Matrix6::<f64>::identity();
        s[(0, 2)] = 0.5;
        let sj = s * vertex(0).matrix() * s.try_inverse().unwrap();
        assert!(matches!(validate(&sj), Err(TwistorError::NotOrthogonal { .. })));
        let mut nan = *vertex(0).matrix();
        nan[(0, 0)] = f64::NAN;
        assert!(matches!(validate(&nan), Err(TwistorError::NotComplex { .. })));
    }

    #[test]
    fn orientation_examples() {
        for k in 0..4 {
            assert_eq!(orientation_sign(vertex(k).matrix()).unwrap(), reference_sign());
        }
        let flipped = flip_56(vertex(0).matrix());
        assert_eq!(orientation_sign(&flipped).unwrap(), -reference_sign());
    }

    #[test]
    fn orientation_is_frame_independent() {
        let mut rng = seeded_rng(11);
        for seed in 0..5u64 {
            let acs = random_acs(seed);
            for _ in 0..10 {
                let frame: [Vector6<f64>; 3] =
                    std::array::from_fn(|_| Vector6::from_fn(|_, _| StandardNormal.sample(&mut rng)));
                let d = frame_determinant(acs.matrix(), &frame);
                assert_eq!(d.signum(), reference_sign());
            }
        }
    }

    #[test]
    fn fundamental_form_examples() {
        assert_eq!(
            fundamental_form(&vertex(0)),
            TwoForm::from_terms(&[(1, 2, 1.0), (3, 4, 1.0), (5, 6, 1.0)])
        );
        assert_eq!(
            fundamental_form(&hopf()),
            TwoForm::from_terms(&[(1, 4, 1.0), (2, 3, 1.0), (5, 6, 1.0)])
        );
        assert_eq!(
            fundamental_form(&vertex(2)),
            TwoForm::from_terms(&[(1, 2, -1.0), (3, 4, 1.0), (5, 6, -1.0)])
        );
    }

    #[test]
    fn acs_from_form_examples() {
        let w0 = TwoForm::from_terms(&[(1, 2, 1.0), (3, 4, 1.0), (5, 6, 1.0)]);
        assert_eq!(acs_from_form(&w0).unwrap(), vertex(0));
        let w1 = TwoForm::from_terms(&[(1, 2, 1.0), (3, 4, -1.0), (5, 6, -1.0)]);
        assert_eq!(acs_from_form(&w1).unwrap(), vertex(1));
        assert!(matches!(
            acs_from_form(&TwoForm::basis(0, 1)),
            Err(TwistorError::NotInZ(_))
        ));
    }

    #[test]
    fn blocks_examples() {
        let bn = blocks(&ank_reference());
        assert_eq!(bn.a, Matrix3::zeros());
        assert_eq!(bn.c, Matrix3::zeros());
        assert!((bn.b.transpose() * bn.b - Matrix3::identity()).amax() < 1e-15);

        let bh = blocks(&hopf());
        assert_eq!(bh.a_vec(), [0.0, 0.0, 1.0]);
        assert_eq!(bh.c_vec(), [0.0, 0.0, 1.0]);
        assert_eq!(bh.b.determinant(), 0.0);

        let b0 = blocks(&vertex(0));
        assert_eq!(b0.b.abs().sum(), 1.0);
        assert_eq!(b0.a_norm_sq(), 1.0);
        assert_eq!(b0.c_norm_sq(), 1.0);
    }

    #[test]
    fn constraint_examples() {
        let orth = Blocks {
            a: Matrix3::zeros(),
            b: haar_rotation::<3, _>(&mut seeded_rng(3)),
            c: Matrix3::zeros(),
        };
        assert!(constraint_residuals(&orth).iter().all(|r| r.abs() < 1e-14));
        let big = Blocks {
            a: Matrix3::zeros(),
            b: Matrix3::identity() * 2.0,
            c: Matrix3::zeros(),
        };
        let r = constraint_residuals(&big);
        assert!(r[..6].iter().all(|&x| x == 3.0));
    }

    #[test]
    fn random_acs_is_valid_and_deterministic() {
        for seed in 0..50 {
            let a = random_acs(seed);
            assert!(validate(a.matrix()).is_ok());
            assert_eq!(a, random_acs(seed));
            assert!(constraint_residuals(&blocks(&a)).iter().all(|r| r.abs() < 1e-9));
            assert_eq!(blocks(&a).reassemble(), *a.matrix());
        }
        assert_ne!(random_acs(1), random_acs(2));
    }

    #[test]
    fn mean_c_norm_sq_is_interior() {
        let mean: f64 = (0..1000).map(|s| blocks(&random_acs(s)).c_norm_sq()).sum::<f64>() / 1000.0;
        assert!(mean > 0.0 && mean < 1.0, "mean {mean}");
    }

    #[test]
    fn blockwise_conjugation_rotates_a_and_c() {
        let mut rng = seeded_rng(5);
        for seed in 0..20 {
            let acs = random_acs(seed);
            let o1 = haar_rotation::<3, _>(&mut rng);
            let o2 = haar_rotation::<3, _>(&mut rng);
            let moved = acs.conjugate_blockwise(&o1, &o2).unwrap();
            let (b0, b1) = (blocks(&acs), blocks(&moved));
            assert!((b0.a_norm_sq() - b1.a_norm_sq()).abs() < 1e-12);
            assert!((b0.c_norm_sq() - b1.c_norm_sq()).abs() < 1e-12);
        }
    }
}
