//! Vectors, covectors and 2-forms on the six-dimensional algebra, plus the
//! complex bivectors of Λ²ℂ⁴ used by the projective correspondence.
//!
//! Basis vectors are `e₁…e₆` (indices `0..6` in code), covectors `e¹…e⁶`.
//! A [`TwoForm`] stores the 15 coefficients `ω_ij`, `i < j`, in
//! lexicographic order of the pairs, so `e¹∧e²` is slot 0 and `e⁵∧e⁶` slot 14.

use nalgebra::{Matrix6, Vector6};
use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

/// Ordered index pairs `(i, j)`, `i < j`, in storage order of [`TwoForm`].
pub const PAIRS: [(usize, usize); 15] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (0, 5),
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (2, 3),
    (2, 4),
    (2, 5),
    (3, 4),
    (3, 5),
    (4, 5),
];

/// Storage slot of the pair `(i, j)` with `i < j`.
pub const fn pair_index(i: usize, j: usize) -> usize {
    // row offsets of the strict upper triangle of a 6x6 matrix
    const OFFSET: [usize; 6] = [0, 5, 9, 12, 14, 15];
    OFFSET[i] + (j - i - 1)
}

/// Element of su(2) ⊕ su(2) in the basis `e₁…e₆`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraVector(pub Vector6<f64>);

impl AlgebraVector {
    pub fn new(coeffs: [f64; 6]) -> Self {
        Self(Vector6::from(coeffs))
    }

    pub fn zero() -> Self {
        Self(Vector6::zeros())
    }

    /// Basis vector `e_{i+1}`.
    pub fn basis(i: usize) -> Self {
        let mut v = Vector6::zeros();
        v[i] = 1.0;
        Self(v)
    }

    pub fn coeffs(&self) -> [f64; 6] {
        self.0.into()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }
}

impl Add for AlgebraVector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl Sub for AlgebraVector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

impl Neg for AlgebraVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl Mul<AlgebraVector> for f64 {
    type Output = AlgebraVector;
    fn mul(self, rhs: AlgebraVector) -> AlgebraVector {
        AlgebraVector(rhs.0 * self)
    }
}

/// Element of 𝔤* in the dual basis `e¹…e⁶`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Covector(pub Vector6<f64>);

impl Covector {
    pub fn new(coeffs: [f64; 6]) -> Self {
        Self(Vector6::from(coeffs))
    }

    pub fn zero() -> Self {
        Self(Vector6::zeros())
    }

    /// Dual basis covector `e^{i+1}`.
    pub fn basis(i: usize) -> Self {
        let mut v = Vector6::zeros();
        v[i] = 1.0;
        Self(v)
    }

    pub fn apply(&self, x: &AlgebraVector) -> f64 {
        self.0.dot(&x.0)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }
}

impl Add for Covector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl Sub for Covector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

impl Neg for Covector {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl Mul<Covector> for f64 {
    type Output = Covector;
    fn mul(self, rhs: Covector) -> Covector {
        Covector(rhs.0 * self)
    }
}

/// Element of Λ²(𝔤*), 15 real coefficients over `eⁱ∧eʲ`, `i < j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoForm {
    pub coeffs: [f64; 15],
}

impl TwoForm {
    pub fn zero() -> Self {
        Self { coeffs: [0.0; 15] }
    }

    /// `e^{i+1} ∧ e^{j+1}` for any distinct `i, j` (sign follows the order).
    pub fn basis(i: usize, j: usize) -> Self {
        let mut w = Self::zero();
        w.add_term(i, j, 1.0);
        w
    }

    /// Builds a form from `(i, j, coefficient)` terms with 1-based indices,
    /// matching the way forms are usually written down by hand.
    pub fn from_terms(terms: &[(usize, usize, f64)]) -> Self {
        let mut w = Self::zero();
        for &(i, j, c) in terms {
            w.add_term(i - 1, j - 1, c);
        }
        w
    }

    /// Adds `c · e^{i+1} ∧ e^{j+1}`; `i > j` contributes with a flipped sign.
    pub fn add_term(&mut self, i: usize, j: usize, c: f64) {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.coeffs[pair_index(i, j)] += c,
            std::cmp::Ordering::Greater => self.coeffs[pair_index(j, i)] -= c,
            std::cmp::Ordering::Equal => {}
        }
    }

    /// Coefficient `ω_ij` of the antisymmetric array, any order of `i, j`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.coeffs[pair_index(i, j)],
            std::cmp::Ordering::Greater => -self.coeffs[pair_index(j, i)],
            std::cmp::Ordering::Equal => 0.0,
        }
    }

    /// Antisymmetric matrix `W` with `W[(i, j)] = ω_ij`.
    pub fn to_matrix(&self) -> Matrix6<f64> {
        let mut m = Matrix6::zeros();
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            m[(i, j)] = self.coeffs[k];
            m[(j, i)] = -self.coeffs[k];
        }
        m
    }

    /// Reads the strict upper triangle; the lower triangle is ignored.
    pub fn from_matrix(m: &Matrix6<f64>) -> Self {
        let mut coeffs = [0.0; 15];
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            coeffs[k] = m[(i, j)];
        }
        Self { coeffs }
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = *self;
        out.coeffs.iter_mut().for_each(|c| *c *= s);
        out
    }

    pub fn max_abs_diff(&self, other: &TwoForm) -> f64 {
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// `σ ∧ σ` as the 15 coefficients of Λ⁴ over ordered quadruples; zero
    /// exactly for decomposable forms (Plücker relations).
    pub fn self_wedge(&self) -> [f64; 15] {
        let mut out = [0.0; 15];
        let mut n = 0;
        for a in 0..6 {
            for b in a + 1..6 {
                for c in b + 1..6 {
                    for d in c + 1..6 {
                        // (σ∧σ)_{abcd} = 2 (σ_ab σ_cd − σ_ac σ_bd + σ_ad σ_bc)
                        out[n] = 2.0
                            * (self.get(a, b) * self.get(c, d) - self.get(a, c) * self.get(b, d)
                                + self.get(a, d) * self.get(b, c));
                        n += 1;
                    }
                }
            }
        }
        out
    }
}

impl Add for TwoForm {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.coeffs.iter_mut().zip(rhs.coeffs).for_each(|(a, b)| *a += b);
        self
    }
}

impl Sub for TwoForm {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self.coeffs.iter_mut().zip(rhs.coeffs).for_each(|(a, b)| *a -= b);
        self
    }
}

impl Neg for TwoForm {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

/// Exterior product of two covectors.
pub fn wedge(a: &Covector, b: &Covector) -> TwoForm {
    let mut coeffs = [0.0; 15];
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        coeffs[k] = a.0[i] * b.0[j] - a.0[j] * b.0[i];
    }
    TwoForm { coeffs }
}

/// `⟨a, b⟩ = Σ_{i<j} a_ij b_ij`.
pub fn form_inner(a: &TwoForm, b: &TwoForm) -> f64 {
    a.coeffs.iter().zip(b.coeffs.iter()).map(|(x, y)| x * y).sum()
}

/// `w(X, Y) = Σ_{i<j} w_ij (X_i Y_j − X_j Y_i)`.
pub fn eval_form(w: &TwoForm, x: &AlgebraVector, y: &AlgebraVector) -> f64 {
    PAIRS
        .iter()
        .zip(w.coeffs.iter())
        .map(|(&(i, j), c)| c * (x.0[i] * y.0[j] - x.0[j] * y.0[i]))
        .sum()
}

/// Index pairs of the bivector basis `v⁰∧v¹, v⁰∧v², v⁰∧v³, v²∧v³, v³∧v¹, v¹∧v²`.
pub const BIVECTOR_BASIS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2)];

/// Element of Λ²ℂ⁴ over [`BIVECTOR_BASIS`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexBivector {
    pub coeffs: [Complex64; 6],
}

impl ComplexBivector {
    pub fn zero() -> Self {
        Self {
            coeffs: [Complex64::new(0.0, 0.0); 6],
        }
    }

    /// `u ∧ v` for two vectors of ℂ⁴.
    pub fn wedge(u: &[Complex64; 4], v: &[Complex64; 4]) -> Self {
        let mut coeffs = [Complex64::new(0.0, 0.0); 6];
        for (k, &(a, b)) in BIVECTOR_BASIS.iter().enumerate() {
            coeffs[k] = u[a] * v[b] - u[b] * v[a];
        }
        Self { coeffs }
    }

    /// Component `β_ab` of the antisymmetric 4×4 array.
    pub fn get(&self, a: usize, b: usize) -> Complex64 {
        for (k, &(p, q)) in BIVECTOR_BASIS.iter().enumerate() {
            if (p, q) == (a, b) {
                return self.coeffs[k];
            }
            if (q, p) == (a, b) {
                return -self.coeffs[k];
            }
        }
        Complex64::new(0.0, 0.0)
    }

    /// Coefficients of `u ∧ β` in Λ³ℂ⁴ over `(012, 013, 023, 123)`.
    pub fn wedge_vector(&self, u: &[Complex64; 4]) -> [Complex64; 4] {
        const TRIPLES: [(usize, usize, usize); 4] = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)];
        TRIPLES.map(|(a, b, c)| u[a] * self.get(b, c) - u[b] * self.get(a, c) + u[c] * self.get(a, b))
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}
