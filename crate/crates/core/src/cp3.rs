//! Two-way correspondence between `Z` and ℂP³.
//!
//! Λ²ℂ⁴ is identified with `𝔤* ⊗ ℂ` by
//!
//! ```text
//! 2v⁰∧v¹ = e¹ + ie²    2v²∧v³ = e¹ − ie²
//! 2v⁰∧v² = e³ + ie⁴    2v³∧v¹ = e³ − ie⁴
//! 2v⁰∧v³ = e⁵ + ie⁶    2v¹∧v² = e⁵ − ie⁶
//! ```
//!
//! A structure corresponds to `[u]` when the `+i` eigenspace of its covector
//! action, spanned by `α − i J*α`, is the image of `V_u = {u ∧ v}`.

use crate::acs::{validate, Acs};
use crate::error::{Result, TwistorError};
use crate::exterior::ComplexBivector;
use nalgebra::{DMatrix, Matrix6, SMatrix, Vector6};
use num_complex::Complex64;
use std::fmt;

const SPLIT_TOL: f64 = 1e-10;
const KERNEL_TOL: f64 = 1e-8;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Element of `𝔤* ⊗ ℂ` over `e¹…e⁶`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexCovector(pub [Complex64; 6]);

impl ComplexCovector {
    pub fn re(&self) -> Vector6<f64> {
        Vector6::from_fn(|i, _| self.0[i].re)
    }

    pub fn im(&self) -> Vector6<f64> {
        Vector6::from_fn(|i, _| self.0[i].im)
    }

    /// Complex-bilinear extension of the metric pairing.
    pub fn bilinear(&self, other: &ComplexCovector) -> Complex64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }
}

/// Image of each basis bivector: `(covector index, coefficient)` pairs.
const TABLE: [[(usize, Complex64); 2]; 6] = [
    [(0, Complex64::new(0.5, 0.0)), (1, Complex64::new(0.0, 0.5))],
    [(2, Complex64::new(0.5, 0.0)), (3, Complex64::new(0.0, 0.5))],
    [(4, Complex64::new(0.5, 0.0)), (5, Complex64::new(0.0, 0.5))],
    [(0, Complex64::new(0.5, 0.0)), (1, Complex64::new(0.0, -0.5))],
    [(2, Complex64::new(0.5, 0.0)), (3, Complex64::new(0.0, -0.5))],
    [(4, Complex64::new(0.5, 0.0)), (5, Complex64::new(0.0, -0.5))],
];

/// Complex-linear extension of the identification table.
pub fn identify(b: &ComplexBivector) -> ComplexCovector {
    let mut out = [c(0.0, 0.0); 6];
    for (k, row) in TABLE.iter().enumerate() {
        for &(m, coeff) in row {
            out[m] += b.coeffs[k] * coeff;
        }
    }
    ComplexCovector(out)
}

/// Inverse of [`identify`].
pub fn identify_inverse(w: &ComplexCovector) -> ComplexBivector {
    let g = &w.0;
    let i = c(0.0, 1.0);
    // γ₁e¹ + γ₂e² = (γ₁ − iγ₂) v⁰∧v¹ + (γ₁ + iγ₂) v²∧v³, and likewise
    // for (e³, e⁴) ↔ (v⁰∧v², v³∧v¹), (e⁵, e⁶) ↔ (v⁰∧v³, v¹∧v²)
    ComplexBivector {
        coeffs: [
            g[0] - i * g[1],
            g[2] - i * g[3],
            g[4] - i * g[5],
            g[0] + i * g[1],
            g[2] + i * g[3],
            g[4] + i * g[5],
        ],
    }
}

/// Homogeneous point `[u⁰, u¹, u², u³]` of ℂP³.
#[derive(Debug, Clone, Copy)]
pub struct Cp3Point {
    coords: [Complex64; 4],
}

impl Cp3Point {
    pub fn new(coords: [Complex64; 4]) -> Result<Self> {
        let n: f64 = coords.iter().map(|z| z.norm_sqr()).sum();
        if !(n > 0.0) || !n.is_finite() {
            return Err(TwistorError::ZeroPoint);
        }
        Ok(Self { coords })
    }

    pub fn from_real(coords: [f64; 4]) -> Result<Self> {
        Self::new(coords.map(|x| c(x, 0.0)))
    }

    /// Coordinate point `[0, …, 1, …, 0]`.
    pub fn vertex(k: usize) -> Self {
        let mut coords = [c(0.0, 0.0); 4];
        coords[k] = c(1.0, 0.0);
        Self { coords }
    }

    pub fn coords(&self) -> &[Complex64; 4] {
        &self.coords
    }

    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Hermitian product `⟨self, other⟩ = Σ conj(selfᵃ) otherᵃ`.
    pub fn hermitian(&self, other: &Cp3Point) -> Complex64 {
        self.coords
            .iter()
            .zip(other.coords.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Unit representative whose largest-modulus coordinate (lowest index
    /// among near-ties) is real and positive.
    pub fn normalized(&self) -> Self {
        let n = self.norm();
        let mods: Vec<f64> = self.coords.iter().map(|z| z.norm() / n).collect();
        let top = mods.iter().cloned().fold(0.0, f64::max);
        let lead = mods.iter().position(|&m| m >= top - 1e-9).unwrap_or(0);
        let phase = self.coords[lead] / self.coords[lead].norm();
        let scale = phase.conj() / n;
        Self {
            coords: self.coords.map(|z| z * scale),
        }
    }

    /// Fubini–Study sine distance `√(1 − |⟨p, q⟩|² / (‖p‖²‖q‖²))`, taken as
    /// the norm of the part of `q̂` orthogonal to `p̂`.
    pub fn projective_distance(&self, other: &Cp3Point) -> f64 {
        let (p, q) = (self.unit(), other.unit());
        let h = p.hermitian(&q);
        p.coords
            .iter()
            .zip(q.coords.iter())
            .map(|(a, b)| (b - h * a).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    fn unit(&self) -> Self {
        let n = self.norm();
        Self {
            coords: self.coords.map(|z| z / n),
        }
    }

    /// `‖p‖‖q‖ − |⟨p, q⟩|` for unit representatives.
    pub fn projective_residual(&self, other: &Cp3Point) -> f64 {
        1.0 - self.hermitian(other).norm() / (self.norm() * other.norm())
    }

    pub fn projectively_eq(&self, other: &Cp3Point, tol: f64) -> bool {
        self.projective_residual(other) < tol
    }

    pub fn tetra_coords(&self) -> TetraCoords {
        tetra_coords(self)
    }
}

impl fmt::Display for Cp3Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|z| format!("{:+.6}{:+.6}i", z.re, z.im))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Barycentric tetrahedron coordinates `b_a = |uᵃ|² / Σ|uᵇ|²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TetraCoords {
    pub b: [f64; 4],
}

pub fn tetra_coords(p: &Cp3Point) -> TetraCoords {
    let sq = p.coords.map(|z| z.norm_sqr());
    let total: f64 = sq.iter().sum();
    TetraCoords {
        b: sq.map(|s| s / total),
    }
}

/// Spanning set `identify(u ∧ v^j)`, `j = 0..4`, of the image of `V_u`.
pub fn v_u_image(p: &Cp3Point) -> [ComplexCovector; 4] {
    let u = p.normalized().coords;
    std::array::from_fn(|j| {
        let mut v = [c(0.0, 0.0); 4];
        v[j] = c(1.0, 0.0);
        identify(&ComplexBivector::wedge(&u, &v))
    })
}

/// Structure whose covector action has the image of `V_u` as `+i` eigenspace.
pub fn cp3_to_acs(p: &Cp3Point) -> Result<Acs> {
    let span = v_u_image(p);
    // Re: W → ℝ⁶ is a real isomorphism; for each basis covector α solve
    // Re(Σ z_j w_j) = α, then J*α = −Im(Σ z_j w_j).
    let mut real = SMatrix::<f64, 6, 8>::zeros();
    for (j, w) in span.iter().enumerate() {
        real.set_column(j, &w.re());
        real.set_column(j + 4, &(-w.im()));
    }
    let svd = real.svd(true, true);
    let smallest = svd.singular_values.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(smallest > SPLIT_TOL) {
        return Err(TwistorError::DegenerateSubspace { residual: smallest });
    }
    let mut covector_action = Matrix6::zeros();
    for k in 0..6 {
        let mut alpha = Vector6::zeros();
        alpha[k] = 1.0;
        let x = svd
            .solve(&alpha, SPLIT_TOL)
            .map_err(|_| TwistorError::DegenerateSubspace { residual: smallest })?;
        let mut im = Vector6::zeros();
        for (j, w) in span.iter().enumerate() {
            // Im((x_j + i x_{j+4}) w_j)
            im += w.im() * x[j] + w.re() * x[j + 4];
        }
        covector_action.set_column(k, &(-im));
    }
    validate(&covector_action.transpose())
}

/// The six vectors `e^k − i J* e^k` spanning the `+i` eigenspace.
pub fn plus_i_eigenspace(acs: &Acs) -> [ComplexCovector; 6] {
    let star = acs.covector_action();
    std::array::from_fn(|k| {
        let col = star.column(k);
        ComplexCovector(std::array::from_fn(|m| {
            c(if m == k { 1.0 } else { 0.0 }, -col[m])
        }))
    })
}

/// Recovers `[u]` as the kernel of `u ↦ u ∧ β` over the pulled-back
/// eigenspace.
pub fn acs_to_cp3(acs: &Acs) -> Result<Cp3Point> {
    let eig = plus_i_eigenspace(acs);
    let mut rows: Vec<[Complex64; 4]> = Vec::with_capacity(24);
    for w in eig.iter() {
        let beta = identify_inverse(w);
        for &(a, b, cc) in &[(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)] {
            let mut row = [c(0.0, 0.0); 4];
            row[a] += beta.get(b, cc);
            row[b] -= beta.get(a, cc);
            row[cc] += beta.get(a, b);
            rows.push(row);
        }
    }
    let n = rows.len();
    let mut real = DMatrix::<f64>::zeros(2 * n, 8);
    for (r, row) in rows.iter().enumerate() {
        for (k, z) in row.iter().enumerate() {
            real[(r, k)] = z.re;
            real[(r, k + 4)] = -z.im;
            real[(r + n, k)] = z.im;
            real[(r + n, k + 4)] = z.re;
        }
    }
    let svd = real.svd(false, true);
    let v_t = svd.v_t.as_ref().expect("requested V^T");
    let mut order: Vec<usize> = (0..8).collect();
    order.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
    let null = order
        .iter()
        .filter(|&&i| svd.singular_values[i] < KERNEL_TOL)
        .count();
    if null != 2 {
        return Err(TwistorError::KernelRankError { dimension: null / 2 });
    }
    let row = v_t.row(order[0]);
    let u = std::array::from_fn(|k| c(row[k], row[k + 4]));
    Ok(Cp3Point::new(u)?.normalized())
}
