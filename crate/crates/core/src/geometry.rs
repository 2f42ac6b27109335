//! Projective subsets of `Z`: edges, generalized edges, the polar set of
//! `e⁵∧e⁶`, its equatorial circles and the circle decomposition of the ANK
//! set.
//!
//! Every parametrized form here is built through the ℂP³ correspondence.
//! Hand-written closed forms exist only for comparison.

use crate::acs::{acs_from_form, fundamental_form, Acs};
use crate::cp3::{cp3_to_acs, Cp3Point};
use crate::error::{Result, TwistorError};
use crate::exterior::{form_inner, TwoForm};
use num_complex::Complex64;

/// Tolerance for unit and orthonormality preconditions.
pub const PARAM_TOL: f64 = 1e-9;
/// Distance from `r = −1` below which the degenerate pole is used.
pub const DEGENERATE_TOL: f64 = 1e-8;
/// Tolerance of the polar pairing test.
pub const POLAR_TOL: f64 = 1e-9;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Projective line through two distinct points.
#[derive(Debug, Clone, Copy)]
pub struct Edge {
    z: Cp3Point,
    u: Cp3Point,
}

impl Edge {
    pub fn new(z: Cp3Point, u: Cp3Point) -> Result<Self> {
        if z.projective_distance(&u) < PARAM_TOL {
            return Err(TwistorError::DegenerateEdge);
        }
        Ok(Self {
            z: z.normalized(),
            u: u.normalized(),
        })
    }

    pub fn z(&self) -> &Cp3Point {
        &self.z
    }

    pub fn u(&self) -> &Cp3Point {
        &self.u
    }
}

/// `αz + βu` with unit-norm representatives of the endpoints.
pub fn edge_point(e: &Edge, alpha: Complex64, beta: Complex64) -> Result<Cp3Point> {
    if alpha.norm() + beta.norm() == 0.0 {
        return Err(TwistorError::ZeroCombination);
    }
    let (z, u) = (e.z.coords(), e.u.coords());
    Cp3Point::new(std::array::from_fn(|k| alpha * z[k] + beta * u[k]))
        .map_err(|_| TwistorError::ZeroCombination)
}

fn unit_residual(values: &[f64]) -> f64 {
    (values.iter().map(|v| v * v).sum::<f64>() - 1.0).abs()
}

/// Fundamental form of the point `[s, c₁ + ic₂, 0, 0]` on the edge through
/// the first two vertices.
pub fn lemma1_form(s: f64, c1: f64, c2: f64) -> Result<TwoForm> {
    let residual = unit_residual(&[s, c1, c2]);
    if !(residual <= PARAM_TOL) {
        return Err(TwistorError::ParamDomain { residual });
    }
    let p = Cp3Point::new([c(s, 0.0), c(c1, c2), c(0.0, 0.0), c(0.0, 0.0)])?;
    Ok(fundamental_form(&cp3_to_acs(&p)?))
}

/// `e¹² + r(e³⁴ + e⁵⁶) + u(e³⁵ + e⁶⁴) + x(e³⁶ + e⁴⁵)`.
pub fn edge_form_closed(r: f64, u: f64, x: f64) -> TwoForm {
    TwoForm::from_terms(&[
        (1, 2, 1.0),
        (3, 4, r),
        (5, 6, r),
        (3, 5, u),
        (6, 4, u),
        (3, 6, x),
        (4, 5, x),
    ])
}

fn check_decomposable_unit(sigma: &TwoForm) -> Result<()> {
    let residual = sigma.self_wedge().iter().fold(0.0f64, |a, b| a.max(b.abs()));
    if !(residual < PARAM_TOL) {
        return Err(TwistorError::NotDecomposable { residual });
    }
    let norm_sq = form_inner(sigma, sigma);
    if !((norm_sq - 1.0).abs() < PARAM_TOL) {
        return Err(TwistorError::NotUnit { norm_sq });
    }
    Ok(())
}

/// Whether `ω ∈ Z` and `ω − σ` lives on the orthogonal complement of the
/// plane of `σ = e∧f`.
pub fn generalized_edge_contains(sigma: &TwoForm, omega: &TwoForm) -> Result<bool> {
    check_decomposable_unit(sigma)?;
    if acs_from_form(omega).is_err() {
        return Ok(false);
    }
    // For σ = e∧f with e, f orthonormal, S·Sᵀ projects onto span(e, f).
    let s = sigma.to_matrix();
    let projector = s * s.transpose();
    let tau = (*omega - *sigma).to_matrix();
    Ok((tau * projector).amax() < PARAM_TOL)
}

/// Whether `ω ∈ Z` and `g(ω, σ) = 0`.
pub fn polar_contains(sigma: &TwoForm, omega: &TwoForm) -> Result<bool> {
    if sigma.coeffs.iter().all(|&x| x == 0.0) {
        return Err(TwistorError::ZeroForm);
    }
    if acs_from_form(omega).is_err() {
        return Ok(false);
    }
    Ok(form_inner(omega, sigma).abs() < POLAR_TOL)
}

/// `e⁵∧e⁶`, the form whose polar set carries the ANK structures.
pub fn e56() -> TwoForm {
    TwoForm::basis(4, 5)
}

/// A point of the sphere over an edge: `t² + t₁² + t₂² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeSphereParams {
    pub t: f64,
    pub t1: f64,
    pub t2: f64,
}

impl EdgeSphereParams {
    pub fn new(t: f64, t1: f64, t2: f64) -> Result<Self> {
        let residual = unit_residual(&[t, t1, t2]);
        if !(residual <= PARAM_TOL) {
            return Err(TwistorError::ParamDomain { residual });
        }
        Ok(Self { t, t1, t2 })
    }

    /// Equator point at angle `θ`.
    pub fn equator(theta: f64) -> Self {
        Self {
            t: 0.0,
            t1: theta.cos(),
            t2: theta.sin(),
        }
    }
}

/// Poles on the edges through vertices 0, 3 and 1, 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPairParams {
    pub r_plus: f64,
    pub x_plus: f64,
    pub u_plus: f64,
    pub r_minus: f64,
    pub x_minus: f64,
    pub u_minus: f64,
}

impl PolarPairParams {
    pub fn new(plus: [f64; 3], minus: [f64; 3]) -> Result<Self> {
        let residual = unit_residual(&plus).max(unit_residual(&minus));
        if !(residual <= PARAM_TOL) {
            return Err(TwistorError::ParamDomain { residual });
        }
        Ok(Self {
            r_plus: plus[0],
            x_plus: plus[1],
            u_plus: plus[2],
            r_minus: minus[0],
            x_minus: minus[1],
            u_minus: minus[2],
        })
    }

    /// The ANK family: `r₊ = −r₋ = r`, `x₊ = −x₋ = x`, `u₊ = u₋ = u`.
    pub fn ank(r: f64, x: f64, u: f64) -> Result<Self> {
        Self::new([r, x, u], [-r, -x, u])
    }

    pub fn plus_degenerate(&self) -> bool {
        (self.r_plus + 1.0).abs() < DEGENERATE_TOL
    }

    pub fn minus_degenerate(&self) -> bool {
        (self.r_minus + 1.0).abs() < DEGENERATE_TOL
    }
}

/// `(p₊, p₋)` as unit vectors with the first nonzero coordinate real.
pub fn polar_pair_points(p: &PolarPairParams) -> (Cp3Point, Cp3Point) {
    let zero = c(0.0, 0.0);
    let plus = if p.plus_degenerate() {
        [zero, zero, zero, c(1.0, 0.0)]
    } else {
        let d = (2.0 * (p.r_plus + 1.0)).sqrt();
        [
            c(((p.r_plus + 1.0) / 2.0).sqrt(), 0.0),
            zero,
            zero,
            c(-p.u_plus, p.x_plus) / d,
        ]
    };
    let minus = if p.minus_degenerate() {
        [zero, zero, c(1.0, 0.0), zero]
    } else {
        let d = (2.0 * (p.r_minus + 1.0)).sqrt();
        [
            zero,
            c(((p.r_minus + 1.0) / 2.0).sqrt(), 0.0),
            c(p.u_minus, p.x_minus) / d,
            zero,
        ]
    };
    (
        Cp3Point::new(plus).expect("unit pole"),
        Cp3Point::new(minus).expect("unit pole"),
    )
}

/// `e⁵⁶ + r(e¹² + e³⁴) + x(e¹³ + e⁴²) + u(e¹⁴ + e²³)`.
pub fn plus_pole_form(r: f64, x: f64, u: f64) -> TwoForm {
    TwoForm::from_terms(&[
        (5, 6, 1.0),
        (1, 2, r),
        (3, 4, r),
        (1, 3, x),
        (4, 2, x),
        (1, 4, u),
        (2, 3, u),
    ])
}

/// `−e⁵⁶ + r(e¹² − e³⁴) + x(e¹³ − e⁴²) + u(e¹⁴ − e²³)`.
pub fn minus_pole_form(r: f64, x: f64, u: f64) -> TwoForm {
    TwoForm::from_terms(&[
        (5, 6, -1.0),
        (1, 2, r),
        (3, 4, -r),
        (1, 3, x),
        (4, 2, -x),
        (1, 4, u),
        (2, 3, -u),
    ])
}

/// `√((1−t)/2) p₋ + (t₁ + it₂)/√(2(1−t)) p₊`, or `p₊` at `t = 1`.
pub fn edge_sphere_point(p: &PolarPairParams, s: &EdgeSphereParams) -> Cp3Point {
    let (plus, minus) = polar_pair_points(p);
    if (1.0 - s.t).abs() < DEGENERATE_TOL {
        return plus;
    }
    let a = ((1.0 - s.t) / 2.0).sqrt();
    let b = c(s.t1, s.t2) / (2.0 * (1.0 - s.t)).sqrt();
    let (pc, mc) = (plus.coords(), minus.coords());
    Cp3Point::new(std::array::from_fn(|k| a * mc[k] + b * pc[k])).expect("poles are orthogonal")
}

/// Equator point `(p₋ + e^{iθ} p₊)/√2`.
pub fn circle_point(p: &PolarPairParams, theta: f64) -> Cp3Point {
    edge_sphere_point(p, &EdgeSphereParams::equator(theta))
}

/// Fundamental form of the circle point, computed through ℂP³.
pub fn lemma3_form(p: &PolarPairParams, theta: f64) -> TwoForm {
    let acs = cp3_to_acs(&circle_point(p, theta)).expect("circle points lie in Z");
    fundamental_form(&acs)
}

/// Structure on the circle of the ANK family.
pub fn ank_circle_point(r: f64, x: f64, u: f64, theta: f64) -> Result<Acs> {
    cp3_to_acs(&circle_point(&PolarPairParams::ank(r, x, u)?, theta))
}

/// Which closed-form expression applies to a pair of poles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircleBranch {
    Generic,
    BothDegenerate,
    /// `r₋ = −1`, `r₊` generic.
    MinusDegenerate,
    /// `r₊ = −1`, `r₋` generic.
    PlusDegenerate,
}

pub fn circle_branch(p: &PolarPairParams) -> CircleBranch {
    match (p.plus_degenerate(), p.minus_degenerate()) {
        (false, false) => CircleBranch::Generic,
        (true, true) => CircleBranch::BothDegenerate,
        (false, true) => CircleBranch::MinusDegenerate,
        (true, false) => CircleBranch::PlusDegenerate,
    }
}

/// Closed-form right-hand side of a circle branch and the multiple of `ω`
/// it equals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchFormula {
    pub branch: CircleBranch,
    pub form: TwoForm,
    pub scale: f64,
}

/// Reading of the closed forms: `Literal` evaluates every symbol as
/// written, `Corrected` applies the recomputed fixes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reading {
    Literal,
    Corrected,
}

fn generic_formula(p: &PolarPairParams, t1: f64, t2: f64) -> TwoForm {
    let (rp, xp, up) = (p.r_plus + 1.0, p.x_plus, p.u_plus);
    let (rm, xm, um) = (p.r_minus + 1.0, p.x_minus, p.u_minus);
    let d = (rm * rp).sqrt();
    let q = rp * rm;
    let a = xp * t1 - up * t2;
    let b = xp * t2 + up * t1;
    let am = um * t2 - xm * t1;
    let bm = um * t1 + xm * t2;
    TwoForm::from_terms(&[
        (1, 2, p.r_plus + p.r_minus),
        (3, 4, p.r_plus - p.r_minus),
        (1, 3, xp + xm),
        (4, 2, xp - xm),
        (1, 4, up + um),
        (2, 3, up - um),
        (1, 5, (a * rm + am * rp) / d),
        (1, 6, (-b * rm + bm * rp) / d),
        (2, 5, (b * rm + bm * rp) / d),
        (2, 6, (a * rm - am * rp) / d),
        (3, 5, (-t2 * q + um * a + xm * (up * t1 + xp * t2)) / d),
        (3, 6, (-t1 * q - um * b + xm * a) / d),
        (4, 5, (-t1 * q + um * b - xm * a) / d),
        (4, 6, (t2 * q + um * a + xm * (up * t1 + xp * t2)) / d),
    ])
}

fn both_degenerate_formula(t1: f64, t2: f64) -> TwoForm {
    TwoForm::from_terms(&[
        (1, 2, -1.0),
        (3, 5, t2),
        (4, 6, t2),
        (3, 6, t1),
        (4, 5, -t1),
    ])
}

fn minus_degenerate_formula(p: &PolarPairParams, t1: f64, t2: f64, reading: Reading) -> TwoForm {
    let (r, x, u) = (p.r_plus, p.x_plus, p.u_plus);
    let s = ((r + 1.0) / 2.0).sqrt();
    let d = (2.0 * (r + 1.0)).sqrt();
    let (k12, sign15) = match reading {
        Reading::Literal => ((p.r_minus - 1.0) / 2.0, -1.0),
        Reading::Corrected => ((r - 1.0) / 2.0, 1.0),
    };
    TwoForm::from_terms(&[
        (1, 2, k12),
        (1, 6, t1 * s),
        (2, 5, t1 * s),
        (1, 4, u / 2.0),
        (2, 3, u / 2.0),
        (1, 3, x / 2.0),
        (2, 4, -x / 2.0),
        (1, 5, sign15 * t2 * s),
        (2, 6, -sign15 * t2 * s),
        (3, 4, (r + 1.0) / 2.0),
        (4, 6, (x * t1 - u * t2) / d),
        (3, 5, (x * t1 - u * t2) / d),
        (4, 5, (u * t1 + x * t2) / d),
        (3, 6, -(u * t1 + x * t2) / d),
    ])
}

fn plus_degenerate_formula(p: &PolarPairParams, t1: f64, t2: f64, reading: Reading) -> TwoForm {
    let (r, x, u) = (p.r_minus, p.x_minus, p.u_minus);
    // The radicals are written with r₊, which is −1 on this branch.
    let radicand = match reading {
        Reading::Literal => p.r_plus + 1.0,
        Reading::Corrected => r + 1.0,
    };
    let s = (radicand / 2.0).sqrt();
    let d = (2.0 * radicand).sqrt();
    TwoForm::from_terms(&[
        (1, 2, (r - 1.0) / 2.0),
        (1, 4, u / 2.0),
        (2, 3, -u / 2.0),
        (1, 3, x / 2.0),
        (2, 4, x / 2.0),
        (1, 6, t1 * s),
        (2, 5, -t1 * s),
        (1, 5, t2 * s),
        (2, 6, t2 * s),
        (3, 6, (u * t1 + x * t2) / d),
        (4, 5, -(u * t1 + x * t2) / d),
        (3, 5, (u * t2 - x * t1) / d),
        (4, 6, (u * t2 - x * t1) / d),
        (3, 4, -(1.0 + r) / 2.0),
    ])
}

/// Closed-form expression of the circle form for the branch selected by
/// `p`. The generic expression equals `2ω`, the other three equal `ω`.
pub fn branch_formula(p: &PolarPairParams, theta: f64, reading: Reading) -> BranchFormula {
    let (t1, t2) = (theta.cos(), theta.sin());
    let branch = circle_branch(p);
    let (form, scale) = match branch {
        CircleBranch::Generic => (generic_formula(p, t1, t2), 2.0),
        CircleBranch::BothDegenerate => (both_degenerate_formula(t1, t2), 1.0),
        CircleBranch::MinusDegenerate => (minus_degenerate_formula(p, t1, t2, reading), 1.0),
        CircleBranch::PlusDegenerate => (plus_degenerate_formula(p, t1, t2, reading), 1.0),
    };
    BranchFormula {
        branch,
        form,
        scale,
    }
}

/// Per-coefficient comparison of a closed form against the constructive
/// circle form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchComparison {
    pub branch: CircleBranch,
    pub scale: f64,
    /// `|closed − scale·ω|` per coefficient; NaN where the closed form is
    /// singular.
    pub residuals: [f64; 15],
}

impl BranchComparison {
    /// Largest residual, NaN-propagating.
    pub fn max(&self) -> f64 {
        self.residuals
            .iter()
            .fold(0.0, |a: f64, &b| if b.is_nan() || a.is_nan() { f64::NAN } else { a.max(b) })
    }

    pub fn agrees(&self, tol: f64) -> bool {
        self.max() < tol
    }

    /// Indices into [`crate::exterior::PAIRS`] where the two disagree.
    pub fn disagreeing(&self, tol: f64) -> Vec<usize> {
        (0..15).filter(|&k| !(self.residuals[k] < tol)).collect()
    }
}

pub fn compare_branch(p: &PolarPairParams, theta: f64, reading: Reading) -> BranchComparison {
    let f = branch_formula(p, theta, reading);
    let w = lemma3_form(p, theta).scale(f.scale);
    BranchComparison {
        branch: f.branch,
        scale: f.scale,
        residuals: std::array::from_fn(|k| (f.form.coeffs[k] - w.coeffs[k]).abs()),
    }
}

/// Gap between the generic form at `r₊ = −1 + δ` and the form on the
/// `r₊ = −1` branch, other data fixed. The approach runs along `x₊ = 0`,
/// `u₊ < 0`, which puts the pole at its limiting representative.
pub fn seam_gap(minus: [f64; 3], theta: f64, delta: f64) -> Result<f64> {
    let r = -1.0 + delta;
    let near = PolarPairParams::new([r, 0.0, -(1.0 - r * r).max(0.0).sqrt()], minus)?;
    let at = PolarPairParams::new([-1.0, 0.0, 0.0], minus)?;
    Ok(lemma3_form(&near, theta).max_abs_diff(&lemma3_form(&at, theta)))
}

/// `(|u⁰|² + |u³|² − |u¹|² − |u²|²)/‖u‖²`, the `e⁵∧e⁶` coefficient of the
/// point's fundamental form.
pub fn polar_imbalance(q: &Cp3Point) -> f64 {
    let m = q.coords().map(|z| z.norm_sqr());
    (m[0] + m[3] - m[1] - m[2]) / (m.iter().sum::<f64>())
}

/// Recovers pole parameters and angle with `circle_point(p, θ) ≡ q` for a
/// point of the polar set of `e⁵∧e⁶`.
pub fn invert_circle_point(q: &Cp3Point) -> Result<(PolarPairParams, f64)> {
    let imbalance = polar_imbalance(q);
    if !(imbalance.abs() < 1e-7) {
        return Err(TwistorError::ParamDomain {
            residual: imbalance.abs(),
        });
    }
    let u = q.coords();
    let plus_norm = (u[0].norm_sqr() + u[3].norm_sqr()).sqrt();
    let minus_norm = (u[1].norm_sqr() + u[2].norm_sqr()).sqrt();
    let (p0, p3) = (u[0] / plus_norm, u[3] / plus_norm);
    let (m1, m2) = (u[1] / minus_norm, u[2] / minus_norm);

    let (plus, plus_phase) = pole_params(p0, p3, -1.0);
    let (minus, minus_phase) = pole_params(m1, m2, 1.0);
    let p = PolarPairParams::new(plus, minus)?;
    Ok((p, (plus_phase - minus_phase).rem_euclid(std::f64::consts::TAU)))
}

/// Pole `[a, b]` on its edge, with `a = √((r+1)/2)` real and
/// `b = (σu + ix)/√(2(r+1))`. Returns `(r, x, u)` and the phase removed.
fn pole_params(a: Complex64, b: Complex64, sigma: f64) -> ([f64; 3], f64) {
    let r = (2.0 * a.norm_sqr() - 1.0).clamp(-1.0, 1.0);
    if r + 1.0 < DEGENERATE_TOL {
        return ([-1.0, 0.0, 0.0], b.arg());
    }
    let phase = a.arg();
    let w = b * Complex64::from_polar(1.0, -phase) * (2.0 * (r + 1.0)).sqrt();
    ([r, w.im, sigma * w.re], phase)
}
