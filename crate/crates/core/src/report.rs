//! The verification report: one record per checked identity, with the
//! measured value next to the literature value where one exists.

use crate::acs::{
    ank_reference, blocks, constraint_residuals, fundamental_form, haar_rotation, hopf,
    random_acs_with, seeded_rng, vertex, Acs,
};
use crate::cp3::{acs_to_cp3, cp3_to_acs, Cp3Point};
use crate::error::Result;
use crate::exterior::AlgebraVector;
use crate::geometry::{
    ank_circle_point, circle_point, compare_branch, e56, invert_circle_point, edge_form_closed,
    lemma1_form, polar_contains, seam_gap, PolarPairParams, Reading,
};
use crate::nearly_kaehler::{
    ank_form, basis_diagonal_residual, is_ank, nabla_omega, nk_defect, AnkForm, DEFAULT_ANK_TOL,
    PRINTED_MIXED_VALUE,
};
use crate::nijenhuis::{
    cofactor_checks, kappa, max_norm, nijenhuis_norm, statement1_structure, PRINTED_MAX_NORM,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::{PI, TAU};
use std::fmt;

pub const CHECK_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Reported for comparison, not gating.
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Info => "info",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub residual: f64,
    pub paper_value: Option<f64>,
    pub measured_value: Option<f64>,
}

impl CheckRecord {
    fn gate(name: &str, residual: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            status: if residual < tol { Status::Pass } else { Status::Fail },
            residual,
            paper_value: None,
            measured_value: None,
        }
    }

    fn values(mut self, printed: f64, measured: f64) -> Self {
        self.paper_value = Some(printed);
        self.measured_value = Some(measured);
        self
    }
}

/// Structures the projective-point checks compare against their projective points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fixtures {
    pub hopf: Acs,
    pub ank: Acs,
}

impl Default for Fixtures {
    fn default() -> Self {
        Self {
            hopf: hopf(),
            ank: ank_reference(),
        }
    }
}

fn unit3(rng: &mut ChaCha8Rng) -> [f64; 3] {
    let o = haar_rotation::<3, _>(rng);
    [o[(0, 0)], o[(1, 0)], o[(2, 0)]]
}

fn random_pair(rng: &mut ChaCha8Rng) -> Result<PolarPairParams> {
    PolarPairParams::new(unit3(rng), unit3(rng))
}

fn random_ank(rng: &mut ChaCha8Rng) -> Result<Acs> {
    ank_form(&AnkForm::from_matrix(&haar_rotation::<3, _>(rng)))
}

fn worst(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, |a, b| if b.is_nan() { f64::NAN } else { a.max(b) })
}

/// Runs every check with the given fixtures and sampling seed.
pub fn run_checks_with(seed: u64, fixtures: &Fixtures) -> Result<Vec<CheckRecord>> {
    let mut rng = seeded_rng(seed);
    let mut out = Vec::new();

    let mut edge = 0.0f64;
    for _ in 0..100 {
        let [s, c1, c2] = unit3(&mut rng);
        let closed = edge_form_closed(2.0 * s * s - 1.0, 2.0 * s * c2, -2.0 * s * c1);
        edge = edge.max(lemma1_form(s, c1, c2)?.max_abs_diff(&closed));
    }
    out.push(CheckRecord::gate("edge_form_closed", edge, CHECK_TOL));

    let h = Cp3Point::from_real([1.0, 0.0, 0.0, -1.0])?;
    let n = Cp3Point::from_real([1.0, 1.0, -1.0, 1.0])?;
    out.push(CheckRecord::gate(
        "hopf_point",
        acs_to_cp3(&fixtures.hopf)?.projective_residual(&h),
        CHECK_TOL,
    ));
    out.push(CheckRecord::gate(
        "ank_point",
        acs_to_cp3(&fixtures.ank)?.projective_residual(&n),
        CHECK_TOL,
    ));
    let mut vertices = 0.0f64;
    for k in 0..4 {
        vertices = vertices.max(acs_to_cp3(&vertex(k))?.projective_residual(&Cp3Point::vertex(k)));
        vertices = vertices.max((cp3_to_acs(&Cp3Point::vertex(k))?.matrix() - vertex(k).matrix()).amax());
    }
    out.push(CheckRecord::gate("vertex_points", vertices, CHECK_TOL));

    let mut generic = 0.0f64;
    for _ in 0..100 {
        let p = random_pair(&mut rng)?;
        generic = generic.max(compare_branch(&p, rng.random_range(0.0..TAU), Reading::Literal).max());
    }
    out.push(CheckRecord::gate("circle_generic_branch", generic, CHECK_TOL));
    let both = PolarPairParams::new([-1.0, 0.0, 0.0], [-1.0, 0.0, 0.0])?;
    let both_res = worst((0..16).map(|k| compare_branch(&both, k as f64 * PI / 8.0, Reading::Literal).max()));
    out.push(CheckRecord::gate("circle_degenerate_branch", both_res, CHECK_TOL));
    let (mut minus, mut plus) = (0.0f64, 0.0f64);
    for _ in 0..50 {
        let v = unit3(&mut rng);
        let theta = rng.random_range(0.0..TAU);
        let md = PolarPairParams::new(v, [-1.0, 0.0, 0.0])?;
        let pd = PolarPairParams::new([-1.0, 0.0, 0.0], v)?;
        minus = worst([minus, compare_branch(&md, theta, Reading::Corrected).max()]);
        plus = worst([plus, compare_branch(&pd, theta, Reading::Corrected).max()]);
    }
    out.push(CheckRecord::gate("circle_minus_degenerate_branch", minus, CHECK_TOL));
    out.push(CheckRecord::gate("circle_plus_degenerate_branch", plus, CHECK_TOL));
    let gap = seam_gap([0.3, -0.4, 0.75f64.sqrt()], 0.7, 1e-4)?;
    out.push(CheckRecord {
        status: Status::Info,
        ..CheckRecord::gate("circle_seam_gap", gap, 1e-6)
    });

    let mut s1 = 0.0f64;
    for _ in 0..200 {
        let o1 = haar_rotation::<3, _>(&mut rng);
        let o2 = haar_rotation::<3, _>(&mut rng);
        let acs = statement1_structure(&o1, &o2)?;
        s1 = s1.max(nijenhuis_norm(&acs)).max((blocks(&acs).c_norm_sq().sqrt() - 1.0).abs());
    }
    out.push(CheckRecord::gate("rotated_hopf_integrable", s1, CHECK_TOL));

    let samples: Vec<Acs> = (0..1000).map(|_| random_acs_with(&mut rng)).collect();
    let k = kappa();
    let proportionality = worst(samples.iter().map(|a| {
        let n = nijenhuis_norm(a);
        (n * n / k - (1.0 - blocks(a).c_norm_sq())).abs()
    }));
    out.push(CheckRecord::gate("norm_proportionality", proportionality, CHECK_TOL));
    let overshoot = worst(samples.iter().map(|a| (nijenhuis_norm(a) - max_norm()).max(0.0)));
    let ank_gap = (nijenhuis_norm(&fixtures.ank) - max_norm()).abs();
    out.push(
        CheckRecord::gate("norm_maximum", overshoot.max(ank_gap), CHECK_TOL)
            .values(PRINTED_MAX_NORM, max_norm()),
    );
    let constraints = worst(samples.iter().flat_map(|a| constraint_residuals(&blocks(a)).map(f64::abs)));
    out.push(CheckRecord::gate("block_constraints", constraints, CHECK_TOL));
    let cofactor = worst(samples.iter().map(|a| cofactor_checks(&blocks(a)).max()));
    out.push(CheckRecord::gate("cofactor_chain", cofactor, CHECK_TOL));

    let mut forward = 0.0f64;
    let mut forward_ok = true;
    for i in 0..20 {
        let polar = PI * (i as f64 + 0.5) / 20.0;
        for j in 0..20 {
            let azimuth = TAU * j as f64 / 20.0;
            let (r, x, u) = (polar.cos(), polar.sin() * azimuth.cos(), polar.sin() * azimuth.sin());
            for t in 0..8 {
                let acs = ank_circle_point(r, x, u, TAU * t as f64 / 8.0)?;
                let b = blocks(&acs);
                forward = forward.max(b.a.norm()).max(b.c.norm());
                forward_ok &= is_ank(&acs, DEFAULT_ANK_TOL);
            }
        }
    }
    let mut rec = CheckRecord::gate("circles_are_ank", forward, CHECK_TOL);
    if !forward_ok {
        rec.status = Status::Fail;
    }
    out.push(rec);
    let mut reverse = 0.0f64;
    for _ in 0..100 {
        let q = acs_to_cp3(&random_ank(&mut rng)?)?;
        let (p, theta) = invert_circle_point(&q)?;
        let back = ank_circle_point(p.r_plus, p.x_plus, p.u_plus, theta)?;
        reverse = reverse.max(acs_to_cp3(&back)?.projective_distance(&q));
    }
    out.push(CheckRecord::gate("ank_on_circles", reverse, 1e-6));

    let mut polar_fail = 0usize;
    let mut polar_reverse = 0.0f64;
    for _ in 0..100 {
        let p = random_pair(&mut rng)?;
        let q = circle_point(&p, rng.random_range(0.0..TAU));
        let w = fundamental_form(&cp3_to_acs(&q)?);
        if !polar_contains(&e56(), &w)? {
            polar_fail += 1;
        }
        let (back, theta) = invert_circle_point(&q)?;
        polar_reverse = polar_reverse.max(circle_point(&back, theta).projective_distance(&q));
    }
    let mut rec = CheckRecord::gate("polar_set_is_union_of_circles", polar_reverse, 1e-6);
    if polar_fail > 0 {
        rec.status = Status::Fail;
    }
    out.push(rec);

    let anks: Vec<Acs> = (0..50).map(|_| random_ank(&mut rng)).collect::<Result<_>>()?;
    out.push(CheckRecord::gate(
        "nabla_basis_identity",
        worst(anks.iter().map(basis_diagonal_residual)),
        1e-12,
    ));
    let x = AlgebraVector::basis(1) + AlgebraVector::basis(3);
    let mixed: Vec<f64> = (0..6)
        .map(|k| nabla_omega(&fixtures.ank, &x, &x, &AlgebraVector::basis(k)))
        .collect();
    out.push(CheckRecord {
        status: Status::Info,
        ..CheckRecord::gate("nabla_mixed_value_at_e1", 0.0, 1.0).values(PRINTED_MIXED_VALUE, mixed[0])
    });
    let largest = mixed.iter().cloned().fold(0.0, |a: f64, b| if b.abs() > a.abs() { b } else { a });
    out.push(CheckRecord {
        name: "nabla_mixed_direction_nonzero".into(),
        status: if largest.abs() > 1e-6 { Status::Pass } else { Status::Fail },
        residual: largest.abs(),
        paper_value: Some(PRINTED_MIXED_VALUE),
        measured_value: Some(largest),
    });
    let floor = 0.5 * nk_defect(&ank_reference());
    let lowest = anks.iter().map(nk_defect).fold(f64::INFINITY, f64::min);
    out.push(CheckRecord {
        name: "nk_defect_floor".into(),
        status: if lowest > floor { Status::Pass } else { Status::Fail },
        residual: floor - lowest,
        paper_value: None,
        measured_value: Some(nk_defect(&ank_reference())),
    });
    out.push(CheckRecord {
        status: Status::Info,
        ..CheckRecord::gate("kappa_calibration", 0.0, 1.0).values(PRINTED_MAX_NORM * PRINTED_MAX_NORM, k)
    });

    Ok(out)
}

pub fn run_checks(seed: u64) -> Result<Vec<CheckRecord>> {
    run_checks_with(seed, &Fixtures::default())
}

pub fn all_pass(records: &[CheckRecord]) -> bool {
    records.iter().all(|r| r.status != Status::Fail)
}

pub fn render_json(records: &[CheckRecord]) -> String {
    serde_json::to_string_pretty(records).expect("records serialize")
}

pub fn render_text(records: &[CheckRecord]) -> String {
    let mut s = String::new();
    for r in records {
        s.push_str(&format!("{:<4} {:<32} residual {:.3e}", r.status, r.name, r.residual));
        if let (Some(p), Some(m)) = (r.paper_value, r.measured_value) {
            s.push_str(&format!("  literature {p:.6}  measured {m:.6}"));
        } else if let Some(m) = r.measured_value {
            s.push_str(&format!("  measured {m:.6}"));
        }
        s.push('\n');
    }
    let failed = records.iter().filter(|r| r.status == Status::Fail).count();
    s.push_str(&format!("{} checks, {} failed\n", records.len(), failed));
    s
}
