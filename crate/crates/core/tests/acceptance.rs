//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::f64::consts::{PI, TAU};
use std::process::Command;
use std::time::{Duration, Instant};
use twistor_core::acs::{
    ank_reference, blocks, constraint_residuals, haar_rotation, hopf, random_acs, seeded_rng,
    vertex,
};
use twistor_core::cp3::{acs_to_cp3, cp3_to_acs, Cp3Point};
use twistor_core::geometry::{
    ank_circle_point, compare_branch, invert_circle_point, edge_form_closed, lemma1_form,
    seam_gap, PolarPairParams, Reading,
};
use twistor_core::nearly_kaehler::{
    ank_form, basis_diagonal_residual, is_ank, nabla_omega, nk_defect, AnkForm, DEFAULT_ANK_TOL,
    PRINTED_MIXED_VALUE,
};
use twistor_core::nijenhuis::{
    cofactor_checks, kappa, max_norm, nijenhuis_norm, statement1_structure, PRINTED_MAX_NORM,
};
use twistor_core::search::{maximize, DEFAULT_MAX_ITERS};
use twistor_core::AlgebraVector;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn unit3(rng: &mut rand_chacha::ChaCha8Rng) -> [f64; 3] {
    let o = haar_rotation::<3, _>(rng);
    [o[(0, 0)], o[(1, 0)], o[(2, 0)]]
}

fn proportionality() -> Outcome {
    let k = kappa();
    let worst = (0..1000u64)
        .map(|s| {
            let acs = random_acs(s);
            let n = nijenhuis_norm(&acs);
            (n * n / k - (1.0 - blocks(&acs).c_norm_sq())).abs()
        })
        .fold(0.0, f64::max);
    outcome(
        worst < 1e-9,
        format!(
            "max residual {worst:.3e}; calibrated sqrt(kappa) {:.10} vs literature {:.10}",
            max_norm(),
            PRINTED_MAX_NORM
        ),
    )
}

fn maximum() -> Outcome {
    let report = match maximize(1, 20, DEFAULT_MAX_ITERS) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let ratio = report.best_value / max_norm();
    let b = blocks(&report.best_acs);
    let (a, c) = (b.a.norm(), b.c.norm());
    outcome(
        ratio >= 1.0 - 1e-4 && a < 1e-3 && c < 1e-3,
        format!("ratio {ratio:.12}, |A| {a:.3e}, |C| {c:.3e}, {} iterations", report.iterations),
    )
}

fn integrable_set() -> Outcome {
    let mut rng = seeded_rng(3);
    let (mut norm, mut c_dev) = (0.0f64, 0.0f64);
    for _ in 0..200 {
        let o1 = haar_rotation::<3, _>(&mut rng);
        let o2 = haar_rotation::<3, _>(&mut rng);
        let acs = statement1_structure(&o1, &o2).expect("rotations");
        norm = norm.max(nijenhuis_norm(&acs));
        c_dev = c_dev.max((blocks(&acs).c_norm_sq().sqrt() - 1.0).abs());
    }
    outcome(
        norm < 1e-9 && c_dev < 1e-9,
        format!("max |N| {norm:.3e}, max ||c| - 1| {c_dev:.3e}"),
    )
}

fn projective_fixtures() -> Outcome {
    let h = Cp3Point::from_real([1.0, 0.0, 0.0, -1.0]).unwrap();
    let n = Cp3Point::from_real([1.0, 1.0, -1.0, 1.0]).unwrap();
    let rh = acs_to_cp3(&hopf()).unwrap().projective_residual(&h);
    let rn = acs_to_cp3(&ank_reference()).unwrap().projective_residual(&n);
    let mut vertices = 0.0f64;
    for k in 0..4 {
        let point = acs_to_cp3(&vertex(k)).unwrap();
        for (a, b) in point.coords().iter().zip(Cp3Point::vertex(k).coords()) {
            vertices = vertices.max((a - b).norm());
        }
        let back = cp3_to_acs(&Cp3Point::vertex(k)).unwrap();
        vertices = vertices.max((back.matrix() - vertex(k).matrix()).amax());
    }
    outcome(
        rh < 1e-9 && rn < 1e-9 && vertices <= 1e-15,
        format!("hopf residual {rh:.3e}, ank residual {rn:.3e}, vertex round trips {vertices:.3e}"),
    )
}

fn edge_form() -> Outcome {
    let mut rng = seeded_rng(5);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let [s, c1, c2] = unit3(&mut rng);
        let closed = edge_form_closed(2.0 * s * s - 1.0, 2.0 * s * c2, -2.0 * s * c1);
        worst = worst.max(lemma1_form(s, c1, c2).unwrap().max_abs_diff(&closed));
    }
    outcome(worst < 1e-9, format!("max coefficient residual {worst:.3e}"))
}

fn circle_branches() -> Outcome {
    let mut rng = seeded_rng(6);
    let both = PolarPairParams::new([-1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]).unwrap();
    let degenerate = (0..16)
        .map(|k| compare_branch(&both, k as f64 * PI / 8.0, Reading::Literal).max())
        .fold(0.0, f64::max);
    let (mut generic, mut mixed) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let p = PolarPairParams::new(unit3(&mut rng), unit3(&mut rng)).unwrap();
        generic = generic.max(compare_branch(&p, rng.random_range(0.0..TAU), Reading::Corrected).max());
        let v = unit3(&mut rng);
        let theta = rng.random_range(0.0..TAU);
        let md = PolarPairParams::new(v, [-1.0, 0.0, 0.0]).unwrap();
        let pd = PolarPairParams::new([-1.0, 0.0, 0.0], v).unwrap();
        mixed = mixed
            .max(compare_branch(&md, theta, Reading::Corrected).max())
            .max(compare_branch(&pd, theta, Reading::Corrected).max());
    }
    let worst = degenerate.max(generic).max(mixed);
    outcome(
        worst < 1e-9 && !worst.is_nan(),
        format!("degenerate {degenerate:.3e}, generic {generic:.3e}, mixed {mixed:.3e}"),
    )
}

fn circle_seam() -> Outcome {
    let mut rng = seeded_rng(7);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let gap = seam_gap(unit3(&mut rng), rng.random_range(0.0..TAU), 1e-4).unwrap();
        worst = worst.max(gap);
    }
    outcome(worst < 1e-6, format!("max gap at |r+1| = 1e-4: {worst:.3e} (required < 1e-6)"))
}

fn ank_circles() -> Outcome {
    let mut forward = 0.0f64;
    let mut all_ank = true;
    for i in 0..20 {
        let polar = PI * (i as f64 + 0.5) / 20.0;
        for j in 0..20 {
            let azimuth = TAU * j as f64 / 20.0;
            let (r, x, u) = (polar.cos(), polar.sin() * azimuth.cos(), polar.sin() * azimuth.sin());
            for t in 0..8 {
                let acs = ank_circle_point(r, x, u, TAU * t as f64 / 8.0).unwrap();
                let b = blocks(&acs);
                forward = forward.max(b.a.norm()).max(b.c.norm());
                all_ank &= is_ank(&acs, DEFAULT_ANK_TOL);
            }
        }
    }
    let mut rng = seeded_rng(8);
    let mut reverse = 0.0f64;
    for _ in 0..100 {
        let acs = ank_form(&AnkForm::from_matrix(&haar_rotation::<3, _>(&mut rng))).unwrap();
        let q = acs_to_cp3(&acs).unwrap();
        let distance = match invert_circle_point(&q) {
            Ok((p, theta)) => {
                let back = ank_circle_point(p.r_plus, p.x_plus, p.u_plus, theta).unwrap();
                acs_to_cp3(&back).unwrap().projective_distance(&q)
            }
            Err(_) => f64::INFINITY,
        };
        reverse = reverse.max(distance);
    }
    outcome(
        all_ank && forward < 1e-9 && reverse < 1e-6,
        format!("grid max(|A|,|C|) {forward:.3e}, inversion max distance {reverse:.3e}"),
    )
}

fn nearly_kaehler() -> Outcome {
    let mut rng = seeded_rng(9);
    let floor = 0.5 * nk_defect(&ank_reference());
    let (mut diagonal, mut lowest) = (0.0f64, f64::INFINITY);
    for _ in 0..50 {
        let acs = ank_form(&AnkForm::from_matrix(&haar_rotation::<3, _>(&mut rng))).unwrap();
        diagonal = diagonal.max(basis_diagonal_residual(&acs));
        lowest = lowest.min(nk_defect(&acs));
    }
    let x = AlgebraVector::basis(1) + AlgebraVector::basis(3);
    let values: Vec<f64> = (0..6)
        .map(|k| nabla_omega(&ank_reference(), &x, &x, &AlgebraVector::basis(k)))
        .collect();
    outcome(
        diagonal < 1e-12 && lowest > floor,
        format!(
            "diagonal {diagonal:.3e}, min defect {lowest:.6} > floor {floor:.6}; mixed value at e1 {:.3} (literature {PRINTED_MIXED_VALUE}), at e3 {:.3}",
            values[0], values[2]
        ),
    )
}

fn constraints() -> Outcome {
    let (mut sixteen, mut chain) = (0.0f64, 0.0f64);
    for s in 0..1000u64 {
        let b = blocks(&random_acs(10_000 + s));
        sixteen = constraint_residuals(&b).iter().fold(sixteen, |a, r| a.max(r.abs()));
        chain = chain.max(cofactor_checks(&b).max());
    }
    outcome(
        sixteen < 1e-9 && chain < 1e-9,
        format!("block constraints {sixteen:.3e}, cofactor chain {chain:.3e}"),
    )
}

fn run_twice(args: &[&str]) -> Result<(), String> {
    let exe = env!("CARGO_BIN_EXE_twistor");
    let first = Command::new(exe).args(args).output().map_err(|e| e.to_string())?;
    let second = Command::new(exe).args(args).output().map_err(|e| e.to_string())?;
    if !first.status.success() {
        return Err(format!("{args:?} exited with {}", first.status));
    }
    if first.stdout != second.stdout || first.status != second.status {
        return Err(format!("{args:?} differs between runs"));
    }
    if first.stdout.is_empty() {
        return Err(format!("{args:?} produced no output"));
    }
    Ok(())
}

fn determinism() -> Outcome {
    let runs: [&[&str]; 5] = [
        &["verify", "--json", "--seed", "4"],
        &["verify", "--text", "--seed", "4"],
        &["sample", "--set", "ank", "--count", "200", "--seed", "11"],
        &["sample", "--set", "polar", "--count", "200", "--seed", "12"],
        &["optimize", "--direction", "max", "--restarts", "6", "--seed", "13", "--json"],
    ];
    let failures: Vec<String> = runs.iter().filter_map(|a| run_twice(a).err()).collect();
    outcome(
        failures.is_empty(),
        if failures.is_empty() {
            format!("{} commands byte-identical across two runs", runs.len())
        } else {
            failures.join("; ")
        },
    )
}

use rand::Rng;

/// Label, check and optional runtime limit.
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() {
    let criteria: [Criterion; 11] = [
        ("1 proportionality law", proportionality, Some(Duration::from_secs(5))),
        ("2 maximum by search", maximum, Some(Duration::from_secs(30))),
        ("3 integrable set", integrable_set, Some(Duration::from_secs(2))),
        ("4 projective fixtures", projective_fixtures, None),
        ("5 first edge closed form", edge_form, Some(Duration::from_secs(1))),
        ("6 circle branch formulas", circle_branches, None),
        ("6 branch seam continuity", circle_seam, None),
        ("7 ank circles, both inclusions", ank_circles, Some(Duration::from_secs(60))),
        ("8 nearly-Kaehler identities", nearly_kaehler, Some(Duration::from_secs(2))),
        ("9 block constraints and cofactor chain", constraints, Some(Duration::from_secs(5))),
        ("10 command determinism", determinism, None),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let mut result = run();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            if elapsed > limit {
                result.pass = false;
                result.detail += &format!("; runtime {elapsed:?} over {limit:?}");
            }
        }
        if !result.pass {
            failed += 1;
        }
        println!(
            "criterion {name}: {} ({:.3} s) {}",
            if result.pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            result.detail
        );
    }
    println!("acceptance: {} criteria checked, {failed} failed", criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
