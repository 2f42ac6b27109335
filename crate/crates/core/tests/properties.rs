use approx::assert_relative_eq;
use proptest::prelude::*;
use twistor_core::acs::{
    ank_reference, block_diag, blocks, fundamental_form, haar_rotation, random_acs, seeded_rng,
    acs_from_form,
};
use twistor_core::cp3::{acs_to_cp3, cp3_to_acs};
use twistor_core::geometry::{circle_point, e56, polar_contains, PolarPairParams};
use twistor_core::nearly_kaehler::{is_ank, nk_defect, DEFAULT_ANK_TOL};
use twistor_core::nijenhuis::{closed_form_norm, kappa, max_norm, nijenhuis, nijenhuis_norm};
use twistor_core::AlgebraVector;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn norm_follows_the_block_law(seed in any::<u64>()) {
        let acs = random_acs(seed);
        let n = nijenhuis_norm(&acs);
        prop_assert!((n * n / kappa() - (1.0 - blocks(&acs).c_norm_sq())).abs() < 1e-9);
        prop_assert!((n - closed_form_norm(&blocks(&acs)).unwrap()).abs() < 1e-6);
        prop_assert!(n <= max_norm() * (1.0 + 1e-12));
    }

    #[test]
    fn tensor_is_antisymmetric(seed in any::<u64>(), i in 0usize..6, j in 0usize..6) {
        let n = nijenhuis(&random_acs(seed));
        for k in 0..6 {
            prop_assert_eq!(n.get(k, i, j), -n.get(k, j, i));
        }
    }

    #[test]
    fn blockwise_conjugation_keeps_norm_and_defect(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let acs = random_acs(seed.wrapping_add(1));
        let o1 = haar_rotation::<3, _>(&mut rng);
        let o2 = haar_rotation::<3, _>(&mut rng);
        let moved = acs.conjugate(&block_diag(&o1, &o2)).unwrap();
        assert_relative_eq!(nijenhuis_norm(&moved), nijenhuis_norm(&acs), epsilon = 1e-9);
        assert_relative_eq!(nk_defect(&moved), nk_defect(&acs), epsilon = 1e-9);
    }

    #[test]
    fn projective_round_trip(seed in any::<u64>()) {
        let acs = random_acs(seed);
        let back = cp3_to_acs(&acs_to_cp3(&acs).unwrap()).unwrap();
        prop_assert!((back.matrix() - acs.matrix()).amax() < 1e-8);
    }

    #[test]
    fn fundamental_form_round_trip(seed in any::<u64>()) {
        let acs = random_acs(seed);
        let back = acs_from_form(&fundamental_form(&acs)).unwrap();
        prop_assert_eq!(back, acs);
    }

    #[test]
    fn fundamental_form_is_compatible(seed in any::<u64>(), x in prop::array::uniform6(-1.0f64..1.0), y in prop::array::uniform6(-1.0f64..1.0)) {
        let acs = random_acs(seed);
        let w = fundamental_form(&acs);
        let (x, y) = (AlgebraVector::new(x), AlgebraVector::new(y));
        let jx = AlgebraVector(acs.matrix() * x.0);
        let jy = AlgebraVector(acs.matrix() * y.0);
        let eval = |a: &AlgebraVector, b: &AlgebraVector| twistor_core::exterior::eval_form(&w, a, b);
        prop_assert!((eval(&jx, &jy) - eval(&x, &y)).abs() < 1e-12);
        prop_assert!((eval(&x, &y) - jx.0.dot(&y.0)).abs() < 1e-12);
    }

    #[test]
    fn circle_points_are_polar(plus in prop::array::uniform3(-1.0f64..1.0), minus in prop::array::uniform3(-1.0f64..1.0), theta in 0.0f64..6.3) {
        let unit = |v: [f64; 3]| {
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.map(|x| x / n)
        };
        prop_assume!(plus.iter().any(|x| x.abs() > 1e-3) && minus.iter().any(|x| x.abs() > 1e-3));
        let p = PolarPairParams::new(unit(plus), unit(minus)).unwrap();
        let w = fundamental_form(&cp3_to_acs(&circle_point(&p, theta)).unwrap());
        prop_assert!(polar_contains(&e56(), &w).unwrap());
    }
}

#[test]
fn ank_reference_attains_the_calibrated_maximum() {
    assert_eq!(nijenhuis_norm(&ank_reference()), max_norm());
    assert_relative_eq!(kappa(), 48.0, epsilon = 1e-12);
    assert!(is_ank(&ank_reference(), DEFAULT_ANK_TOL));
}
