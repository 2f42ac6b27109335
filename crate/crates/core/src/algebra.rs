//! The Lie algebra su(2) ⊕ su(2) with its bracket, the working metric and
//! the Levi-Civita connection of the bi-invariant metric on left-invariant
//! fields.
//!
//! The metric makes `e₁…e₆` orthonormal. The Killing–Cartan form of the
//! algebra is twice this metric (up to its sign on compact algebras), and a
//! global rescale changes no statement made in this crate.

use crate::exterior::AlgebraVector;
use nalgebra::Vector6;

/// Nonzero structure constants `c^k_ij` with `i < j`, as `(i, j, k, value)`.
const NONZERO: [(usize, usize, usize, f64); 6] = [
    (0, 1, 2, 1.0),
    (0, 2, 1, -1.0),
    (1, 2, 0, 1.0),
    (3, 4, 5, 1.0),
    (3, 5, 4, -1.0),
    (4, 5, 3, 1.0),
];

/// Dense table of structure constants, `[e_i, e_j] = Σ_k c^k_ij e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    table: [[[f64; 6]; 6]; 6],
}

impl StructureConstants {
    pub fn su2_su2() -> Self {
        let mut table = [[[0.0; 6]; 6]; 6];
        for &(i, j, k, c) in NONZERO.iter() {
            table[i][j][k] = c;
            table[j][i][k] = -c;
        }
        Self { table }
    }

    /// `c^k_ij`.
    pub fn get(&self, k: usize, i: usize, j: usize) -> f64 {
        self.table[i][j][k]
    }

    pub fn bracket(&self, x: &AlgebraVector, y: &AlgebraVector) -> AlgebraVector {
        let mut out = Vector6::zeros();
        for i in 0..6 {
            for j in 0..6 {
                let xy = x.0[i] * y.0[j];
                if xy == 0.0 {
                    continue;
                }
                for k in 0..6 {
                    out[k] += xy * self.table[i][j][k];
                }
            }
        }
        AlgebraVector(out)
    }

    /// Largest Jacobi residual over all basis triples.
    pub fn jacobi_residual(&self) -> f64 {
        let e = AlgebraVector::basis;
        let mut worst: f64 = 0.0;
        for a in 0..6 {
            for b in 0..6 {
                for c in 0..6 {
                    let (x, y, z) = (e(a), e(b), e(c));
                    let s = self.bracket(&self.bracket(&x, &y), &z)
                        + self.bracket(&self.bracket(&y, &z), &x)
                        + self.bracket(&self.bracket(&z, &x), &y);
                    worst = worst.max(s.0.amax());
                }
            }
        }
        worst
    }
}

/// `[X, Y]`. Each factor carries the cross product of ℝ³, the factors commute.
pub fn bracket(x: &AlgebraVector, y: &AlgebraVector) -> AlgebraVector {
    let mut out = Vector6::zeros();
    for &(i, j, k, c) in NONZERO.iter() {
        out[k] += c * (x.0[i] * y.0[j] - x.0[j] * y.0[i]);
    }
    AlgebraVector(out)
}

/// Working metric `g(X, Y) = Σ XᵢYᵢ`.
pub fn metric(x: &AlgebraVector, y: &AlgebraVector) -> f64 {
    x.0.dot(&y.0)
}

/// `∇_X Y = ½[X, Y]` for left-invariant fields of a bi-invariant metric.
pub fn nabla(x: &AlgebraVector, y: &AlgebraVector) -> AlgebraVector {
    0.5 * bracket(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(i: usize) -> AlgebraVector {
        AlgebraVector::basis(i)
    }

    /// Koszul formula for left-invariant fields:
    /// 2g(∇_X Y, Z) = g([X,Y],Z) − g([Y,Z],X) + g([Z,X],Y).
    fn koszul(x: &AlgebraVector, y: &AlgebraVector) -> AlgebraVector {
        let mut out = AlgebraVector::zero();
        for k in 0..6 {
            let z = e(k);
            let v = metric(&bracket(x, y), &z) - metric(&bracket(y, &z), x)
                + metric(&bracket(&z, x), y);
            out.0[k] = 0.5 * v;
        }
        out
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket(&e(0), &e(1)), e(2));
        assert_eq!(bracket(&e(3), &e(5)), -e(4));
        assert_eq!(bracket(&e(1), &e(4)), AlgebraVector::zero());
    }

    #[test]
    fn table_matches_sparse_bracket() {
        let sc = StructureConstants::su2_su2();
        assert_eq!(sc.get(2, 0, 1), 1.0);
        assert_eq!(sc.get(1, 0, 2), -1.0);
        assert_eq!(sc.get(0, 1, 2), 1.0);
        assert_eq!(sc.get(5, 3, 4), 1.0);
        assert_eq!(sc.get(4, 3, 5), -1.0);
        assert_eq!(sc.get(3, 4, 5), 1.0);
        for i in 0..3 {
            for j in 3..6 {
                for k in 0..6 {
                    assert_eq!(sc.get(k, i, j), 0.0);
                }
            }
        }
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(sc.bracket(&e(i), &e(j)), bracket(&e(i), &e(j)));
            }
        }
        assert!(sc.jacobi_residual() < 1e-12);
    }

    #[test]
    fn metric_examples() {
        assert_eq!(metric(&e(0), &e(0)), 1.0);
        assert_eq!(metric(&e(0), &e(3)), 0.0);
        assert_eq!(metric(&(e(0) + e(1)), &(e(0) - e(1))), 0.0);
    }

    #[test]
    fn nabla_examples_against_koszul() {
        assert_eq!(nabla(&e(0), &e(1)), 0.5 * e(2));
        assert_eq!(koszul(&e(0), &e(1)), 0.5 * e(2));
        assert_eq!(nabla(&e(0), &e(0)), AlgebraVector::zero());
        assert_eq!(nabla(&e(0), &e(3)), AlgebraVector::zero());
        for i in 0..6 {
            for j in 0..6 {
                assert!((nabla(&e(i), &e(j)).0 - koszul(&e(i), &e(j)).0).amax() < 1e-15);
            }
        }
    }

    fn vec6() -> impl Strategy<Value = AlgebraVector> {
        prop::array::uniform6(-2.0f64..2.0).prop_map(AlgebraVector::new)
    }

    proptest! {
        #[test]
        fn jacobi(x in vec6(), y in vec6(), z in vec6()) {
            let s = bracket(&bracket(&x, &y), &z) + bracket(&bracket(&y, &z), &x) + bracket(&bracket(&z, &x), &y);
            prop_assert!(s.0.amax() < 1e-12);
        }

        #[test]
        fn ad_invariance_and_metric_compatibility(x in vec6(), y in vec6(), z in vec6()) {
            let ad = metric(&bracket(&x, &y), &z) + metric(&y, &bracket(&x, &z));
            prop_assert!(ad.abs() < 1e-12);
            let mc = metric(&nabla(&x, &y), &z) + metric(&y, &nabla(&x, &z));
            prop_assert!(mc.abs() < 1e-12);
        }

        #[test]
        fn koszul_agrees(x in vec6(), y in vec6()) {
            prop_assert!((nabla(&x, &y).0 - koszul(&x, &y).0).amax() < 1e-12);
        }
    }
}
