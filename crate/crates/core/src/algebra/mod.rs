//! Pointwise G2 linear algebra on ℝ⁷ = Im 𝕆.

pub mod kform;
pub mod linalg;
pub mod metric;
pub mod octonion;
pub mod vector;

use thiserror::Error;

use crate::scalar::Scalar;
use kform::{mask_indices, masks, KForm};
use octonion::{oct_mul, Octonion};
use vector::Vector7;

pub use kform::{phi0, psi0};
pub use metric::{hodge_star, metric_from_three_form, FormMetric};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("form degree {0} exceeds 7")]
    DegreeOverflow(usize),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("expected {expected} coefficients, found {found}")]
    CoefficientCount { expected: usize, found: usize },
    #[error("basis index {0} out of range 1..=7")]
    IndexOutOfRange(usize),
    #[error("interior product of a 0-form")]
    InteriorOfScalar,
    #[error("not a definite G2 3-form: {0}")]
    NotDefinite(String),
    #[error("volume factor is not an exact ninth root in this field")]
    InexactRoot,
}

/// `u × v = Im(v̄ · u)`.
pub fn cross<S: Scalar>(u: &Vector7<S>, v: &Vector7<S>) -> Vector7<S> {
    let p = Octonion::from_imaginary(v).conj();
    oct_mul(&p, &Octonion::from_imaginary(u)).im()
}

/// `φ₀(u, v, w) = ⟨u × v, w⟩`.
pub fn phi0_eval<S: Scalar>(u: &Vector7<S>, v: &Vector7<S>, w: &Vector7<S>) -> S {
    cross(u, v).dot(w)
}

/// `[u, v, w] = ½((uv)w − u(vw))`, an imaginary octonion for imaginary inputs.
pub fn associator<S: Scalar>(u: &Vector7<S>, v: &Vector7<S>, w: &Vector7<S>) -> Vector7<S> {
    let (ou, ov, ow) = (Octonion::from_imaginary(u), Octonion::from_imaginary(v), Octonion::from_imaginary(w));
    let left = oct_mul(&oct_mul(&ou, &ov), &ow);
    let right = oct_mul(&ou, &oct_mul(&ov, &ow));
    (left - right).im().scale(&S::half())
}

/// `χ₀(u, v, w) = −u×(v×w) − ⟨u,v⟩w + ⟨u,w⟩v`.
pub fn chi_eval<S: Scalar>(u: &Vector7<S>, v: &Vector7<S>, w: &Vector7<S>) -> Vector7<S> {
    -cross(u, &cross(v, w)) - w.scale(&u.dot(v)) + v.scale(&u.dot(w))
}

/// `ψ₀(u, v, w, x) = ⟨χ₀(u, v, w), x⟩`, which agrees with the expansion [`psi0`].
pub fn psi0_eval<S: Scalar>(u: &Vector7<S>, v: &Vector7<S>, w: &Vector7<S>, x: &Vector7<S>) -> S {
    chi_eval(u, v, w).dot(x)
}

/// A totally antisymmetric trilinear map `ℝ⁷×ℝ⁷×ℝ⁷ → ℝ⁷`, stored by its values on sorted basis triples.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorValued3Form<S: Scalar = f64> {
    values: Vec<Vector7<S>>,
}

impl<S: Scalar> VectorValued3Form<S> {
    /// Tabulate `f` on the 35 basis triples `e_i, e_j, e_k` with `i < j < k`.
    pub fn tabulate(f: impl Fn(&Vector7<S>, &Vector7<S>, &Vector7<S>) -> Vector7<S>) -> Self {
        let values = masks(3)
            .iter()
            .map(|&m| {
                let idx: Vec<usize> = mask_indices(m).collect();
                f(&Vector7::e(idx[0] + 1), &Vector7::e(idx[1] + 1), &Vector7::e(idx[2] + 1))
            })
            .collect();
        VectorValued3Form { values }
    }

    /// Value on `e_i, e_j, e_k` for 1-based `i < j < k`.
    pub fn on_basis(&self, i: usize, j: usize, k: usize) -> Result<&Vector7<S>, AlgebraError> {
        let mask = [i, j, k].iter().try_fold(0u8, |acc, &n| {
            if (1..=7).contains(&n) {
                Ok(acc | (1 << (n - 1)))
            } else {
                Err(AlgebraError::IndexOutOfRange(n))
            }
        })?;
        if !(i < j && j < k) {
            return Err(AlgebraError::DegreeMismatch { expected: 3, found: mask.count_ones() as usize });
        }
        Ok(&self.values[kform::mask_position(mask)])
    }

    /// The scalar 3-form `⟨self(·,·,·), x⟩`.
    pub fn component(&self, x: &Vector7<S>) -> KForm<S> {
        KForm::from_coefficients(3, self.values.iter().map(|v| v.dot(x)).collect()).expect("35 coefficients")
    }

    pub fn eval(&self, u: &Vector7<S>, v: &Vector7<S>, w: &Vector7<S>) -> Vector7<S> {
        let mut out = Vector7::zero();
        for n in 1..=7 {
            out.0[n - 1] = self.component(&Vector7::e(n)).eval(&[u.clone(), v.clone(), w.clone()]).expect("degree 3");
        }
        out
    }
}

/// The `Im 𝕆`-valued 3-form `χ₀`.
pub fn chi0<S: Scalar>() -> VectorValued3Form<S> {
    VectorValued3Form::tabulate(chi_eval)
}

#[cfg(test)]
mod tests {
    use super::octonion::{doubling_table, E7_DOUBLING_SIGN};
    use super::*;
    use crate::scalar::{ratio, Rational};

    fn e(n: usize) -> Vector7<Rational> {
        Vector7::e(n)
    }

    fn phi_from_table(table: &octonion::MulTable, a: usize, b: usize, c: usize) -> i8 {
        let (idx, s) = table[a][b];
        if idx == c {
            s
        } else {
            0
        }
    }

    #[test]
    fn doubling_sign_is_the_unique_match_with_standard_form() {
        let phi: KForm<Rational> = phi0();
        let matches: Vec<i8> = [1i8, -1]
            .into_iter()
            .filter(|&sign| {
                let t = doubling_table(sign);
                masks(3).iter().all(|&m| {
                    let idx: Vec<usize> = mask_indices(m).map(|i| i + 1).collect();
                    let expected = phi.coeff(&idx).unwrap();
                    Rational::from_i64(phi_from_table(&t, idx[0], idx[1], idx[2]) as i64) == expected
                })
            })
            .collect();
        assert_eq!(matches, vec![E7_DOUBLING_SIGN]);
    }

    #[test]
    fn cross_product_examples() {
        assert_eq!(cross(&e(1), &e(2)), e(3));
        assert_eq!(cross(&e(1), &e(4)), e(5));
        assert!(cross(&e(6), &e(6)).is_zero());
    }

    #[test]
    fn phi_eval_matches_form_on_all_basis_triples() {
        let phi: KForm<Rational> = phi0();
        for i in 1..=7 {
            for j in 1..=7 {
                for k in 1..=7 {
                    assert_eq!(phi0_eval(&e(i), &e(j), &e(k)), phi.eval(&[e(i), e(j), e(k)]).unwrap(), "({i},{j},{k})");
                }
            }
        }
        assert_eq!(phi0_eval(&e(3), &e(4), &e(7)), ratio(-1, 1));
    }

    #[test]
    fn associator_examples() {
        assert!(associator(&e(1), &e(2), &e(3)).is_zero());
        assert!(associator(&e(5), &e(5), &e(2)).is_zero());
        assert_eq!(associator(&e(1), &e(4), &e(6)), chi_eval(&e(1), &e(4), &e(6)));
        assert!(!associator(&e(1), &e(4), &e(6)).is_zero());
    }

    #[test]
    fn chi_equals_associator_on_all_basis_triples() {
        for i in 1..=7 {
            for j in 1..=7 {
                for k in 1..=7 {
                    assert_eq!(chi_eval(&e(i), &e(j), &e(k)), associator(&e(i), &e(j), &e(k)));
                }
            }
        }
    }

    #[test]
    fn psi_eval_matches_expansion_exactly() {
        let psi: KForm<Rational> = psi0();
        for &m in masks(4) {
            let idx: Vec<usize> = mask_indices(m).map(|i| i + 1).collect();
            let args: Vec<Vector7<Rational>> = idx.iter().map(|&n| e(n)).collect();
            assert_eq!(psi0_eval(&args[0], &args[1], &args[2], &args[3]), psi.coeff(&idx).unwrap(), "{idx:?}");
        }
        assert_eq!(psi0_eval(&e(4), &e(5), &e(6), &e(7)), ratio(1, 1));
        assert_eq!(psi0_eval(&e(2), &e(3), &e(4), &e(5)), ratio(1, 1));
        assert_eq!(psi0_eval(&e(1), &e(2), &e(3), &e(4)), ratio(0, 1));
    }

    #[test]
    fn half_associator_pairing_is_minus_half_psi() {
        let psi: KForm<Rational> = psi0();
        for &m in masks(4) {
            let idx: Vec<usize> = mask_indices(m).map(|i| i + 1).collect();
            let [a, b, c, d] = [e(idx[0]), e(idx[1]), e(idx[2]), e(idx[3])];
            let literal = a.dot(&associator(&b, &c, &d)) * ratio(1, 2);
            assert_eq!(literal, psi.coeff(&idx).unwrap() * ratio(-1, 2));
        }
    }

    #[test]
    fn chi_table_round_trips() {
        let table = chi0::<Rational>();
        let u = Vector7([ratio(1, 2), ratio(0, 1), ratio(-1, 1), ratio(2, 1), ratio(0, 1), ratio(1, 3), ratio(1, 1)]);
        let v = Vector7([ratio(0, 1), ratio(1, 1), ratio(1, 1), ratio(0, 1), ratio(-3, 1), ratio(0, 1), ratio(2, 1)]);
        let w = Vector7([ratio(1, 1), ratio(1, 1), ratio(0, 1), ratio(0, 1), ratio(1, 1), ratio(-1, 1), ratio(0, 1)]);
        assert_eq!(table.eval(&u, &v, &w), chi_eval(&u, &v, &w));
        assert_eq!(table.on_basis(1, 2, 3).unwrap(), &Vector7::zero());
        assert!(table.on_basis(2, 1, 3).is_err());
    }
}
