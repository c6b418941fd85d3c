//! The metric and volume determined by a 3-form, and the Hodge star it induces.

use super::kform::{mask_indices, mask_position, masks, shuffle_is_odd, KForm, DIM};
use super::linalg::{determinant, inverse, is_positive_definite, Matrix};
use super::vector::Vector7;
use super::AlgebraError;
use crate::scalar::Scalar;

/// Gram matrix and signed volume factor recovered from a 3-form.
#[derive(Clone, Debug, PartialEq)]
pub struct FormMetric<S: Scalar = f64> {
    pub gram: Matrix<S>,
    /// `√det(gram)` with the sign of the orientation the form induces.
    pub vol: S,
}

/// The symmetric bilinear form `B_ij = [(e_i⌟φ)∧(e_j⌟φ)∧φ] / e^{1…7}`.
pub fn b_matrix<S: Scalar>(phi: &KForm<S>) -> Result<Matrix<S>, AlgebraError> {
    if phi.degree() != 3 {
        return Err(AlgebraError::DegreeMismatch { expected: 3, found: phi.degree() });
    }
    let contractions: Vec<KForm<S>> = (1..=DIM).map(|i| phi.interior(&Vector7::e(i))).collect::<Result<_, _>>()?;
    let mut b = vec![vec![S::zero(); DIM]; DIM];
    for i in 0..DIM {
        let left = contractions[i].wedge(&contractions[i])?;
        b[i][i] = left.wedge(phi)?.coefficients()[0].clone();
        for j in i + 1..DIM {
            let top = contractions[i].wedge(&contractions[j])?.wedge(phi)?;
            let c = top.coefficients()[0].clone();
            b[i][j] = c.clone();
            b[j][i] = c;
        }
    }
    Ok(b)
}

/// `vol = (det B / 6⁷)^{1/9}` (real root, sign kept) and `gram = B / (6 vol)`.
///
/// Over [`Rational`](crate::scalar::Rational) the root must be exact.
pub fn metric_from_three_form<S: Scalar>(phi: &KForm<S>) -> Result<FormMetric<S>, AlgebraError> {
    let b = b_matrix(phi)?;
    let det = determinant(&b);
    if det.is_zero() {
        return Err(AlgebraError::NotDefinite("det B = 0".into()));
    }
    let six = S::from_i64(6);
    let scaled = det / num_traits::pow(six.clone(), DIM);
    let vol = scaled.real_root(9).ok_or(AlgebraError::InexactRoot)?;
    let denom = six * vol.clone();
    let gram: Matrix<S> = b.into_iter().map(|row| row.into_iter().map(|x| x / denom.clone()).collect()).collect();
    if !is_positive_definite(&gram) {
        return Err(AlgebraError::NotDefinite("induced bilinear form is indefinite".into()));
    }
    Ok(FormMetric { gram, vol })
}

/// Determinant of the submatrix of `m` with rows `rows` and columns `cols`.
fn minor<S: Scalar>(m: &Matrix<S>, rows: u8, cols: u8) -> S {
    let sub: Matrix<S> = mask_indices(rows).map(|r| mask_indices(cols).map(|c| m[r][c].clone()).collect()).collect();
    if sub.is_empty() {
        S::one()
    } else {
        determinant(&sub)
    }
}

/// Hodge star of `a` for the metric `gram` with signed volume factor `vol`.
///
/// `(⋆a)_{Iᶜ} = vol · sgn(I, Iᶜ) · a^I`, indices raised with `gram⁻¹`.
pub fn hodge_star<S: Scalar>(a: &KForm<S>, gram: &Matrix<S>, vol: &S) -> Result<KForm<S>, AlgebraError> {
    if !is_positive_definite(gram) {
        return Err(AlgebraError::NotDefinite("gram is not positive definite".into()));
    }
    let ginv = inverse(gram).ok_or_else(|| AlgebraError::NotDefinite("gram is singular".into()))?;
    let k = a.degree();
    let full: u8 = (1u8 << DIM) - 1;
    let mut out = vec![S::zero(); masks(DIM - k).len()];
    for &upper in masks(k) {
        let raised = masks(k).iter().fold(S::zero(), |acc, &lower| {
            let c = a.coeff_by_mask(lower);
            if c.is_zero() {
                acc
            } else {
                acc + c.clone() * minor(&ginv, upper, lower)
            }
        });
        if raised.is_zero() {
            continue;
        }
        let comp = full & !upper;
        let term = raised * vol.clone();
        let pos = mask_position(comp);
        out[pos] = if shuffle_is_odd(upper, comp) { out[pos].clone() - term } else { out[pos].clone() + term };
    }
    KForm::from_coefficients(DIM - k, out)
}
