use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// A vector of ℝ⁷ ≅ Im 𝕆 in the coordinates of the standard G2 frame `e₁,…,e₇`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Serialize", deserialize = "S: Deserialize<'de>"))]
#[serde(into = "Vec<S>", try_from = "Vec<S>")]
pub struct Vector7<S: Clone = f64>(pub [S; 7]);

impl<S: Clone> From<Vector7<S>> for Vec<S> {
    fn from(v: Vector7<S>) -> Self {
        v.0.to_vec()
    }
}

impl<S: Clone> TryFrom<Vec<S>> for Vector7<S> {
    type Error = String;

    fn try_from(v: Vec<S>) -> Result<Self, Self::Error> {
        let n = v.len();
        <[S; 7]>::try_from(v).map(Vector7).map_err(|_| format!("expected 7 coordinates, got {n}"))
    }
}

impl<S: Scalar> Vector7<S> {
    pub fn zero() -> Self {
        Vector7(std::array::from_fn(|_| S::zero()))
    }

    /// Basis vector `e_n`, `n` in `1..=7`.
    pub fn e(n: usize) -> Self {
        assert!((1..=7).contains(&n), "basis index {n} out of range 1..=7");
        let mut v = Self::zero();
        v.0[n - 1] = S::one();
        v
    }

    pub fn dot(&self, other: &Self) -> S {
        self.0.iter().zip(other.0.iter()).fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn norm_squared(&self) -> S {
        self.dot(self)
    }

    pub fn scale(&self, s: &S) -> Self {
        Vector7(std::array::from_fn(|i| self.0[i].clone() * s.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn to_f64(&self) -> Vector7<f64> {
        Vector7(std::array::from_fn(|i| self.0[i].to_f64()))
    }
}

impl Vector7<f64> {
    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// `self / |self|`, or `None` for vectors shorter than `eps`.
    pub fn normalized(&self, eps: f64) -> Option<Self> {
        let n = self.norm();
        (n > eps).then(|| self.scale(&(1.0 / n)))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Component of `self` orthogonal to the orthonormal family `basis`.
    pub fn reject_from(&self, basis: &[Vector7]) -> Self {
        basis.iter().fold(*self, |acc, b| acc - b.scale(&acc.dot(b)))
    }
}

impl<S: Clone> Index<usize> for Vector7<S> {
    type Output = S;
    fn index(&self, i: usize) -> &S {
        &self.0[i]
    }
}

impl<S: Clone> IndexMut<usize> for Vector7<S> {
    fn index_mut(&mut self, i: usize) -> &mut S {
        &mut self.0[i]
    }
}

impl<S: Scalar> Add for Vector7<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let [a0, a1, a2, a3, a4, a5, a6] = self.0;
        let [b0, b1, b2, b3, b4, b5, b6] = rhs.0;
        Vector7([a0 + b0, a1 + b1, a2 + b2, a3 + b3, a4 + b4, a5 + b5, a6 + b6])
    }
}

impl<S: Scalar> Sub for Vector7<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<S: Scalar> Neg for Vector7<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Vector7(self.0.map(|x| -x))
    }
}

impl Mul<f64> for Vector7<f64> {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(&rhs)
    }
}

impl Mul<Vector7<f64>> for f64 {
    type Output = Vector7<f64>;
    fn mul(self, rhs: Vector7<f64>) -> Vector7<f64> {
        rhs.scale(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_vectors_are_orthonormal() {
        for i in 1..=7 {
            for j in 1..=7 {
                let d: f64 = Vector7::e(i).dot(&Vector7::e(j));
                assert_eq!(d, if i == j { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn json_shape_is_a_flat_array() {
        let v: Vector7 = Vector7::e(3) * 2.0;
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, "[0.0,0.0,2.0,0.0,0.0,0.0,0.0]");
        assert!(serde_json::from_str::<Vector7>("[1,2,3]").is_err());
    }
}
