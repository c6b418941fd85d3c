//! Octonions as the Cayley–Dickson double of the quaternions.
//!
//! Coordinates are stored over `(𝟏, e₁, …, e₇)` where `e₁…e₇` is the G2
//! frame in which φ₀ takes its standard form
//! `e¹²³ + e¹∧(e⁴⁵+e⁶⁷) + e²∧(e⁴⁶−e⁵⁷) + e³∧(−e⁴⁷−e⁵⁶)`.
//! With pairs `(a, b)` of quaternions multiplied by
//! `(a,b)(c,d) = (ac − d̄b, da + bc̄)`, the frame is `e₁,e₂,e₃ = i,j,k`,
//! `e₄ = (0,1)`, `e₅ = (0,i)`, `e₆ = (0,j)` and `e₇ = −(0,k)`.

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use super::vector::Vector7;
use crate::scalar::Scalar;

/// Sign of the doubled `k` unit relative to `e₇`.
pub(crate) const E7_DOUBLING_SIGN: i8 = -1;

/// `TABLE[a][b] = (c, s)` means `basis_a · basis_b = s · basis_c`.
pub(crate) type MulTable = [[(usize, i8); 8]; 8];

fn quaternion_unit_product(a: usize, b: usize) -> (usize, i8) {
    // 0 = 1, 1 = i, 2 = j, 3 = k
    const T: [[(usize, i8); 4]; 4] = [
        [(0, 1), (1, 1), (2, 1), (3, 1)],
        [(1, 1), (0, -1), (3, 1), (2, -1)],
        [(2, 1), (3, -1), (0, -1), (1, 1)],
        [(3, 1), (2, 1), (1, -1), (0, -1)],
    ];
    T[a][b]
}

type Quat = [i32; 4];

fn qmul(x: &Quat, y: &Quat) -> Quat {
    let mut out = [0; 4];
    for a in 0..4 {
        for b in 0..4 {
            let (c, s) = quaternion_unit_product(a, b);
            out[c] += s as i32 * x[a] * y[b];
        }
    }
    out
}

fn qconj(x: &Quat) -> Quat {
    [x[0], -x[1], -x[2], -x[3]]
}

/// Multiplication table for the doubling rule with `e₇ = e7_sign · (0,k)`.
pub(crate) fn doubling_table(e7_sign: i8) -> MulTable {
    let frame_sign = |n: usize| if n == 7 { e7_sign as i32 } else { 1 };
    let pair = |n: usize| -> (Quat, Quat) {
        let mut a = [0; 4];
        let mut b = [0; 4];
        if n < 4 {
            a[n] = 1;
        } else {
            b[n - 4] = frame_sign(n);
        }
        (a, b)
    };
    let mut table = [[(0usize, 0i8); 8]; 8];
    for x in 0..8 {
        for y in 0..8 {
            let (a, b) = pair(x);
            let (c, d) = pair(y);
            let first = sub4(&qmul(&a, &c), &qmul(&qconj(&d), &b));
            let second = add4(&qmul(&d, &a), &qmul(&b, &qconj(&c)));
            let coords: [i32; 8] =
                std::array::from_fn(|n| if n < 4 { first[n] } else { second[n - 4] * frame_sign(n) });
            let (idx, val) = coords
                .iter()
                .enumerate()
                .find(|(_, v)| **v != 0)
                .map(|(i, v)| (i, *v))
                .expect("product of basis octonions is a signed basis octonion");
            table[x][y] = (idx, val as i8);
        }
    }
    table
}

fn add4(x: &Quat, y: &Quat) -> Quat {
    std::array::from_fn(|i| x[i] + y[i])
}

fn sub4(x: &Quat, y: &Quat) -> Quat {
    std::array::from_fn(|i| x[i] - y[i])
}

pub(crate) fn table() -> &'static MulTable {
    static TABLE: OnceLock<MulTable> = OnceLock::new();
    TABLE.get_or_init(|| doubling_table(E7_DOUBLING_SIGN))
}

/// An octonion `x₀𝟏 + Σ xₙ eₙ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Octonion<S: Clone = f64>(pub [S; 8]);

impl<S: Scalar> Octonion<S> {
    pub fn zero() -> Self {
        Octonion(std::array::from_fn(|_| S::zero()))
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    /// `𝟏` for `n = 0`, `e_n` for `n` in `1..=7`.
    pub fn basis(n: usize) -> Self {
        let mut o = Self::zero();
        o.0[n] = S::one();
        o
    }

    pub fn from_parts(re: S, im: &Vector7<S>) -> Self {
        Octonion(std::array::from_fn(|n| if n == 0 { re.clone() } else { im.0[n - 1].clone() }))
    }

    pub fn from_imaginary(im: &Vector7<S>) -> Self {
        Self::from_parts(S::zero(), im)
    }

    pub fn re(&self) -> S {
        self.0[0].clone()
    }

    pub fn im(&self) -> Vector7<S> {
        Vector7(std::array::from_fn(|n| self.0[n + 1].clone()))
    }

    pub fn conj(&self) -> Self {
        Octonion(std::array::from_fn(|n| if n == 0 { self.0[0].clone() } else { -self.0[n].clone() }))
    }

    pub fn norm_squared(&self) -> S {
        self.0.iter().fold(S::zero(), |acc, x| acc + x.clone() * x.clone())
    }

    pub(crate) fn mul_with(&self, rhs: &Self, table: &MulTable) -> Self {
        let mut out = Self::zero();
        for (a, x) in self.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in rhs.0.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let (c, s) = table[a][b];
                let term = x.clone() * y.clone();
                out.0[c] = if s > 0 { out.0[c].clone() + term } else { out.0[c].clone() - term };
            }
        }
        out
    }
}

impl Octonion<f64> {
    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }
}

/// Octonion product.
pub fn oct_mul<S: Scalar>(p: &Octonion<S>, q: &Octonion<S>) -> Octonion<S> {
    p.mul_with(q, table())
}

impl<S: Scalar> Mul for Octonion<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        oct_mul(&self, &rhs)
    }
}

impl<S: Scalar> Add for Octonion<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for (o, r) in out.0.iter_mut().zip(rhs.0) {
            *o = o.clone() + r;
        }
        out
    }
}

impl<S: Scalar> Sub for Octonion<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<S: Scalar> Neg for Octonion<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Octonion(self.0.map(|x| -x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(n: usize) -> Octonion<f64> {
        Octonion::basis(n)
    }

    #[test]
    fn quaternion_subalgebra_and_unit() {
        assert_eq!(o(1) * o(2), o(3));
        assert_eq!(o(2) * o(1), -o(3));
        let q = Octonion([0.5, -1.0, 2.0, 0.0, 3.0, 0.25, -4.0, 1.5]);
        assert_eq!(Octonion::one() * q, q);
        assert_eq!(q * Octonion::one(), q);
    }

    #[test]
    fn imaginary_units_square_to_minus_one() {
        for n in 1..8 {
            assert_eq!(o(n) * o(n), -Octonion::one());
        }
    }

    #[test]
    fn distinct_units_anticommute() {
        let t = table();
        for a in 1..8 {
            for b in 1..8 {
                if a != b {
                    let (c1, s1) = t[a][b];
                    let (c2, s2) = t[b][a];
                    assert_eq!(c1, c2);
                    assert_eq!(s1, -s2);
                }
            }
        }
    }

    #[test]
    fn norm_is_multiplicative_on_samples() {
        let p = Octonion([0.3, -1.2, 0.7, 2.0, -0.4, 1.1, 0.05, -0.9]);
        let q = Octonion([1.0, 0.2, -0.3, 0.4, 1.5, -2.2, 0.6, 0.8]);
        let lhs = (p * q).norm();
        assert!((lhs - p.norm() * q.norm()).abs() < 1e-12);
    }
}
