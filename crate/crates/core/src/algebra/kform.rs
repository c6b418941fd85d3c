//! Alternating forms on ℝ⁷ with dense coefficient storage.
//!
//! A degree-`k` form keeps one coefficient per strictly increasing index
//! tuple, `C(7,k)` of them, in lexicographic order. Index tuples are handled
//! internally as 7-bit masks (bit `n-1` for `e^n`).

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_traits::Zero;

use super::vector::Vector7;
use super::AlgebraError;
use crate::scalar::{sign_scalar, Scalar};

pub const DIM: usize = 7;

struct IndexTables {
    /// Masks of popcount `k`, in lexicographic order of their sorted tuples.
    by_degree: [Vec<u8>; DIM + 1],
    /// Position of each mask within its degree.
    position: [usize; 1 << DIM],
    /// Permutations of `0..k` with their parity, for `k ≤ 7`.
    permutations: [Vec<(Vec<usize>, bool)>; DIM + 1],
}

fn tables() -> &'static IndexTables {
    static TABLES: OnceLock<IndexTables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut by_degree: [Vec<u8>; DIM + 1] = Default::default();
        for k in 0..=DIM {
            let mut out = Vec::new();
            combinations(0, k, 0, &mut out);
            by_degree[k] = out;
        }
        let mut position = [0usize; 1 << DIM];
        for masks in &by_degree {
            for (i, m) in masks.iter().enumerate() {
                position[*m as usize] = i;
            }
        }
        let permutations = std::array::from_fn(permutations_with_parity);
        IndexTables { by_degree, position, permutations }
    })
}

fn combinations(start: usize, k: usize, acc: u8, out: &mut Vec<u8>) {
    if k == 0 {
        out.push(acc);
        return;
    }
    for i in start..DIM {
        combinations(i + 1, k - 1, acc | (1 << i), out);
    }
}

fn permutations_with_parity(k: usize) -> Vec<(Vec<usize>, bool)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], k: usize, out: &mut Vec<(Vec<usize>, bool)>) {
        if prefix.len() == k {
            let inversions =
                (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).filter(|&(i, j)| prefix[i] > prefix[j]).count();
            out.push((prefix.clone(), inversions % 2 == 1));
            return;
        }
        for i in 0..k {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, k, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], k, &mut out);
    out
}

pub(crate) fn masks(k: usize) -> &'static [u8] {
    &tables().by_degree[k]
}

pub(crate) fn mask_position(mask: u8) -> usize {
    tables().position[mask as usize]
}

/// Zero-based indices of the set bits of `mask`, ascending.
pub(crate) fn mask_indices(mask: u8) -> impl Iterator<Item = usize> {
    (0..DIM).filter(move |i| mask & (1 << i) != 0)
}

/// Parity of the permutation sorting the concatenation `I ++ J` for disjoint masks.
pub(crate) fn shuffle_is_odd(first: u8, second: u8) -> bool {
    let mut count = 0;
    for i in mask_indices(first) {
        count += mask_indices(second).filter(|&j| j < i).count();
    }
    count % 2 == 1
}

/// Sort 1-based indices into a mask, returning `None` on repeats.
fn sorted_mask(indices: &[usize]) -> Result<Option<(u8, bool)>, AlgebraError> {
    let mut mask = 0u8;
    for &n in indices {
        if !(1..=DIM).contains(&n) {
            return Err(AlgebraError::IndexOutOfRange(n));
        }
        if mask & (1 << (n - 1)) != 0 {
            return Ok(None);
        }
        mask |= 1 << (n - 1);
    }
    let inversions = (0..indices.len())
        .flat_map(|i| (i + 1..indices.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| indices[i] > indices[j])
        .count();
    Ok(Some((mask, inversions % 2 == 1)))
}

/// An alternating `k`-form on ℝ⁷.
#[derive(Clone, Debug, PartialEq)]
pub struct KForm<S: Scalar = f64> {
    degree: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> KForm<S> {
    pub fn zero(degree: usize) -> Result<Self, AlgebraError> {
        if degree > DIM {
            return Err(AlgebraError::DegreeOverflow(degree));
        }
        Ok(KForm { degree, coeffs: vec![S::zero(); masks(degree).len()] })
    }

    /// The constant 0-form `c`.
    pub fn scalar(c: S) -> Self {
        KForm { degree: 0, coeffs: vec![c] }
    }

    /// Build from `(indices, coefficient)` terms with 1-based indices in any order.
    ///
    /// `&[2, 1]` contributes `-c` to `e¹²`; repeated indices contribute nothing.
    pub fn from_terms(degree: usize, terms: &[(&[usize], S)]) -> Result<Self, AlgebraError> {
        let mut form = Self::zero(degree)?;
        for (indices, c) in terms {
            if indices.len() != degree {
                return Err(AlgebraError::DegreeMismatch { expected: degree, found: indices.len() });
            }
            if let Some((mask, odd)) = sorted_mask(indices)? {
                let pos = mask_position(mask);
                let term = c.clone() * sign_scalar::<S>(odd);
                form.coeffs[pos] = form.coeffs[pos].clone() + term;
            }
        }
        Ok(form)
    }

    /// Coefficients in lexicographic order of the sorted index tuples.
    pub fn from_coefficients(degree: usize, coeffs: Vec<S>) -> Result<Self, AlgebraError> {
        if degree > DIM {
            return Err(AlgebraError::DegreeOverflow(degree));
        }
        let expected = masks(degree).len();
        if coeffs.len() != expected {
            return Err(AlgebraError::CoefficientCount { expected, found: coeffs.len() });
        }
        Ok(KForm { degree, coeffs })
    }

    /// `e^{1…7}`.
    pub fn volume() -> Self {
        KForm { degree: DIM, coeffs: vec![S::one()] }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> &[S] {
        &self.coeffs
    }

    /// Iterate over `(sorted 1-based indices, coefficient)` for nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &S)> + '_ {
        masks(self.degree)
            .iter()
            .zip(self.coeffs.iter())
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (mask_indices(*m).map(|i| i + 1).collect(), c))
    }

    /// Coefficient of `e^{i₁…i_k}` with 1-based indices in any order (sign-adjusted).
    pub fn coeff(&self, indices: &[usize]) -> Result<S, AlgebraError> {
        if indices.len() != self.degree {
            return Err(AlgebraError::DegreeMismatch { expected: self.degree, found: indices.len() });
        }
        Ok(match sorted_mask(indices)? {
            None => S::zero(),
            Some((mask, odd)) => self.coeffs[mask_position(mask)].clone() * sign_scalar::<S>(odd),
        })
    }

    pub(crate) fn coeff_by_mask(&self, mask: u8) -> &S {
        &self.coeffs[mask_position(mask)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &S) -> Self {
        KForm { degree: self.degree, coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    /// Euclidean inner product of coefficient vectors (the induced metric for the standard frame).
    pub fn euclidean_dot(&self, other: &Self) -> Result<S, AlgebraError> {
        self.same_degree(other)?;
        Ok(self.coeffs.iter().zip(other.coeffs.iter()).fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
    }

    fn same_degree(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.degree != other.degree {
            return Err(AlgebraError::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        Ok(())
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Self) -> Result<Self, AlgebraError> {
        let degree = self.degree + other.degree;
        if degree > DIM {
            return Err(AlgebraError::DegreeOverflow(degree));
        }
        let mut out = Self::zero(degree)?;
        for (ma, ca) in masks(self.degree).iter().zip(&self.coeffs) {
            if ca.is_zero() {
                continue;
            }
            for (mb, cb) in masks(other.degree).iter().zip(&other.coeffs) {
                if cb.is_zero() || ma & mb != 0 {
                    continue;
                }
                let pos = mask_position(ma | mb);
                let term = ca.clone() * cb.clone();
                out.coeffs[pos] = if shuffle_is_odd(*ma, *mb) {
                    out.coeffs[pos].clone() - term
                } else {
                    out.coeffs[pos].clone() + term
                };
            }
        }
        Ok(out)
    }

    /// Contraction `u ⌟ self`, inserting `u` into the first slot.
    pub fn interior(&self, u: &Vector7<S>) -> Result<Self, AlgebraError> {
        if self.degree == 0 {
            return Err(AlgebraError::InteriorOfScalar);
        }
        let mut out = Self::zero(self.degree - 1)?;
        for (m, c) in masks(self.degree).iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            for (r, i) in mask_indices(*m).enumerate() {
                if u.0[i].is_zero() {
                    continue;
                }
                let pos = mask_position(m & !(1 << i));
                let term = c.clone() * u.0[i].clone();
                out.coeffs[pos] =
                    if r % 2 == 1 { out.coeffs[pos].clone() - term } else { out.coeffs[pos].clone() + term };
            }
        }
        Ok(out)
    }

    /// Evaluate on `k` vectors: `Σ_I a_I det(v_j[i])_{i∈I}`.
    pub fn eval(&self, vectors: &[Vector7<S>]) -> Result<S, AlgebraError> {
        if vectors.len() != self.degree {
            return Err(AlgebraError::DegreeMismatch { expected: self.degree, found: vectors.len() });
        }
        let perms = &tables().permutations[self.degree];
        let mut total = S::zero();
        for (m, c) in masks(self.degree).iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let rows: Vec<usize> = mask_indices(*m).collect();
            let mut minor = S::zero();
            for (perm, odd) in perms {
                let mut prod = S::one();
                for (slot, &row) in perm.iter().zip(rows.iter()) {
                    prod = prod * vectors[*slot].0[row].clone();
                    if prod.is_zero() {
                        break;
                    }
                }
                minor = if *odd { minor - prod } else { minor + prod };
            }
            total = total + c.clone() * minor;
        }
        Ok(total)
    }

    /// Pull back along the linear map whose columns are `images[n] = A e_{n+1}`.
    pub fn pullback(&self, images: &[Vector7<S>; DIM]) -> Self {
        let coeffs = masks(self.degree)
            .iter()
            .map(|m| {
                let args: Vec<Vector7<S>> = mask_indices(*m).map(|i| images[i].clone()).collect();
                self.eval(&args).expect("argument count equals degree")
            })
            .collect();
        KForm { degree: self.degree, coeffs }
    }

    pub fn to_f64(&self) -> KForm<f64> {
        KForm { degree: self.degree, coeffs: self.coeffs.iter().map(Scalar::to_f64).collect() }
    }

    /// Largest coefficient difference to `other` in absolute value.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64, AlgebraError> {
        self.same_degree(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a.clone() - b.clone()).to_f64().abs())
            .fold(0.0, f64::max))
    }
}

impl<S: Scalar> Add for KForm<S> {
    type Output = Result<KForm<S>, AlgebraError>;
    fn add(self, rhs: Self) -> Self::Output {
        self.same_degree(&rhs)?;
        Ok(KForm { degree: self.degree, coeffs: self.coeffs.into_iter().zip(rhs.coeffs).map(|(a, b)| a + b).collect() })
    }
}

impl<S: Scalar> Sub for KForm<S> {
    type Output = Result<KForm<S>, AlgebraError>;
    fn sub(self, rhs: Self) -> Self::Output {
        self + (-rhs)
    }
}

impl<S: Scalar> Neg for KForm<S> {
    type Output = KForm<S>;
    fn neg(self) -> Self {
        KForm { degree: self.degree, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<S: Scalar> Mul<S> for KForm<S> {
    type Output = KForm<S>;
    fn mul(self, rhs: S) -> Self {
        self.scale(&rhs)
    }
}

/// The standard G2 3-form `e¹²³ + e¹⁴⁵ + e¹⁶⁷ + e²⁴⁶ − e²⁵⁷ − e³⁴⁷ − e³⁵⁶`.
pub fn phi0<S: Scalar>() -> KForm<S> {
    let one = S::one;
    let neg = || -S::one();
    KForm::from_terms(
        3,
        &[
            (&[1, 2, 3], one()),
            (&[1, 4, 5], one()),
            (&[1, 6, 7], one()),
            (&[2, 4, 6], one()),
            (&[2, 5, 7], neg()),
            (&[3, 4, 7], neg()),
            (&[3, 5, 6], neg()),
        ],
    )
    .expect("static table")
}

/// The dual 4-form `−e¹²∧(e⁴⁷+e⁵⁶) − e¹³∧(e⁴⁶−e⁵⁷) + e²³∧(e⁴⁵+e⁶⁷) + e⁴⁵⁶⁷`.
pub fn psi0<S: Scalar>() -> KForm<S> {
    let one = S::one;
    let neg = || -S::one();
    KForm::from_terms(
        4,
        &[
            (&[1, 2, 4, 7], neg()),
            (&[1, 2, 5, 6], neg()),
            (&[1, 3, 4, 6], neg()),
            (&[1, 3, 5, 7], one()),
            (&[2, 3, 4, 5], one()),
            (&[2, 3, 6, 7], one()),
            (&[4, 5, 6, 7], one()),
        ],
    )
    .expect("static table")
}
