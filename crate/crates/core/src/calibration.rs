//! Oriented 3- and 4-planes in ℝ⁷ and their calibration-theoretic type.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::kform::KForm;
use crate::algebra::vector::Vector7;
use crate::algebra::{chi_eval, phi0, phi0_eval, psi0, AlgebraError};
use crate::par::{argmax_range, Exec};

/// Tolerance for predicates on exact or well-conditioned inputs.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Tolerance for decisions backed by the direction search.
pub const SEARCH_TOL: f64 = 1e-6;
/// Smallest singular value accepted by [`make_plane`].
pub const RANK_TOL: f64 = 1e-9;
/// Default grid resolution (points per axis) for [`max_associative_content`].
pub const DEFAULT_GRID: usize = 32;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CalibrationError {
    #[error("a plane needs 3 or 4 vectors, got {0}")]
    UnsupportedDimension(usize),
    #[error("spanning vectors are degenerate (smallest singular value {0:.3e})")]
    Degenerate(f64),
    #[error("form of degree {form} cannot be evaluated on a {plane}-plane")]
    DegreeMismatch { form: usize, plane: usize },
    #[error("{what}: the two characterizations disagree (value {value}, residual {residual})")]
    CharacterizationMismatch { what: &'static str, value: f64, residual: f64 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// An oriented 3- or 4-plane given by an ordered orthonormal frame.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrientedPlane {
    dim: usize,
    #[serde(rename = "vectors")]
    frame: Vec<Vector7>,
}

/// The on-disk plane format `{"dim": k, "vectors": [[…7…], …]}`.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct PlaneSpec {
    pub dim: usize,
    pub vectors: Vec<Vector7>,
}

impl TryFrom<PlaneSpec> for OrientedPlane {
    type Error = CalibrationError;

    fn try_from(spec: PlaneSpec) -> Result<Self, Self::Error> {
        if spec.vectors.len() != spec.dim {
            return Err(CalibrationError::UnsupportedDimension(spec.vectors.len()));
        }
        make_plane(&spec.vectors)
    }
}

impl<'de> Deserialize<'de> for OrientedPlane {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let spec = PlaneSpec::deserialize(d)?;
        OrientedPlane::try_from(spec).map_err(serde::de::Error::custom)
    }
}

fn singular_values(vectors: &[Vector7]) -> Vec<f64> {
    let m = DMatrix::from_fn(7, vectors.len(), |r, c| vectors[c].0[r]);
    m.singular_values().iter().copied().collect()
}

/// Orthonormalize `vectors` (3 or 4 of them) into an oriented frame of the same span.
pub fn make_plane(vectors: &[Vector7]) -> Result<OrientedPlane, CalibrationError> {
    let k = vectors.len();
    if k != 3 && k != 4 {
        return Err(CalibrationError::UnsupportedDimension(k));
    }
    let smallest = singular_values(vectors).into_iter().fold(f64::INFINITY, f64::min);
    if !(smallest >= RANK_TOL) {
        return Err(CalibrationError::Degenerate(smallest));
    }
    let mut frame: Vec<Vector7> = Vec::with_capacity(k);
    for v in vectors {
        // Two passes of modified Gram–Schmidt.
        let r = v.reject_from(&frame).reject_from(&frame);
        frame.push(r.normalized(0.0).ok_or(CalibrationError::Degenerate(0.0))?);
    }
    Ok(OrientedPlane { dim: k, frame })
}

impl OrientedPlane {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn frame(&self) -> &[Vector7] {
        &self.frame
    }

    /// The plane spanned by `e_i` for the given 1-based indices, in that order.
    pub fn coordinate(indices: &[usize]) -> Result<Self, CalibrationError> {
        if let Some(&n) = indices.iter().find(|&&n| !(1..=7).contains(&n)) {
            return Err(AlgebraError::IndexOutOfRange(n).into());
        }
        make_plane(&indices.iter().map(|&n| Vector7::e(n)).collect::<Vec<_>>())
    }

    /// Same plane with frame vectors `i` and `j` swapped (opposite orientation).
    pub fn transposed(&self, i: usize, j: usize) -> Self {
        let mut frame = self.frame.clone();
        frame.swap(i, j);
        OrientedPlane { dim: self.dim, frame }
    }

    /// Same plane with the opposite orientation.
    pub fn reversed(&self) -> Self {
        let mut frame = self.frame.clone();
        frame[0] = -frame[0];
        OrientedPlane { dim: self.dim, frame }
    }

    /// Orthogonal projection of `x` onto the plane.
    pub fn project(&self, x: &Vector7) -> Vector7 {
        self.frame.iter().fold(Vector7::zero(), |acc, f| acc + f.scale(&f.dot(x)))
    }

    /// Distance from `x` to the plane.
    pub fn distance(&self, x: &Vector7) -> f64 {
        (*x - self.project(x)).norm()
    }

    /// Orthonormal frame of the orthogonal complement, oriented so that
    /// `(self, complement)` is a positive frame of ℝ⁷.
    pub fn complement(&self) -> OrientedPlane {
        let mut basis = self.frame.clone();
        let mut extra = Vec::new();
        for n in 1..=7 {
            if basis.len() == 7 {
                break;
            }
            let r = Vector7::e(n).reject_from(&basis).reject_from(&basis);
            if let Some(u) = r.normalized(1e-6) {
                basis.push(u);
                extra.push(u);
            }
        }
        let det = DMatrix::from_fn(7, 7, |r, c| basis[c].0[r]).determinant();
        if det < 0.0 {
            extra[0] = -extra[0];
        }
        OrientedPlane { dim: extra.len(), frame: extra }
    }
}

/// The form evaluated on the orthonormal frame of `plane`.
pub fn calibration_value(form: &KForm<f64>, plane: &OrientedPlane) -> Result<f64, CalibrationError> {
    if form.degree() != plane.dim {
        return Err(CalibrationError::DegreeMismatch { form: form.degree(), plane: plane.dim });
    }
    // Evaluate on a canonically ordered frame and carry the sign of the
    // reordering, so that swapping two frame vectors negates the result exactly.
    let key = |v: &Vector7| v.0.map(f64::to_bits);
    let mut order: Vec<usize> = (0..plane.frame.len()).collect();
    order.sort_by_key(|&i| key(&plane.frame[i]));
    let sorted: Vec<Vector7> = order.iter().map(|&i| plane.frame[i]).collect();
    let value = form.eval(&sorted)?;
    Ok(if permutation_is_odd(&order) { -value } else { value })
}

fn permutation_is_odd(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// Both characterizations of a calibrated plane, side by side.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CalibratedCheck {
    /// φ₀ on a 3-plane or ψ₀ on a 4-plane.
    pub value: f64,
    /// `|χ₀(frame)|` on a 3-plane, or the root-sum-square of φ₀ over the
    /// four 3-subframes of a 4-plane.
    pub residual: f64,
    /// `|value| ≥ 1 − tol`.
    pub by_value: bool,
    /// `residual ≤ √(tol(2 − tol))`, the same condition through the identity
    /// `value² + residual² = 1` for orthonormal frames.
    pub by_residual: bool,
}

impl CalibratedCheck {
    fn new(value: f64, residual: f64, tol: f64) -> Self {
        let bound = (tol * (2.0 - tol)).max(0.0).sqrt();
        CalibratedCheck { value, residual, by_value: value.abs() >= 1.0 - tol, by_residual: residual <= bound }
    }

    /// Disagreement that is not explained by rounding at the threshold.
    fn consistent(&self, tol: f64) -> bool {
        const SLACK: f64 = 1e-12;
        let bound = (tol * (2.0 - tol)).max(0.0).sqrt();
        self.by_value == self.by_residual
            || (self.value.abs() - (1.0 - tol)).abs() < SLACK
            || (self.residual - bound).abs() < SLACK.sqrt()
    }
}

pub fn associativity(plane: &OrientedPlane, tol: f64) -> Result<CalibratedCheck, CalibrationError> {
    if plane.dim != 3 {
        return Err(CalibrationError::DegreeMismatch { form: 3, plane: plane.dim });
    }
    let f = &plane.frame;
    let value = phi0_eval(&f[0], &f[1], &f[2]);
    let residual = chi_eval(&f[0], &f[1], &f[2]).norm();
    Ok(CalibratedCheck::new(value, residual, tol))
}

/// φ₀ on the 3-subframes `(f₁,f₂,f₃), (f₀,f₂,f₃), (f₀,f₁,f₃), (f₀,f₁,f₂)`.
pub fn subframe_phi(plane: &OrientedPlane) -> Result<[f64; 4], CalibrationError> {
    if plane.dim != 4 {
        return Err(CalibrationError::DegreeMismatch { form: 4, plane: plane.dim });
    }
    let f = &plane.frame;
    Ok(std::array::from_fn(|skip| {
        let rest: Vec<&Vector7> = (0..4).filter(|&i| i != skip).map(|i| &f[i]).collect();
        phi0_eval(rest[0], rest[1], rest[2])
    }))
}

pub fn coassociativity(plane: &OrientedPlane, tol: f64) -> Result<CalibratedCheck, CalibrationError> {
    let phis = subframe_phi(plane)?;
    let value = psi0::<f64>().eval(&plane.frame)?;
    let residual = phis.iter().map(|x| x * x).sum::<f64>().sqrt();
    Ok(CalibratedCheck::new(value, residual, tol))
}

/// Whether a 3-plane is associative (calibrated by ±φ₀).
pub fn is_associative(plane: &OrientedPlane, tol: f64) -> Result<bool, CalibrationError> {
    let c = associativity(plane, tol)?;
    if !c.consistent(tol) {
        return Err(CalibrationError::CharacterizationMismatch {
            what: "associativity",
            value: c.value,
            residual: c.residual,
        });
    }
    Ok(c.by_value)
}

/// Whether a 4-plane is coassociative (calibrated by ±ψ₀).
pub fn is_coassociative(plane: &OrientedPlane, tol: f64) -> Result<bool, CalibrationError> {
    let c = coassociativity(plane, tol)?;
    if !c.consistent(tol) {
        return Err(CalibrationError::CharacterizationMismatch {
            what: "coassociativity",
            value: c.value,
            residual: c.residual,
        });
    }
    Ok(c.by_value)
}

/// Whether ψ₀ is nonzero on a 4-plane.
pub fn is_psi_positive(plane: &OrientedPlane, tol: f64) -> Result<bool, CalibrationError> {
    Ok(calibration_value(&psi0(), plane)?.abs() > tol)
}

/// The restriction of φ₀ to a 4-plane as the antisymmetric tensor `T_abc = φ₀(f_a, f_b, f_c)`.
struct RestrictedPhi {
    t: [[[f64; 4]; 4]; 4],
}

impl RestrictedPhi {
    fn new(plane: &OrientedPlane) -> Self {
        let f = &plane.frame;
        RestrictedPhi {
            t: std::array::from_fn(|a| {
                std::array::from_fn(|b| std::array::from_fn(|c| phi0_eval(&f[a], &f[b], &f[c])))
            }),
        }
    }

    fn eval(&self, x: &[f64; 4], y: &[f64; 4], z: &[f64; 4]) -> f64 {
        let mut s = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                if a == b {
                    continue;
                }
                let xy = x[a] * y[b];
                for c in 0..4 {
                    s += self.t[a][b][c] * xy * z[c];
                }
            }
        }
        s
    }
}

fn dot4(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize4(a: [f64; 4]) -> Option<[f64; 4]> {
    let n = dot4(&a, &a).sqrt();
    (n > 1e-300).then(|| a.map(|x| x / n))
}

fn det4(m: &[[f64; 4]; 4]) -> f64 {
    nalgebra::Matrix4::from_fn(|r, c| m[c][r]).determinant()
}

/// Oriented orthonormal frame of `n^⊥ ⊂ ℝ⁴`, with `(n, frame)` positive.
fn complement_frame(n: &[f64; 4]) -> [[f64; 4]; 3] {
    let mut axes: Vec<usize> = (0..4).collect();
    axes.sort_by(|&i, &j| n[i].abs().partial_cmp(&n[j].abs()).unwrap());
    let mut basis: Vec<[f64; 4]> = vec![*n];
    for &i in axes.iter().take(3) {
        let mut v = [0.0; 4];
        v[i] = 1.0;
        for _ in 0..2 {
            for b in &basis {
                let d = dot4(&v, b);
                for k in 0..4 {
                    v[k] -= d * b[k];
                }
            }
        }
        basis.push(normalize4(v).expect("axes of least overlap span n^⊥"));
    }
    let mut out = [basis[1], basis[2], basis[3]];
    if det4(&[basis[0], basis[1], basis[2], basis[3]]) < 0.0 {
        out[0] = out[0].map(|x| -x);
    }
    out
}

fn content_at(phi: &RestrictedPhi, n: &[f64; 4]) -> f64 {
    let [x, y, z] = complement_frame(n);
    phi.eval(&x, &y, &z).abs()
}

/// Result of the associative-content search over a 4-plane.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AssociativeContent {
    /// `max_n |φ₀(n^⊥ ∩ F)|` over unit `n ∈ F`.
    pub value: f64,
    /// The maximizing 3-plane `n^⊥ ∩ F`, oriented so that `n ∧ E = F`.
    pub plane: OrientedPlane,
    /// The maximizing direction in `F`.
    pub normal: Vector7,
    /// Grid points per axis of the initial search.
    pub resolution: usize,
    /// Number of grid directions evaluated (antipodes identified).
    pub directions: usize,
}

/// Grid of unit directions in ℝ⁴: normalized cell centres of `[−1,1]⁴` with first coordinate positive.
fn grid_point(resolution: usize, index: usize) -> [f64; 4] {
    let half = resolution / 2;
    let coord = |k: usize| -1.0 + (2 * k + 1) as f64 / resolution as f64;
    let mut rest = index;
    let i0 = rest % half;
    rest /= half;
    let i1 = rest % resolution;
    rest /= resolution;
    let i2 = rest % resolution;
    let i3 = rest / resolution;
    // First coordinate ranges over the positive half only.
    let c = [coord(half + i0 + resolution % 2), coord(i1), coord(i2), coord(i3)];
    normalize4(c).expect("cell centres are nonzero")
}

/// Largest associative calibration value among 3-planes of a 4-plane.
///
/// Exhaustive search over a `resolution⁴` grid of directions in the frame
/// coordinates of `F` (antipodes identified), then pattern-search refinement
/// of the best direction.
pub fn max_associative_content(
    plane: &OrientedPlane,
    resolution: usize,
    exec: Exec,
) -> Result<AssociativeContent, CalibrationError> {
    if plane.dim != 4 {
        return Err(CalibrationError::DegreeMismatch { form: 3, plane: plane.dim });
    }
    let resolution = resolution.max(2);
    let half = resolution / 2;
    let directions = half * resolution * resolution * resolution;
    let phi = RestrictedPhi::new(plane);
    let (best_index, _) =
        argmax_range(exec, directions, |i| content_at(&phi, &grid_point(resolution, i))).expect("grid is nonempty");
    let mut n = grid_point(resolution, best_index);
    let mut value = content_at(&phi, &n);
    let mut step = 2.0 / resolution as f64;
    let mut iterations = 0;
    while step > 1e-13 && iterations < 10_000 {
        iterations += 1;
        let mut improved = false;
        for axis in 0..4 {
            for sign in [1.0, -1.0] {
                let mut trial = n;
                trial[axis] += sign * step;
                if let Some(trial) = normalize4(trial) {
                    let v = content_at(&phi, &trial);
                    if v > value {
                        value = v;
                        n = trial;
                        improved = true;
                    }
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    let to_ambient =
        |c: &[f64; 4]| plane.frame.iter().zip(c.iter()).fold(Vector7::zero(), |acc, (f, x)| acc + f.scale(x));
    let [x, y, z] = complement_frame(&n);
    let sub = make_plane(&[to_ambient(&x), to_ambient(&y), to_ambient(&z)])?;
    Ok(AssociativeContent { value, plane: sub, normal: to_ambient(&n), resolution, directions })
}

/// Summary of a plane for reporting.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlaneClassification {
    pub dim: usize,
    /// φ₀ (3-planes) or ψ₀ (4-planes) on the frame.
    pub calibration_value: f64,
    pub associative: Option<bool>,
    pub coassociative: Option<bool>,
    pub psi_positive: Option<bool>,
    /// Root-sum-square of `χ₀` (3-planes) or of φ₀ over 3-subframes (4-planes).
    pub residual: f64,
    pub complement: OrientedPlane,
    /// φ₀ on the complement of a 4-plane (equals ψ₀ on the plane), or ψ₀ on the complement of a 3-plane.
    pub complement_value: f64,
    pub associative_content: Option<AssociativeContent>,
}

pub fn classify(
    plane: &OrientedPlane,
    tol: f64,
    resolution: usize,
    exec: Exec,
) -> Result<PlaneClassification, CalibrationError> {
    let complement = plane.complement();
    if plane.dim == 3 {
        let c = associativity(plane, tol)?;
        Ok(PlaneClassification {
            dim: 3,
            calibration_value: c.value,
            associative: Some(is_associative(plane, tol)?),
            coassociative: None,
            psi_positive: None,
            residual: c.residual,
            complement_value: calibration_value(&psi0(), &complement)?,
            complement,
            associative_content: None,
        })
    } else {
        let c = coassociativity(plane, tol)?;
        Ok(PlaneClassification {
            dim: 4,
            calibration_value: c.value,
            associative: None,
            coassociative: Some(is_coassociative(plane, tol)?),
            psi_positive: Some(is_psi_positive(plane, tol)?),
            residual: c.residual,
            complement_value: calibration_value(&phi0(), &complement)?,
            complement,
            associative_content: Some(max_associative_content(plane, resolution, exec)?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{orthonormal_frame, trial_rng};

    fn plane(ix: &[usize]) -> OrientedPlane {
        OrientedPlane::coordinate(ix).unwrap()
    }

    #[test]
    fn make_plane_orthonormalizes_and_rejects_rank_loss() {
        let e = |n| Vector7::e(n);
        let p = make_plane(&[e(1) * 2.0, e(1) + e(2), e(3)]).unwrap();
        assert_eq!(p, plane(&[1, 2, 3]));
        assert!(matches!(make_plane(&[e(1), e(1), e(2)]), Err(CalibrationError::Degenerate(_))));
        assert!(matches!(make_plane(&[e(1), e(2)]), Err(CalibrationError::UnsupportedDimension(2))));
    }

    #[test]
    fn calibration_values_on_coordinate_planes() {
        assert_eq!(calibration_value(&phi0(), &plane(&[1, 2, 3])).unwrap(), 1.0);
        assert_eq!(calibration_value(&psi0(), &plane(&[4, 5, 6, 7])).unwrap(), 1.0);
        assert!(calibration_value(&psi0(), &plane(&[1, 2, 3])).is_err());
        for k in 0..=12 {
            let a = k as f64 * std::f64::consts::PI / 12.0;
            let e_a =
                make_plane(&[Vector7::e(1), Vector7::e(2), Vector7::e(3) * a.cos() + Vector7::e(4) * a.sin()]).unwrap();
            assert!((calibration_value(&phi0(), &e_a).unwrap() - a.cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn predicates_on_coordinate_planes() {
        assert!(is_associative(&plane(&[1, 2, 3]), DEFAULT_TOL).unwrap());
        assert!(!is_associative(&plane(&[1, 2, 4]), DEFAULT_TOL).unwrap());
        assert!(is_associative(&plane(&[1, 4, 5]), DEFAULT_TOL).unwrap());
        assert!(is_coassociative(&plane(&[4, 5, 6, 7]), DEFAULT_TOL).unwrap());
        assert!(!is_coassociative(&plane(&[1, 2, 3, 4]), DEFAULT_TOL).unwrap());
        assert!(is_coassociative(&plane(&[2, 3, 4, 5]), DEFAULT_TOL).unwrap());
        assert!(!is_psi_positive(&plane(&[1, 2, 3, 4]), DEFAULT_TOL).unwrap());
        let bent = make_plane(&[
            Vector7::e(4) + Vector7::e(1) * 0.01,
            Vector7::e(5),
            Vector7::e(6) - Vector7::e(2) * 0.01,
            Vector7::e(7),
        ])
        .unwrap();
        assert!(is_psi_positive(&bent, DEFAULT_TOL).unwrap());
    }

    #[test]
    fn complement_pairs_psi_with_phi() {
        let mut rng = trial_rng(5, 0);
        for _ in 0..10 {
            let f = make_plane(&orthonormal_frame(&mut rng, 4)).unwrap();
            let psi = calibration_value(&psi0(), &f).unwrap();
            let phi = calibration_value(&phi0(), &f.complement()).unwrap();
            assert!((psi - phi).abs() < 1e-12);
        }
    }

    #[test]
    fn content_of_special_planes() {
        let c = max_associative_content(&plane(&[1, 2, 3, 4]), 8, Exec::Sequential).unwrap();
        assert!((c.value - 1.0).abs() < 1e-9);
        for e in [1, 2, 3] {
            assert!(c.plane.distance(&Vector7::e(e)) < 1e-6);
        }
        let c = max_associative_content(&plane(&[4, 5, 6, 7]), 8, Exec::Sequential).unwrap();
        assert!(c.value < 1e-12);
    }

    #[test]
    fn grid_covers_the_half_sphere() {
        let r = 6;
        let pts: Vec<[f64; 4]> = (0..r / 2 * r * r * r).map(|i| grid_point(r, i)).collect();
        assert!(pts.iter().all(|p| p[0] > 0.0));
        // Every direction is within asin(2/r) of a grid direction up to sign.
        let bound = (2.0 / r as f64).asin().cos();
        let mut rng = trial_rng(9, 0);
        for _ in 0..200 {
            let v = crate::sampling::unit_vector(&mut rng);
            let n = normalize4([v.0[0], v.0[1], v.0[2], v.0[3]]).unwrap();
            let best = pts.iter().map(|p| dot4(p, &n).abs()).fold(0.0, f64::max);
            assert!(best >= bound, "{best} < {bound}");
        }
    }
}
