//! Pointwise splitting of the normal space of an associative 3-plane along its
//! boundary, where it meets a coassociative (or ψ-positive) 4-plane.
//!
//! At a boundary point the associative tangent space is `E = ⟨u, v, w⟩` with
//! `u` the inward normal and `w = u×v`. The normal space `ν = E^⊥` carries the
//! complex structure `J = u×`, and splits as `ν_X ⊕ μ_X`, where `ν_X` comes from
//! the normal directions of the 4-plane `F ⊃ ⟨v, w⟩`.

use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::cross;
use crate::algebra::vector::Vector7;
use crate::calibration::{
    self, is_associative, is_coassociative, is_psi_positive, make_plane, CalibrationError, OrientedPlane,
};
use crate::sampling::{g2_frame, unit_vector};

pub const TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundaryError {
    #[error("invalid boundary configuration: {0}")]
    InvalidConfig(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Calibration(#[from] CalibrationError),
}

/// Boundary data `(u, v, w)` together with the 4-plane `F`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryConfig {
    pub u: Vector7,
    pub v: Vector7,
    pub w: Vector7,
    #[serde(rename = "F")]
    pub f: OrientedPlane,
    #[serde(rename = "NX", default, skip_serializing_if = "Option::is_none")]
    pub nx: Option<[Vector7; 2]>,
}

impl BoundaryConfig {
    pub fn new(u: Vector7, v: Vector7, w: Vector7, f: OrientedPlane) -> Self {
        BoundaryConfig { u, v, w, f, nx: None }
    }

    /// Check orthonormality of `(u, v, w)`, `w = u×v`, and `v, w ∈ F`.
    pub fn validate(&self) -> Result<(), BoundaryError> {
        let frame = [self.u, self.v, self.w];
        for (i, x) in frame.iter().enumerate() {
            for (j, y) in frame.iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                if (x.dot(y) - expected).abs() > TOL {
                    return Err(BoundaryError::InvalidConfig(format!(
                        "(u, v, w) is not orthonormal: entry ({i},{j}) of the Gram matrix is {}",
                        x.dot(y)
                    )));
                }
            }
        }
        let defect = (cross(&self.u, &self.v) - self.w).max_abs();
        if defect > TOL {
            return Err(BoundaryError::InvalidConfig(format!("w differs from u×v by {defect:.3e}")));
        }
        for (name, x) in [("v", &self.v), ("w", &self.w)] {
            let d = self.f.distance(x);
            if d > TOL {
                return Err(BoundaryError::InvalidConfig(format!("{name} is at distance {d:.3e} from F")));
            }
        }
        if self.f.dim() != 4 {
            return Err(BoundaryError::InvalidConfig(format!("F has dimension {}", self.f.dim())));
        }
        Ok(())
    }

    /// `E = ⟨u, v, w⟩`.
    pub fn tangent_plane(&self) -> Result<OrientedPlane, BoundaryError> {
        Ok(make_plane(&[self.u, self.v, self.w])?)
    }

    /// `J x = u × x`.
    pub fn j(&self, x: &Vector7) -> Vector7 {
        cross(&self.u, x)
    }

    /// Orthogonal projection onto `ν = ⟨u, v, w⟩^⊥`.
    pub fn project_nu(&self, x: &Vector7) -> Vector7 {
        x.reject_from(&[self.u, self.v, self.w])
    }

    fn require_associative(&self) -> Result<(), BoundaryError> {
        if !is_associative(&self.tangent_plane()?, TOL)? {
            return Err(BoundaryError::Precondition("⟨u, v, w⟩ is not associative".into()));
        }
        Ok(())
    }

    /// Unit vectors of `F ⊖ ⟨v, w⟩` in Gram–Schmidt order of the frame of `F`.
    fn normal_directions_in_f(&self) -> Vec<Vector7> {
        let mut out: Vec<Vector7> = Vec::new();
        for x in self.f.frame() {
            let mut basis = vec![self.v, self.w];
            basis.extend(out.iter().copied());
            let r = x.reject_from(&basis).reject_from(&basis);
            if let Some(n) = r.normalized(1e-6) {
                out.push(n);
            }
        }
        out
    }
}

/// `ν = ν_X ⊕ μ_X` at one boundary point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalSplit {
    pub u: Vector7,
    pub v: Vector7,
    pub w: Vector7,
    /// The chosen unit section of `ν_X`.
    pub a: Vector7,
    /// Orthonormal frame of `ν = E^⊥`: `ν_X` frame followed by `μ_X` frame.
    pub nu_frame: [Vector7; 4],
    pub nux_frame: [Vector7; 2],
    pub mux_frame: [Vector7; 2],
    /// Tangent frame of `F`, kept for the `μ_X ⟂ TX` check.
    pub f_frame: Vec<Vector7>,
}

impl NormalSplit {
    pub fn j(&self, x: &Vector7) -> Vector7 {
        cross(&self.u, x)
    }

    /// Coordinates of `x` in `nu_frame`.
    pub fn nu_coordinates(&self, x: &Vector7) -> [f64; 4] {
        std::array::from_fn(|i| self.nu_frame[i].dot(x))
    }

    /// Orthogonal projection onto `μ_X`.
    pub fn project_mu(&self, x: &Vector7) -> Vector7 {
        self.mux_frame.iter().fold(Vector7::zero(), |acc, m| acc + m.scale(&m.dot(x)))
    }

    /// Residuals of every structural claim about the split.
    pub fn invariants(&self) -> SplitInvariants {
        let e = [self.u, self.v, self.w];
        let mut ortho = 0.0f64;
        for (i, x) in self.nu_frame.iter().enumerate() {
            for (j, y) in self.nu_frame.iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                ortho = ortho.max((x.dot(y) - expected).abs());
            }
            for t in &e {
                ortho = ortho.max(x.dot(t).abs());
            }
        }
        let span_defect = |frame: &[Vector7; 2], x: &Vector7| -> f64 {
            let p = frame.iter().fold(Vector7::zero(), |acc, m| acc + m.scale(&m.dot(x)));
            (*x - p).norm()
        };
        let nux_j = self.nux_frame.iter().map(|x| span_defect(&self.nux_frame, &self.j(x))).fold(0.0, f64::max);
        let mux_j = self.mux_frame.iter().map(|x| span_defect(&self.mux_frame, &self.j(x))).fold(0.0, f64::max);
        let j_squared = self.nu_frame.iter().map(|x| (self.j(&self.j(x)) + *x).max_abs()).fold(0.0, f64::max);
        let mu_perp_tx =
            self.mux_frame.iter().flat_map(|m| self.f_frame.iter().map(move |n| m.dot(n).abs())).fold(0.0, f64::max);
        SplitInvariants {
            orthonormality: ortho,
            j_stable_nux: nux_j,
            j_stable_mux: mux_j,
            j_squared_plus_one: j_squared,
            a_dot_u: self.a.dot(&self.u).abs(),
            mu_perp_tx,
        }
    }
}

/// Maximal deviations; every entry should be below [`TOL`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SplitInvariants {
    /// Orthonormality of the `ν` frame and its orthogonality to `E`.
    pub orthonormality: f64,
    /// Distance of `J(ν_X)` from `ν_X`.
    pub j_stable_nux: f64,
    /// Distance of `J(μ_X)` from `μ_X`.
    pub j_stable_mux: f64,
    /// `|J²x + x|` on the `ν` frame.
    pub j_squared_plus_one: f64,
    pub a_dot_u: f64,
    /// `|⟨m, n⟩|` for `m ∈ μ_X`, `n ∈ TX`.
    pub mu_perp_tx: f64,
}

impl SplitInvariants {
    pub fn max(&self) -> f64 {
        [
            self.orthonormality,
            self.j_stable_nux,
            self.j_stable_mux,
            self.j_squared_plus_one,
            self.a_dot_u,
            self.mu_perp_tx,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn hold(&self, tol: f64) -> bool {
        self.max() <= tol
    }
}

/// Split `ν` along a coassociative `F`: `ν_X = ⟨a, Ja⟩`, `μ_X = ⟨a×v, a×w⟩`.
pub fn split_coassociative(cfg: &BoundaryConfig) -> Result<NormalSplit, BoundaryError> {
    cfg.validate()?;
    cfg.require_associative()?;
    if !is_coassociative(&cfg.f, TOL)? {
        return Err(BoundaryError::Precondition("F is not coassociative".into()));
    }
    let a = *cfg
        .normal_directions_in_f()
        .first()
        .ok_or_else(|| BoundaryError::InvalidConfig("F ⊖ ⟨v, w⟩ is empty".into()))?;
    let a_dot_u = a.dot(&cfg.u);
    if a_dot_u.abs() > TOL {
        return Err(BoundaryError::InvariantViolation(format!("g(a, u) = {a_dot_u:.3e}")));
    }
    let ja = cfg.j(&a);
    let nux = [a, ja];
    let mux = [cross(&a, &cfg.v), cross(&a, &cfg.w)];
    let split = NormalSplit {
        u: cfg.u,
        v: cfg.v,
        w: cfg.w,
        a,
        nu_frame: [nux[0], nux[1], mux[0], mux[1]],
        nux_frame: nux,
        mux_frame: mux,
        f_frame: cfg.f.frame().to_vec(),
    };
    let inv = split.invariants();
    if !inv.hold(TOL) {
        return Err(BoundaryError::InvariantViolation(format!("split residual {:.3e}", inv.max())));
    }
    Ok(split)
}

/// The three expressions `Ja×y`, `a×Jy`, `−J(a×y)` for `y ∈ ⟨v, w⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AntilinearCheck {
    pub ja_cross_y: Vector7,
    pub a_cross_jy: Vector7,
    pub minus_j_a_cross_y: Vector7,
    pub max_defect: f64,
}

pub fn antilinear_terms(split: &NormalSplit, y: &Vector7) -> Result<AntilinearCheck, BoundaryError> {
    let in_span = y.reject_from(&[split.v, split.w]).norm();
    if in_span > TOL {
        return Err(BoundaryError::Precondition(format!("y is at distance {in_span:.3e} from ⟨v, w⟩")));
    }
    let a = split.a;
    let p = cross(&split.j(&a), y);
    let q = cross(&a, &split.j(y));
    let r = -split.j(&cross(&a, y));
    let max_defect = (p - q).max_abs().max((p - r).max_abs());
    Ok(AntilinearCheck { ja_cross_y: p, a_cross_jy: q, minus_j_a_cross_y: r, max_defect })
}

/// Whether `a ⊗ y ↦ a×y` is complex antilinear at `y`.
pub fn check_antilinear(split: &NormalSplit, y: &Vector7) -> Result<bool, BoundaryError> {
    Ok(antilinear_terms(split, y)?.max_defect <= TOL)
}

/// Extra data produced by the ψ-positive split.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProjectionReport {
    /// Singular values of `P|N_X : N_X → ν`, descending.
    pub singular_values: [f64; 2],
    pub min_singular_value: f64,
    /// Unit vector of `μ_X` used for the `Jb` test.
    pub b: Vector7,
    /// `|p_{μ_X}(Jb)|`.
    pub mu_component_of_jb: f64,
    /// Coordinates of `p_{μ_X}(Jb)` in the frame `(b, Jb, v×b, w×b)`.
    pub jb_mu_coordinates: [f64; 4],
    /// `(s, t)` with `p_{μ_X}(Jb) ∝ (0, 1, s, t)`, as the pair `z = s + it`.
    pub z: [f64; 2],
}

/// Split `ν` along a ψ-positive `F`, with `ν_X` the projection of `N_X = F ⊖ ⟨v, w⟩` to `ν`.
pub fn split_psi_positive(
    cfg: &BoundaryConfig,
    nx: &[Vector7; 2],
) -> Result<(NormalSplit, ProjectionReport), BoundaryError> {
    cfg.validate()?;
    cfg.require_associative()?;
    if !is_psi_positive(&cfg.f, TOL)? {
        return Err(BoundaryError::Precondition("F is not ψ-positive".into()));
    }
    for (i, n) in nx.iter().enumerate() {
        let d = cfg.f.distance(n);
        let tangential = n.dot(&cfg.v).abs().max(n.dot(&cfg.w).abs());
        if d > TOL || tangential > TOL {
            return Err(BoundaryError::Precondition(format!(
                "NX[{i}] does not lie in F ⊖ ⟨v, w⟩ (distance {d:.3e}, tangential part {tangential:.3e})"
            )));
        }
    }
    let n_plane =
        orthonormal_pair(nx).ok_or_else(|| BoundaryError::Precondition("NX does not span a 2-plane".into()))?;
    let images = [cfg.project_nu(&n_plane[0]), cfg.project_nu(&n_plane[1])];
    let m = DMatrix::from_fn(7, 2, |r, c| images[c].0[r]);
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let min_sv = sv[1];
    if !(min_sv > TOL) {
        return Err(BoundaryError::InvariantViolation(format!(
            "P|N_X has rank < 2 (smallest singular value {min_sv:.3e})"
        )));
    }
    let nux = orthonormal_pair(&images).expect("rank 2 image");
    let a = nux[0];
    let mut mux_vec: Vec<Vector7> = Vec::new();
    let e = [cfg.u, cfg.v, cfg.w];
    for n in 1..=7 {
        if mux_vec.len() == 2 {
            break;
        }
        let mut basis: Vec<Vector7> = e.to_vec();
        basis.extend_from_slice(&nux);
        basis.extend(mux_vec.iter().copied());
        let r = Vector7::e(n).reject_from(&basis).reject_from(&basis);
        if let Some(x) = r.normalized(1e-6) {
            mux_vec.push(x);
        }
    }
    let mux = [mux_vec[0], mux_vec[1]];
    let split = NormalSplit {
        u: cfg.u,
        v: cfg.v,
        w: cfg.w,
        a,
        nu_frame: [nux[0], nux[1], mux[0], mux[1]],
        nux_frame: nux,
        mux_frame: mux,
        f_frame: cfg.f.frame().to_vec(),
    };
    let b = split.project_mu(&cross(&a, &cfg.v)).normalized(1e-6).unwrap_or(mux[0]);
    let jb = split.j(&b);
    let b_tilde = split.project_mu(&jb);
    let frame = [b, jb, cross(&cfg.v, &b), cross(&cfg.w, &b)];
    let coords: [f64; 4] = std::array::from_fn(|i| frame[i].dot(&b_tilde));
    let mu_component = b_tilde.norm();
    if !(mu_component > TOL) {
        return Err(BoundaryError::InvariantViolation(format!("Jb lies in ν_X (|p_μ(Jb)| = {mu_component:.3e})")));
    }
    let report = ProjectionReport {
        singular_values: [sv[0], sv[1]],
        min_singular_value: min_sv,
        b,
        mu_component_of_jb: mu_component,
        jb_mu_coordinates: coords,
        z: [coords[2] / coords[1], coords[3] / coords[1]],
    };
    Ok((split, report))
}

fn orthonormal_pair(v: &[Vector7; 2]) -> Option<[Vector7; 2]> {
    let x = v[0].normalized(1e-9)?;
    let y = v[1].reject_from(&[x]).reject_from(&[x]).normalized(1e-9)?;
    Some([x, y])
}

/// A random valid coassociative configuration.
///
/// `(u, v, w)` is the image of `(e₁, e₂, e₃)` and `F` the image of
/// `⟨e₂, e₃, e₄, e₅⟩` under a random G2 frame; the frame of `F` is then
/// rotated by a random angle inside `F ⊖ ⟨v, w⟩`.
pub fn random_coassociative_config<R: Rng + ?Sized>(rng: &mut R) -> BoundaryConfig {
    let g = g2_frame(rng);
    let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let (c, s) = (theta.cos(), theta.sin());
    let a = g[3] * c + g[4] * s;
    let b = g[4] * c - g[3] * s;
    let f = make_plane(&[g[1], g[2], a, b]).expect("G2 image of a coordinate plane");
    BoundaryConfig::new(g[0], g[1], g[2], f)
}

/// A ψ-positive configuration obtained by tilting the normal directions of a
/// coassociative one by `eps` towards random directions of `ℝ⁷`.
pub fn perturbed_config<R: Rng + ?Sized>(rng: &mut R, base: &BoundaryConfig, eps: f64) -> BoundaryConfig {
    let split_dirs = base.normal_directions_in_f();
    let tilted: Vec<Vector7> = split_dirs
        .iter()
        .map(|n| {
            let d = unit_vector(rng).reject_from(&[base.v, base.w]);
            *n + d * eps
        })
        .collect();
    let f = make_plane(&[base.v, base.w, tilted[0], tilted[1]]).expect("small tilt keeps rank");
    let nx = {
        let r0 = tilted[0].reject_from(&[base.v, base.w]);
        let r1 = tilted[1].reject_from(&[base.v, base.w]);
        [r0, r1]
    };
    BoundaryConfig { u: base.u, v: base.v, w: base.w, f, nx: Some(nx) }
}

/// The standard configuration `u = e₁, v = e₂, w = e₃, F = ⟨e₂, e₃, e₄, e₅⟩`.
pub fn standard_config() -> BoundaryConfig {
    BoundaryConfig::new(
        Vector7::e(1),
        Vector7::e(2),
        Vector7::e(3),
        calibration::OrientedPlane::coordinate(&[2, 3, 4, 5]).expect("coordinate plane"),
    )
}
