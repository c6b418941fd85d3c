//! Principal symbols of the boundary problem on `ν^ℂ`, elliptic boundary
//! condition checks, and the index formula.
//!
//! Matrices act on column vectors in the ordered basis `{α, β, ᾱ, β̄}` of
//! `ν^ℂ`, with `α = a − iJa` and `β = −v×ᾱ`; `μ_X^ℂ` uses `{β, β̄}`. A unit
//! covector `η_v dv + η_w dw` is identified with `η = η_v + iη_w`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::cross;
use crate::algebra::vector::Vector7;
use crate::boundary::NormalSplit;
use crate::par::{map_range, Exec};

pub type C = Complex64;

/// Default number of covectors on the unit circle.
pub const DEFAULT_GRID: usize = 360;
/// Smallest grid accepted by [`ebc_check`].
pub const MIN_EBC_GRID: usize = 90;
/// Rank threshold for singular values.
pub const RANK_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymbolError {
    #[error("symbols are not defined on the zero covector")]
    ZeroCovector,
    #[error("covector ({0}, {1}) is not a unit vector")]
    NotUnit(f64, f64),
    #[error("grid of {0} angles is below the minimum of {1}")]
    GridTooCoarse(usize, usize),
    #[error("vector is not in the span of the complex frame (residual {0:.3e})")]
    NotInFrame(f64),
    #[error("the Maslov class needs a single boundary sphere, got {0}")]
    NotASphere(String),
}

const I: C = C { re: 0.0, im: 1.0 };
const ONE: C = C { re: 1.0, im: 0.0 };
const ZERO: C = C { re: 0.0, im: 0.0 };

/// A complex matrix with named codomain (row) and domain (column) bases.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolMatrix {
    pub rows: Vec<&'static str>,
    pub cols: Vec<&'static str>,
    pub entries: DMatrix<C>,
}

pub const NU_BASIS: [&str; 4] = ["α", "β", "ᾱ", "β̄"];
pub const NU_PLUS_BASIS: [&str; 2] = ["α", "β"];
pub const MU_BASIS: [&str; 2] = ["β", "β̄"];
/// Rows of the ψ-positive boundary symbol, a basis of the target of `B^ℂ`.
pub const MU_PSI_BASIS: [&str; 2] = ["b", "b̃"];

impl SymbolMatrix {
    pub fn new(rows: &[&'static str], cols: &[&'static str], entries: DMatrix<C>) -> Self {
        assert_eq!(entries.nrows(), rows.len());
        assert_eq!(entries.ncols(), cols.len());
        SymbolMatrix { rows: rows.to_vec(), cols: cols.to_vec(), entries }
    }

    fn from_rows(rows: &[&'static str], cols: &[&'static str], data: &[&[C]]) -> Self {
        let m = DMatrix::from_fn(rows.len(), cols.len(), |r, c| data[r][c]);
        Self::new(rows, cols, m)
    }

    /// `self · rhs`, requiring the domain of `self` to be the codomain of `rhs`.
    pub fn compose(&self, rhs: &SymbolMatrix) -> SymbolMatrix {
        assert_eq!(self.cols, rhs.rows, "basis mismatch in composition");
        SymbolMatrix { rows: self.rows.clone(), cols: rhs.cols.clone(), entries: &self.entries * &rhs.entries }
    }

    pub fn scale(&self, c: C) -> SymbolMatrix {
        SymbolMatrix { rows: self.rows.clone(), cols: self.cols.clone(), entries: self.entries.map(|x| x * c) }
    }

    pub fn add(&self, rhs: &SymbolMatrix) -> SymbolMatrix {
        assert_eq!((&self.rows, &self.cols), (&rhs.rows, &rhs.cols));
        SymbolMatrix { rows: self.rows.clone(), cols: self.cols.clone(), entries: &self.entries + &rhs.entries }
    }

    pub fn adjoint(&self) -> SymbolMatrix {
        SymbolMatrix { rows: self.cols.clone(), cols: self.rows.clone(), entries: self.entries.adjoint() }
    }

    pub fn max_abs_diff(&self, other: &SymbolMatrix) -> f64 {
        assert_eq!((&self.rows, &self.cols), (&other.rows, &other.cols));
        (&self.entries - &other.entries).iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    pub fn singular_values(&self) -> Vec<f64> {
        let mut sv: Vec<f64> = self.entries.clone().singular_values().iter().copied().collect();
        sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
        sv
    }

    pub fn rank(&self, tol: f64) -> usize {
        self.singular_values().into_iter().filter(|&s| s > tol).count()
    }

    pub fn trace(&self) -> C {
        self.entries.trace()
    }

    pub fn get(&self, r: usize, c: usize) -> C {
        self.entries[(r, c)]
    }
}

#[derive(Serialize)]
struct SymbolMatrixJson<'a> {
    rows: &'a [&'static str],
    cols: &'a [&'static str],
    entries: Vec<Vec<[f64; 2]>>,
}

impl Serialize for SymbolMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries = (0..self.entries.nrows())
            .map(|r| (0..self.entries.ncols()).map(|c| [self.entries[(r, c)].re, self.entries[(r, c)].im]).collect())
            .collect();
        SymbolMatrixJson { rows: &self.rows, cols: &self.cols, entries }.serialize(s)
    }
}

/// A unit covector `η_v dv + η_w dw` on the boundary.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitCovector {
    pub eta_v: f64,
    pub eta_w: f64,
}

impl UnitCovector {
    pub fn new(eta_v: f64, eta_w: f64) -> Result<Self, SymbolError> {
        let n2 = eta_v * eta_v + eta_w * eta_w;
        if n2 == 0.0 {
            return Err(SymbolError::ZeroCovector);
        }
        if (n2 - 1.0).abs() > 1e-9 {
            return Err(SymbolError::NotUnit(eta_v, eta_w));
        }
        Ok(UnitCovector { eta_v, eta_w })
    }

    pub fn from_angle(theta: f64) -> Self {
        UnitCovector { eta_v: theta.cos(), eta_w: theta.sin() }
    }

    /// `η = η_v + iη_w`.
    pub fn complex(&self) -> C {
        C::new(self.eta_v, self.eta_w)
    }

    /// `n` equally spaced covectors starting at `(1, 0)`.
    pub fn grid(n: usize) -> Vec<UnitCovector> {
        (0..n).map(|k| Self::from_angle(std::f64::consts::TAU * k as f64 / n as f64)).collect()
    }
}

/// `v×` on `ν^ℂ`: `v×α = −β̄`, `v×β = ᾱ`, `v×ᾱ = −β`, `v×β̄ = α`.
pub fn v_cross_canonical() -> SymbolMatrix {
    SymbolMatrix::from_rows(
        &NU_BASIS,
        &NU_BASIS,
        &[&[ZERO, ZERO, ZERO, ONE], &[ZERO, ZERO, -ONE, ZERO], &[ZERO, ONE, ZERO, ZERO], &[-ONE, ZERO, ZERO, ZERO]],
    )
}

/// `w×` on `ν^ℂ`: `w×α = −iβ̄`, `w×β = iᾱ`, `w×ᾱ = iβ`, `w×β̄ = −iα`.
pub fn w_cross_canonical() -> SymbolMatrix {
    SymbolMatrix::from_rows(
        &NU_BASIS,
        &NU_BASIS,
        &[&[ZERO, ZERO, ZERO, -I], &[ZERO, ZERO, I, ZERO], &[ZERO, I, ZERO, ZERO], &[-I, ZERO, ZERO, ZERO]],
    )
}

type CVec = [C; 7];

fn complexify(re: &Vector7, im: &Vector7) -> CVec {
    std::array::from_fn(|k| C::new(re.0[k], im.0[k]))
}

fn conj7(x: &CVec) -> CVec {
    x.map(|c| c.conj())
}

fn cross_c(x: &Vector7, y: &CVec) -> CVec {
    let re = Vector7(y.map(|c| c.re));
    let im = Vector7(y.map(|c| c.im));
    complexify(&cross(x, &re), &cross(x, &im))
}

fn herm(x: &CVec, y: &CVec) -> C {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

/// The complex frame `{α, β, ᾱ, β̄}` of a split.
pub fn complex_frame(split: &NormalSplit) -> [CVec; 4] {
    let a = split.a;
    let ja = split.j(&a);
    let alpha = complexify(&a, &(-ja));
    let alpha_bar = conj7(&alpha);
    let beta = cross_c(&split.v, &alpha_bar).map(|c| -c);
    let beta_bar = conj7(&beta);
    [alpha, beta, alpha_bar, beta_bar]
}

/// Matrix of `x×` on `ν^ℂ` in the frame of `split`, computed from cross products.
pub fn cross_matrix(x: &Vector7, split: &NormalSplit) -> Result<SymbolMatrix, SymbolError> {
    let frame = complex_frame(split);
    let norms: Vec<f64> = frame.iter().map(|f| herm(f, f).re).collect();
    let mut m = DMatrix::from_element(4, 4, ZERO);
    for (col, f) in frame.iter().enumerate() {
        let image = cross_c(x, f);
        let coords: Vec<C> = frame.iter().zip(&norms).map(|(g, n)| herm(g, &image) / n).collect();
        let mut rebuilt = [ZERO; 7];
        for (g, c) in frame.iter().zip(&coords) {
            for k in 0..7 {
                rebuilt[k] += g[k] * c;
            }
        }
        let residual = rebuilt.iter().zip(&image).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
        if residual > 1e-9 {
            return Err(SymbolError::NotInFrame(residual));
        }
        for (row, c) in coords.into_iter().enumerate() {
            m[(row, col)] = c;
        }
    }
    Ok(SymbolMatrix::new(&NU_BASIS, &NU_BASIS, m))
}

/// `σ(R)(η) = i(η_v·w× − η_w·v×)`.
pub fn symbol_r(eta: &UnitCovector) -> SymbolMatrix {
    symbol_r_from(&v_cross_canonical(), &w_cross_canonical(), eta)
}

/// `σ(R)` from given `v×` and `w×` matrices.
pub fn symbol_r_from(v_cross: &SymbolMatrix, w_cross: &SymbolMatrix, eta: &UnitCovector) -> SymbolMatrix {
    w_cross.scale(C::new(eta.eta_v, 0.0)).add(&v_cross.scale(C::new(-eta.eta_w, 0.0))).scale(I)
}

/// `σ(R)` in block form `(0, r₋; r₊, 0)` with `r₋ = (0, η̄; −η̄, 0)` and `r₊ = (0, −η; η, 0)`.
pub fn symbol_r_blocks(eta: &UnitCovector) -> SymbolMatrix {
    let e = eta.complex();
    let eb = e.conj();
    SymbolMatrix::from_rows(
        &NU_BASIS,
        &NU_BASIS,
        &[&[ZERO, ZERO, ZERO, eb], &[ZERO, ZERO, -eb, ZERO], &[ZERO, -e, ZERO, ZERO], &[e, ZERO, ZERO, ZERO]],
    )
}

fn identity(n: usize, basis: &[&'static str]) -> SymbolMatrix {
    SymbolMatrix::new(basis, basis, DMatrix::identity(n, n))
}

/// `q(η) = ½(Id + σ(R)(η))`, the projector onto the `+1` eigenspace of `σ(R)`.
pub fn calderon_symbol(eta: &UnitCovector) -> SymbolMatrix {
    identity(4, &NU_BASIS).add(&symbol_r(eta)).scale(C::new(0.5, 0.0))
}

/// `q(η) = ½(Id₂, r₋; r₊, Id₂)` assembled block by block.
pub fn calderon_symbol_blocks(eta: &UnitCovector) -> SymbolMatrix {
    let r = symbol_r_blocks(eta);
    let mut m = r.entries.clone();
    for k in 0..4 {
        m[(k, k)] = ONE;
    }
    SymbolMatrix::new(&NU_BASIS, &NU_BASIS, m.map(|x| x * 0.5))
}

/// Spectral projector onto the positive eigenspace of `σ(R)` from a Hermitian eigendecomposition.
pub fn calderon_symbol_spectral(eta: &UnitCovector) -> SymbolMatrix {
    let r = symbol_r(eta);
    let eig = SymmetricEigen::new(r.entries.clone());
    let mut p = DMatrix::from_element(4, 4, ZERO);
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda > 0.0 {
            let v = eig.eigenvectors.column(k);
            p += &v * v.adjoint();
        }
    }
    SymbolMatrix::new(&NU_BASIS, &NU_BASIS, p)
}

/// `σ(B)`: orthogonal projection `ν^ℂ → μ_X^ℂ`, picking the `β` and `β̄` coordinates.
pub fn sigma_b() -> SymbolMatrix {
    SymbolMatrix::from_rows(&MU_BASIS, &NU_BASIS, &[&[ZERO, ONE, ZERO, ZERO], &[ZERO, ZERO, ZERO, ONE]])
}

/// `σ(P⁺)`: projection onto `ν⁺ = ⟨α, β⟩`.
pub fn sigma_p_plus() -> SymbolMatrix {
    SymbolMatrix::from_rows(&NU_PLUS_BASIS, &NU_BASIS, &[&[ONE, ZERO, ZERO, ZERO], &[ZERO, ONE, ZERO, ZERO]])
}

/// The inclusion `ν⁺ → ν^ℂ`.
pub fn nu_plus_inclusion() -> SymbolMatrix {
    sigma_p_plus().adjoint()
}

/// Which boundary projector to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundaryProjector {
    /// `σ(B)` onto `μ_X^ℂ`.
    MuX,
    /// `σ(P⁺)` onto `ν⁺`.
    NuPlus,
}

impl BoundaryProjector {
    pub fn symbol(self) -> SymbolMatrix {
        match self {
            BoundaryProjector::MuX => sigma_b(),
            BoundaryProjector::NuPlus => sigma_p_plus(),
        }
    }
}

/// Outcome of a local elliptic boundary condition check on a covector grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EbcReport {
    pub projector: BoundaryProjector,
    pub grid: usize,
    /// Rank of the boundary projector symbol itself.
    pub projector_rank: usize,
    /// Smallest singular value of `σ(B)∘q(η)` over the grid.
    pub min_singular_value: f64,
    /// Angle (radians) at which the minimum occurs.
    pub argmin_angle: f64,
    pub pass: bool,
}

/// Check that `σ(B)` has full rank and `σ(B)∘q(η)` has rank 2 at every grid covector.
pub fn ebc_check(projector: BoundaryProjector, grid: usize, exec: Exec) -> Result<EbcReport, SymbolError> {
    if grid < MIN_EBC_GRID {
        return Err(SymbolError::GridTooCoarse(grid, MIN_EBC_GRID));
    }
    let b = projector.symbol();
    let projector_rank = b.rank(RANK_TOL);
    let etas = UnitCovector::grid(grid);
    let mins = map_range(exec, grid, |k| {
        let sv = b.compose(&calderon_symbol(&etas[k])).singular_values();
        sv.last().copied().unwrap_or(0.0)
    });
    let (k, &min) = mins.iter().enumerate().min_by(|a, b| a.1.partial_cmp(b.1).unwrap()).expect("nonempty grid");
    Ok(EbcReport {
        projector,
        grid,
        projector_rank,
        min_singular_value: min,
        argmin_angle: std::f64::consts::TAU * k as f64 / grid as f64,
        pass: projector_rank == 2 && min > RANK_TOL,
    })
}

/// `σ(B Q P⁺)(η) = ½(0, 1; η, 0) : ν⁺ → μ_X^ℂ`.
pub fn bqp_symbol(eta: &UnitCovector) -> SymbolMatrix {
    let half = C::new(0.5, 0.0);
    SymbolMatrix::from_rows(&MU_BASIS, &NU_PLUS_BASIS, &[&[ZERO, half], &[eta.complex() * half, ZERO]])
}

/// `σ(B)·q(η)·ι` with `ι : ν⁺ → ν^ℂ`, from the factors.
pub fn bqp_symbol_from_parts(eta: &UnitCovector) -> SymbolMatrix {
    sigma_b().compose(&calderon_symbol(eta)).compose(&nu_plus_inclusion())
}

/// Symbol of the Cauchy–Riemann operator on `ν_X`: `i(η_v + iη_w)/2`.
pub fn cauchy_riemann_symbol(eta: &UnitCovector) -> C {
    I * eta.complex() * 0.5
}

/// `σ(B^ℂ) = (0, 1, 0, 1; z, −i, z̄, i)` for the ψ-positive boundary condition.
pub fn sigma_b_psi(z: C) -> SymbolMatrix {
    SymbolMatrix::from_rows(&MU_PSI_BASIS, &NU_BASIS, &[&[ZERO, ONE, ZERO, ONE], &[z, -I, z.conj(), I]])
}

/// `½(η, 1; z + iη, −i − z̄η)`, the closed form of `σ(B^ℂ)·q(η)·ι`.
pub fn psi_symbol_closed_form(z: C, eta: &UnitCovector) -> SymbolMatrix {
    let e = eta.complex();
    let half = C::new(0.5, 0.0);
    SymbolMatrix::from_rows(
        &MU_PSI_BASIS,
        &NU_PLUS_BASIS,
        &[&[e * half, half], &[(z + I * e) * half, (-I - z.conj() * e) * half]],
    )
}

/// `(−2iη − z − z̄η²)/4`.
pub fn psi_determinant_formula(z: C, eta: &UnitCovector) -> C {
    let e = eta.complex();
    (-I * 2.0 * e - z - z.conj() * e * e) / 4.0
}

fn det2(m: &SymbolMatrix) -> C {
    m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PsiEllipticityReport {
    pub z: [f64; 2],
    pub grid: usize,
    /// Largest `|det − (−2iη − z − z̄η²)/4|` over the grid.
    pub max_formula_error: f64,
    /// Largest entrywise distance between the product and its closed form.
    pub max_closed_form_error: f64,
    pub min_abs_det: f64,
    pub pass: bool,
}

/// Evaluate the ψ-positive boundary symbol `σ(B^ℂ)·q·ι` on a covector grid.
pub fn psi_positive_ellipticity(z: C, grid: usize, exec: Exec) -> PsiEllipticityReport {
    let etas = UnitCovector::grid(grid.max(1));
    let b = sigma_b_psi(z);
    let rows = map_range(exec, etas.len(), |k| {
        let eta = &etas[k];
        let product = b.compose(&calderon_symbol(eta)).compose(&nu_plus_inclusion());
        let det = det2(&product);
        (
            (det - psi_determinant_formula(z, eta)).norm(),
            product.max_abs_diff(&psi_symbol_closed_form(z, eta)),
            det.norm(),
        )
    });
    let max_formula_error = rows.iter().map(|r| r.0).fold(0.0, f64::max);
    let max_closed_form_error = rows.iter().map(|r| r.1).fold(0.0, f64::max);
    let min_abs_det = rows.iter().map(|r| r.2).fold(f64::INFINITY, f64::min);
    PsiEllipticityReport {
        z: [z.re, z.im],
        grid: etas.len(),
        max_formula_error,
        max_closed_form_error,
        min_abs_det,
        pass: max_formula_error <= 1e-12 && max_closed_form_error <= 1e-12 && min_abs_det > RANK_TOL,
    }
}

/// One boundary surface: its genus and `∫ c₁(ν_X)` over it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryComponentData {
    pub genus: u32,
    pub c1: i64,
}

impl BoundaryComponentData {
    pub fn new(genus: u32, c1: i64) -> Self {
        BoundaryComponentData { genus, c1 }
    }
}

/// `Σⱼ (c₁ⱼ + 1 − gⱼ)`.
pub fn index_formula(components: &[BoundaryComponentData]) -> i64 {
    components.iter().map(|c| c.c1 + 1 - c.genus as i64).sum()
}

/// An element of ℤ/2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub struct Z2(bool);

impl Z2 {
    pub const ZERO: Z2 = Z2(false);
    pub const ONE: Z2 = Z2(true);

    pub fn from_int(n: i64) -> Self {
        Z2(n.rem_euclid(2) == 1)
    }

    pub fn value(self) -> u8 {
        self.0 as u8
    }
}

impl From<Z2> for u8 {
    fn from(z: Z2) -> u8 {
        z.value()
    }
}

impl TryFrom<u8> for Z2 {
    type Error = String;
    fn try_from(v: u8) -> Result<Self, String> {
        match v {
            0 => Ok(Z2::ZERO),
            1 => Ok(Z2::ONE),
            _ => Err(format!("{v} is not an element of Z/2")),
        }
    }
}

impl std::fmt::Display for Z2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// `(index + 1) mod 2`, defined only when the boundary is one 2-sphere.
pub fn maslov_from_index(index: i64, boundary: &[BoundaryComponentData]) -> Result<Z2, SymbolError> {
    match boundary {
        [single] if single.genus == 0 => Ok(Z2::from_int(index + 1)),
        [single] => Err(SymbolError::NotASphere(format!("boundary has genus {}", single.genus))),
        _ => Err(SymbolError::NotASphere(format!("boundary has {} components", boundary.len()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::{split_coassociative, standard_config};

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn cross_matrices_from_the_standard_split_are_exact() {
        let split = split_coassociative(&standard_config()).unwrap();
        let v = cross_matrix(&split.v, &split).unwrap();
        let w = cross_matrix(&split.w, &split).unwrap();
        assert_eq!(v, v_cross_canonical());
        assert_eq!(w, w_cross_canonical());
    }

    #[test]
    fn r_symbol_display_and_definition_agree() {
        for eta in UnitCovector::grid(36) {
            assert!(symbol_r(&eta).max_abs_diff(&symbol_r_blocks(&eta)) < 1e-15);
        }
        let r = symbol_r(&UnitCovector::new(1.0, 0.0).unwrap());
        assert_eq!(r.get(0, 3), ONE);
        assert_eq!(r.get(3, 0), ONE);
        assert_eq!(r.get(1, 2), -ONE);
        let r = symbol_r(&UnitCovector::new(0.0, 1.0).unwrap());
        assert_eq!(r.get(0, 3), -I);
        assert_eq!(r.get(3, 0), I);
    }

    #[test]
    fn covector_validation() {
        assert_eq!(UnitCovector::new(0.0, 0.0), Err(SymbolError::ZeroCovector));
        assert!(matches!(UnitCovector::new(1.0, 1.0), Err(SymbolError::NotUnit(..))));
    }

    #[test]
    fn calderon_projector_routes_agree() {
        for eta in UnitCovector::grid(72) {
            let q = calderon_symbol(&eta);
            assert!(q.max_abs_diff(&calderon_symbol_blocks(&eta)) < 1e-15);
            assert!(q.max_abs_diff(&calderon_symbol_spectral(&eta)) < 1e-12);
            assert!((q.trace() - c(2.0, 0.0)).norm() < 1e-15);
        }
        let q = calderon_symbol(&UnitCovector::new(1.0, 0.0).unwrap());
        let h = c(0.5, 0.0);
        let expected = SymbolMatrix::from_rows(
            &NU_BASIS,
            &NU_BASIS,
            &[&[h, ZERO, ZERO, h], &[ZERO, h, -h, ZERO], &[ZERO, -h, h, ZERO], &[h, ZERO, ZERO, h]],
        );
        assert_eq!(q, expected);
    }

    #[test]
    fn ebc_minimum_matches_exact_value() {
        // σ(B)q = ½(0, 1, −η̄, 0; η, 0, 0, 1) has orthogonal rows of norm 1/√2.
        let r = ebc_check(BoundaryProjector::MuX, 360, Exec::Sequential).unwrap();
        assert!(r.pass);
        assert_eq!(r.projector_rank, 2);
        assert!((r.min_singular_value - 0.5f64.sqrt()).abs() < 1e-12);
        let r = ebc_check(BoundaryProjector::NuPlus, 360, Exec::Sequential).unwrap();
        assert!(r.pass);
        assert!(matches!(ebc_check(BoundaryProjector::MuX, 10, Exec::Sequential), Err(SymbolError::GridTooCoarse(..))));
    }

    #[test]
    fn bqp_symbol_and_cauchy_riemann_component() {
        let one = UnitCovector::new(1.0, 0.0).unwrap();
        let i = UnitCovector::new(0.0, 1.0).unwrap();
        assert_eq!(bqp_symbol(&one).entries, DMatrix::from_row_slice(2, 2, &[ZERO, c(0.5, 0.0), c(0.5, 0.0), ZERO]));
        assert_eq!(bqp_symbol(&i).entries, DMatrix::from_row_slice(2, 2, &[ZERO, c(0.5, 0.0), c(0.0, 0.5), ZERO]));
        for eta in UnitCovector::grid(90) {
            let p = bqp_symbol_from_parts(&eta);
            assert!(p.max_abs_diff(&bqp_symbol(&eta)) < 1e-12);
            assert!((p.get(1, 0) - (-I) * cauchy_riemann_symbol(&eta)).norm() < 1e-15);
        }
    }

    #[test]
    fn psi_symbol_reduces_to_coassociative_case_at_zero() {
        let r = psi_positive_ellipticity(ZERO, 360, Exec::Sequential);
        assert!(r.pass);
        assert!((r.min_abs_det - 0.5).abs() < 1e-12);
        let r = psi_positive_ellipticity(c(1.0, 0.0), 360, Exec::Sequential);
        assert!(r.pass && r.min_abs_det > 0.0);
    }

    #[test]
    fn index_and_maslov() {
        let s = |g, c1| BoundaryComponentData::new(g, c1);
        assert_eq!(index_formula(&[s(0, 0)]), 1);
        assert_eq!(index_formula(&[s(0, 4)]), 5);
        assert_eq!(index_formula(&[s(2, -2)]), -3);
        assert_eq!(index_formula(&[s(1, 0), s(1, 0)]), 0);
        assert_eq!(index_formula(&[s(0, 0), s(0, 0)]), 2);
        assert_eq!(maslov_from_index(1, &[s(0, 0)]), Ok(Z2::ZERO));
        assert_eq!(maslov_from_index(2, &[s(0, 1)]), Ok(Z2::ONE));
        assert!(maslov_from_index(1, &[s(1, 0)]).is_err());
        assert!(maslov_from_index(2, &[s(0, 0), s(0, 0)]).is_err());
        assert_eq!(Z2::from_int(-3), Z2::ONE);
    }
}
