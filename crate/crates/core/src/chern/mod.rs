//! First Chern numbers of complex line bundles sampled at the vertices of a
//! closed oriented triangulated surface.
//!
//! The number is `(1/2π) Σ arg(⟨s_a,s_b⟩⟨s_b,s_c⟩⟨s_c,s_a⟩)` over oriented
//! triangles `(a, b, c)`, with the Hermitian product conjugate-linear in the
//! second slot. With this convention the tautological line over ℂP¹ has
//! degree −1 and the holomorphic tangent line of S² has degree 2 when the
//! sphere carries its outward orientation.

pub mod fixtures;
pub mod mesh;

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::par::{map_range, Exec};
use crate::symbol::Z2;
use mesh::Mesh;

pub type C = Complex64;

/// Default lower bound on `|⟨ŝ_a, ŝ_b⟩|` across an edge.
pub const ADMISSIBILITY: f64 = 1e-6;
/// Largest accepted distance of the raw sum from an integer.
pub const MAX_RESIDUAL: f64 = 0.1;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChernError {
    #[error("invalid bundle: {0}")]
    Invalid(String),
    #[error("edge ({0}, {1}) is shared by {2} triangles with orientations {3:?}; not a closed oriented surface")]
    NonManifold(u64, u64, usize, Vec<bool>),
    #[error("lines at the ends of edge ({0}, {1}) are nearly orthogonal (overlap {2:.3e}); refine the mesh")]
    Inadmissible(u64, u64, f64),
    #[error("phase sum {raw} is {residual:.3} away from an integer; resolution too coarse")]
    Resolution { raw: f64, residual: f64 },
    #[error("Euler characteristic {0} is odd")]
    OddEuler(i64),
    #[error("the Maslov class needs a sphere, got genus {0}")]
    NotASphere(i64),
}

/// A complex line at each vertex of a triangulated closed oriented surface.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledLineBundle {
    pub vertices: Vec<u64>,
    pub positions: Option<Vec<[f64; 3]>>,
    /// Oriented triangles as triples of vertex ids.
    pub triangles: Vec<[u64; 3]>,
    /// A spanning vector of the line at each vertex, in the order of `vertices`.
    pub lines: Vec<Vec<C>>,
}

#[derive(Serialize, Deserialize)]
struct BundleJson {
    vertices: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    positions: Option<Vec<[f64; 3]>>,
    triangles: Vec<[u64; 3]>,
    lines: Vec<Vec<[f64; 2]>>,
}

impl Serialize for SampledLineBundle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        BundleJson {
            vertices: self.vertices.clone(),
            positions: self.positions.clone(),
            triangles: self.triangles.clone(),
            lines: self.lines.iter().map(|l| l.iter().map(|c| [c.re, c.im]).collect()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SampledLineBundle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = BundleJson::deserialize(d)?;
        let b = SampledLineBundle {
            vertices: j.vertices,
            positions: j.positions,
            triangles: j.triangles,
            lines: j.lines.into_iter().map(|l| l.into_iter().map(|[re, im]| C::new(re, im)).collect()).collect(),
        };
        b.check_shape().map_err(D::Error::custom)?;
        Ok(b)
    }
}

/// `⟨x, y⟩ = Σ xᵢ ȳᵢ`.
pub fn hermitian(x: &[C], y: &[C]) -> C {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

fn norm(x: &[C]) -> f64 {
    x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Result of [`chern_number`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChernNumber {
    pub value: i64,
    /// The phase sum divided by 2π before rounding.
    pub raw: f64,
    pub residual: f64,
    /// Smallest normalized overlap across an edge.
    pub min_overlap: f64,
}

impl SampledLineBundle {
    /// Sample `line(position)` at every vertex of `mesh`.
    pub fn from_mesh(mesh: &Mesh, line: impl Fn([f64; 3]) -> Vec<C>) -> Self {
        SampledLineBundle {
            vertices: (0..mesh.positions.len() as u64).collect(),
            positions: Some(mesh.positions.clone()),
            triangles: mesh.triangles.iter().map(|t| t.map(|i| i as u64)).collect(),
            lines: mesh.positions.iter().map(|&p| line(p)).collect(),
        }
    }

    /// Triangles as vertex indices.
    fn indexed_triangles(&self) -> Result<Vec<[usize; 3]>, ChernError> {
        let index: HashMap<u64, usize> = self.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        self.triangles
            .iter()
            .map(|t| {
                let mut out = [0usize; 3];
                for (k, id) in t.iter().enumerate() {
                    out[k] = *index
                        .get(id)
                        .ok_or_else(|| ChernError::Invalid(format!("triangle {t:?} uses unknown vertex {id}")))?;
                }
                if out[0] == out[1] || out[1] == out[2] || out[0] == out[2] {
                    return Err(ChernError::Invalid(format!("triangle {t:?} repeats a vertex")));
                }
                Ok(out)
            })
            .collect()
    }

    fn check_shape(&self) -> Result<(), ChernError> {
        if self.vertices.is_empty() || self.triangles.is_empty() {
            return Err(ChernError::Invalid("no vertices or no triangles".into()));
        }
        if self.lines.len() != self.vertices.len() {
            return Err(ChernError::Invalid(format!(
                "{} lines for {} vertices",
                self.lines.len(),
                self.vertices.len()
            )));
        }
        if let Some(p) = &self.positions {
            if p.len() != self.vertices.len() {
                return Err(ChernError::Invalid(format!("{} positions for {} vertices", p.len(), self.vertices.len())));
            }
        }
        let mut ids = self.vertices.clone();
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(ChernError::Invalid("duplicate vertex id".into()));
        }
        let n = self.lines[0].len();
        if n == 0 {
            return Err(ChernError::Invalid("lines must have at least one coordinate".into()));
        }
        for (v, l) in self.vertices.iter().zip(&self.lines) {
            if l.len() != n {
                return Err(ChernError::Invalid(format!(
                    "line at vertex {v} has {} coordinates, expected {n}",
                    l.len()
                )));
            }
            if !(norm(l) > 0.0) {
                return Err(ChernError::Invalid(format!("line at vertex {v} is the zero vector")));
            }
        }
        self.indexed_triangles().map(|_| ())
    }

    /// Undirected edges with the orientation of each incident triangle side.
    fn edge_table(&self, tris: &[[usize; 3]]) -> BTreeMap<(usize, usize), Vec<bool>> {
        let mut edges: BTreeMap<(usize, usize), Vec<bool>> = BTreeMap::new();
        for &[a, b, c] in tris {
            for (x, y) in [(a, b), (b, c), (c, a)] {
                edges.entry((x.min(y), x.max(y))).or_default().push(x < y);
            }
        }
        edges
    }

    /// Check that every edge bounds exactly two triangles with opposite induced orientations.
    pub fn validate(&self) -> Result<(), ChernError> {
        self.check_shape()?;
        let tris = self.indexed_triangles()?;
        for ((a, b), sides) in self.edge_table(&tris) {
            if sides.len() != 2 || sides[0] == sides[1] {
                return Err(ChernError::NonManifold(self.vertices[a], self.vertices[b], sides.len(), sides));
            }
        }
        Ok(())
    }

    /// `V − E + F`.
    pub fn euler_characteristic(&self) -> Result<i64, ChernError> {
        self.validate()?;
        let tris = self.indexed_triangles()?;
        let e = self.edge_table(&tris).len() as i64;
        Ok(self.vertices.len() as i64 - e + tris.len() as i64)
    }

    pub fn ambient_dim(&self) -> usize {
        self.lines.first().map_or(0, Vec::len)
    }

    /// Every triangle with reversed orientation.
    pub fn reversed(&self) -> Self {
        SampledLineBundle { triangles: self.triangles.iter().map(|&[a, b, c]| [a, c, b]).collect(), ..self.clone() }
    }

    /// Multiply the sample at vertex `i` by `factor(i)`.
    pub fn regauged(&self, factor: impl Fn(usize) -> C) -> Self {
        SampledLineBundle {
            lines: self.lines.iter().enumerate().map(|(i, l)| l.iter().map(|c| c * factor(i)).collect()).collect(),
            ..self.clone()
        }
    }

    /// Midpoint 4-split; the line at a new vertex is the normalized sum of the
    /// unit samples at the edge ends after aligning their phases.
    pub fn refine(&self) -> Result<Self, ChernError> {
        self.validate()?;
        let tris = self.indexed_triangles()?;
        let positions: Vec<[f64; 3]> = self.positions.clone().unwrap_or_else(|| vec![[0.0; 3]; self.vertices.len()]);
        let (fine, parents) = Mesh { positions, triangles: tris }.subdivide();
        let unit: Vec<Vec<C>> = self.lines.iter().map(|l| l.iter().map(|c| c / norm(l)).collect()).collect();
        let mut lines = unit.clone();
        for &(a, b) in &parents {
            let overlap = hermitian(&unit[a], &unit[b]);
            if overlap.norm() <= ADMISSIBILITY {
                return Err(ChernError::Inadmissible(self.vertices[a], self.vertices[b], overlap.norm()));
            }
            let phase = overlap / overlap.norm();
            let sum: Vec<C> = unit[a].iter().zip(&unit[b]).map(|(x, y)| x + y * phase).collect();
            let n = norm(&sum);
            lines.push(sum.into_iter().map(|c| c / n).collect());
        }
        let next_id = self.vertices.iter().max().map_or(0, |m| m + 1);
        let mut vertices = self.vertices.clone();
        vertices.extend((0..parents.len() as u64).map(|k| next_id + k));
        Ok(SampledLineBundle {
            triangles: fine.triangles.iter().map(|t| t.map(|i| vertices[i])).collect(),
            vertices,
            positions: self.positions.as_ref().map(|_| fine.positions.clone()),
            lines,
        })
    }
}

/// Discrete first Chern number with the default admissibility threshold.
pub fn chern_number(b: &SampledLineBundle, exec: Exec) -> Result<ChernNumber, ChernError> {
    chern_number_with(b, ADMISSIBILITY, exec)
}

pub fn chern_number_with(b: &SampledLineBundle, admissibility: f64, exec: Exec) -> Result<ChernNumber, ChernError> {
    b.validate()?;
    let tris = b.indexed_triangles()?;
    let unit: Vec<Vec<C>> = b.lines.iter().map(|l| l.iter().map(|c| c / norm(l)).collect()).collect();
    let per_triangle = map_range(exec, tris.len(), |k| {
        let [x, y, z] = tris[k];
        let o = [hermitian(&unit[x], &unit[y]), hermitian(&unit[y], &unit[z]), hermitian(&unit[z], &unit[x])];
        let worst = o.iter().enumerate().min_by(|p, q| p.1.norm().partial_cmp(&q.1.norm()).unwrap()).unwrap();
        let ends = [(x, y), (y, z), (z, x)][worst.0];
        ((o[0] * o[1] * o[2]).arg(), worst.1.norm(), ends)
    });
    let (min_overlap, ends) = per_triangle
        .iter()
        .map(|r| (r.1, r.2))
        .min_by(|p, q| p.0.partial_cmp(&q.0).unwrap())
        .expect("validated bundles have triangles");
    if min_overlap <= admissibility {
        return Err(ChernError::Inadmissible(b.vertices[ends.0], b.vertices[ends.1], min_overlap));
    }
    let raw = per_triangle.iter().map(|r| r.0).sum::<f64>() / std::f64::consts::TAU;
    let value = raw.round();
    let residual = (raw - value).abs();
    if residual >= MAX_RESIDUAL {
        return Err(ChernError::Resolution { raw, residual });
    }
    Ok(ChernNumber { value: value as i64, raw, residual, min_overlap })
}

/// `g = 1 − (V − E + F)/2`.
pub fn genus_of_complex(b: &SampledLineBundle) -> Result<i64, ChernError> {
    let chi = b.euler_characteristic()?;
    if chi % 2 != 0 {
        return Err(ChernError::OddEuler(chi));
    }
    Ok(1 - chi / 2)
}

/// `c₁ mod 2` over a sphere.
pub fn maslov_mod2(b: &SampledLineBundle, exec: Exec) -> Result<Z2, ChernError> {
    let g = genus_of_complex(b)?;
    if g != 0 {
        return Err(ChernError::NotASphere(g));
    }
    Ok(Z2::from_int(chern_number(b, exec)?.value))
}
