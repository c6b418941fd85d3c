//! Line bundles with known degree, sampled on a mesh.

use super::mesh::Mesh;
use super::{SampledLineBundle, C};

/// The same fixed line (the first coordinate axis of `ℂᴺ`) everywhere.
pub fn constant_bundle(mesh: &Mesh, ambient: usize) -> SampledLineBundle {
    SampledLineBundle::from_mesh(mesh, |_| {
        let mut v = vec![C::new(0.0, 0.0); ambient.max(1)];
        v[0] = C::new(1.0, 0.0);
        v
    })
}

/// Homogeneous coordinates `(z₀, z₁)` of a unit vector under `ζ = (x + iy)/(1 + z)`.
///
/// Away from the south pole this is `(1 + z, x + iy) ∝ (1, ζ)`; near it, the
/// proportional pair `(x − iy, 1 − z)`.
pub fn homogeneous(p: [f64; 3]) -> [C; 2] {
    let [x, y, z] = p;
    if z > -0.5 {
        [C::new(1.0 + z, 0.0), C::new(x, y)]
    } else {
        [C::new(x, -y), C::new(1.0 - z, 0.0)]
    }
}

/// The tautological line `ℂ·(z₀, z₁) ⊂ ℂ²` over `S² ≅ ℂP¹`, of degree −1.
pub fn tautological_bundle(mesh: &Mesh) -> SampledLineBundle {
    SampledLineBundle::from_mesh(mesh, |p| homogeneous(p).to_vec())
}

/// The line spanned by `(z₀ᵏ, z₀ᵏ⁻¹z₁, …, z₁ᵏ)`, i.e. `𝒪(−k)`.
pub fn symmetric_power_bundle(mesh: &Mesh, k: u32) -> SampledLineBundle {
    SampledLineBundle::from_mesh(mesh, |p| {
        let [z0, z1] = homogeneous(p);
        (0..=k).map(|j| z0.powu(k - j) * z1.powu(j)).collect()
    })
}

/// A line bundle of degree `n` on the sphere: `𝒪(n)`.
pub fn degree_bundle(mesh: &Mesh, n: i64) -> SampledLineBundle {
    let k = n.unsigned_abs() as u32;
    let b = symmetric_power_bundle(mesh, k);
    if n > 0 {
        SampledLineBundle { lines: b.lines.iter().map(|l| l.iter().map(|c| c.conj()).collect()).collect(), ..b }
    } else {
        b
    }
}

/// The holomorphic tangent line `{t − i p×t}` of the unit sphere, inside `ℂ³`.
pub fn tangent_bundle(mesh: &Mesh) -> SampledLineBundle {
    SampledLineBundle::from_mesh(mesh, |p| {
        let n = {
            let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
            [p[0] / r, p[1] / r, p[2] / r]
        };
        let axis = (0..3).min_by(|&i, &j| n[i].abs().partial_cmp(&n[j].abs()).unwrap()).unwrap();
        let mut t = [0.0; 3];
        t[axis] = 1.0;
        let d = n[axis];
        let t = [t[0] - d * n[0], t[1] - d * n[1], t[2] - d * n[2]];
        let jt = [n[1] * t[2] - n[2] * t[1], n[2] * t[0] - n[0] * t[2], n[0] * t[1] - n[1] * t[0]];
        (0..3).map(|i| C::new(t[i], -jt[i])).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chern::chern_number;
    use crate::par::Exec;

    #[test]
    fn degree_bundles_have_their_degree() {
        let mesh = Mesh::icosphere(3);
        for n in -3..=3 {
            assert_eq!(chern_number(&degree_bundle(&mesh, n), Exec::Sequential).unwrap().value, n, "n = {n}");
        }
    }

    #[test]
    fn homogeneous_charts_agree_on_the_overlap() {
        let r = (0.36f64 + 0.09).sqrt();
        let p = [0.6 / r, 0.0, -0.3 / r];
        let [a0, a1] = [C::new(1.0 + p[2], 0.0), C::new(p[0], p[1])];
        let [b0, b1] = homogeneous(p);
        assert!((a0 * b1 - a1 * b0).norm() < 1e-12);
    }
}
