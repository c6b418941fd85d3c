//! Closed oriented triangulated surfaces used as sample domains.

use std::collections::{BTreeSet, HashMap};

/// Vertex positions in ℝ³ and counter-clockwise (outward) triangles.
#[derive(Clone, Debug, PartialEq)]
pub struct Mesh {
    pub positions: Vec<[f64; 3]>,
    pub triangles: Vec<[usize; 3]>,
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn normalize3(a: [f64; 3]) -> [f64; 3] {
    let n = dot3(a, a).sqrt();
    [a[0] / n, a[1] / n, a[2] / n]
}

/// Reorder `t` so that its normal points along `outward`.
fn orient(positions: &[[f64; 3]], t: [usize; 3], outward: [f64; 3]) -> [usize; 3] {
    let [a, b, c] = t.map(|i| positions[i]);
    if dot3(cross3(sub(b, a), sub(c, a)), outward) < 0.0 {
        [t[0], t[2], t[1]]
    } else {
        t
    }
}

impl Mesh {
    /// The regular icosahedron inscribed in the unit sphere.
    pub fn icosahedron() -> Mesh {
        let p = (1.0 + 5f64.sqrt()) / 2.0;
        let raw = [
            [-1.0, p, 0.0],
            [1.0, p, 0.0],
            [-1.0, -p, 0.0],
            [1.0, -p, 0.0],
            [0.0, -1.0, p],
            [0.0, 1.0, p],
            [0.0, -1.0, -p],
            [0.0, 1.0, -p],
            [p, 0.0, -1.0],
            [p, 0.0, 1.0],
            [-p, 0.0, -1.0],
            [-p, 0.0, 1.0],
        ];
        let positions: Vec<[f64; 3]> = raw.iter().map(|&x| normalize3(x)).collect();
        // Faces are the triples of mutually nearest vertices (edge length 2 before scaling).
        let edge2 = 4.0 / (1.0 + p * p);
        let close = |i: usize, j: usize| {
            (dot3(sub(positions[i], positions[j]), sub(positions[i], positions[j])) - edge2).abs() < 1e-9
        };
        let mut triangles = Vec::new();
        for i in 0..12 {
            for j in i + 1..12 {
                for k in j + 1..12 {
                    if close(i, j) && close(j, k) && close(i, k) {
                        let centre = normalize3([
                            positions[i][0] + positions[j][0] + positions[k][0],
                            positions[i][1] + positions[j][1] + positions[k][1],
                            positions[i][2] + positions[j][2] + positions[k][2],
                        ]);
                        triangles.push(orient(&positions, [i, j, k], centre));
                    }
                }
            }
        }
        Mesh { positions, triangles }
    }

    /// Icosahedron subdivided `level` times, with new vertices pushed to the unit sphere.
    pub fn icosphere(level: usize) -> Mesh {
        let mut mesh = Mesh::icosahedron();
        for _ in 0..level {
            let (refined, _) = mesh.subdivide();
            mesh = refined;
            for p in &mut mesh.positions {
                *p = normalize3(*p);
            }
        }
        mesh
    }

    /// Midpoint 4-split. Also returns, for each new vertex, its parent edge.
    pub fn subdivide(&self) -> (Mesh, Vec<(usize, usize)>) {
        let mut positions = self.positions.clone();
        let mut parents = Vec::new();
        let mut midpoint: HashMap<(usize, usize), usize> = HashMap::new();
        let mut mid = |a: usize, b: usize, positions: &mut Vec<[f64; 3]>| -> usize {
            let key = (a.min(b), a.max(b));
            *midpoint.entry(key).or_insert_with(|| {
                let (pa, pb) = (positions[a], positions[b]);
                positions.push([(pa[0] + pb[0]) / 2.0, (pa[1] + pb[1]) / 2.0, (pa[2] + pb[2]) / 2.0]);
                parents.push(key);
                positions.len() - 1
            })
        };
        let mut triangles = Vec::with_capacity(self.triangles.len() * 4);
        for &[a, b, c] in &self.triangles {
            let ab = mid(a, b, &mut positions);
            let bc = mid(b, c, &mut positions);
            let ca = mid(c, a, &mut positions);
            triangles.extend_from_slice(&[[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        (Mesh { positions, triangles }, parents)
    }

    /// Periodic `n × m` grid on the torus of revolution with radii 2 and 1.
    pub fn torus(n: usize, m: usize) -> Mesh {
        let idx = |i: usize, j: usize| (i % n) * m + (j % m);
        let mut positions = Vec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                let (s, t) = (std::f64::consts::TAU * i as f64 / n as f64, std::f64::consts::TAU * j as f64 / m as f64);
                let r = 2.0 + t.cos();
                positions.push([r * s.cos(), r * s.sin(), t.sin()]);
            }
        }
        let mut triangles = Vec::with_capacity(2 * n * m);
        for i in 0..n {
            for j in 0..m {
                let (a, b, c, d) = (idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1));
                triangles.push([a, b, c]);
                triangles.push([a, c, d]);
            }
        }
        Mesh { positions, triangles }
    }

    /// Boundary surface of a union of unit voxels, each square face split in two.
    pub fn voxel_surface(voxels: &BTreeSet<[i64; 3]>) -> Mesh {
        let mut index: HashMap<[i64; 3], usize> = HashMap::new();
        let mut positions = Vec::new();
        let mut triangles = Vec::new();
        let mut vertex = |p: [i64; 3], positions: &mut Vec<[f64; 3]>| -> usize {
            *index.entry(p).or_insert_with(|| {
                positions.push([p[0] as f64, p[1] as f64, p[2] as f64]);
                positions.len() - 1
            })
        };
        for v in voxels {
            for axis in 0..3 {
                for dir in [-1i64, 1] {
                    let mut nb = *v;
                    nb[axis] += dir;
                    if voxels.contains(&nb) {
                        continue;
                    }
                    let (u, w) = ((axis + 1) % 3, (axis + 2) % 3);
                    let mut base = *v;
                    if dir == 1 {
                        base[axis] += 1;
                    }
                    let corner = |du: i64, dw: i64| {
                        let mut c = base;
                        c[u] += du;
                        c[w] += dw;
                        c
                    };
                    let q = [corner(0, 0), corner(1, 0), corner(1, 1), corner(0, 1)].map(|c| vertex(c, &mut positions));
                    let mut normal = [0.0; 3];
                    normal[axis] = dir as f64;
                    triangles.push(orient(&positions, [q[0], q[1], q[2]], normal));
                    triangles.push(orient(&positions, [q[0], q[2], q[3]], normal));
                }
            }
        }
        Mesh { positions, triangles }
    }

    /// A closed genus-2 surface: a `3 × 5 × 1` slab of voxels pierced by two holes.
    pub fn double_torus() -> Mesh {
        let mut voxels = BTreeSet::new();
        for x in 0..3 {
            for y in 0..5 {
                if x == 1 && (y == 1 || y == 3) {
                    continue;
                }
                voxels.insert([x, y, 0]);
            }
        }
        Mesh::voxel_surface(&voxels)
    }

    /// The same surface with every triangle reversed.
    pub fn reversed(&self) -> Mesh {
        Mesh {
            positions: self.positions.clone(),
            triangles: self.triangles.iter().map(|&[a, b, c]| [a, c, b]).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn euler(m: &Mesh) -> i64 {
        let mut edges = BTreeSet::new();
        for &[a, b, c] in &m.triangles {
            for (x, y) in [(a, b), (b, c), (c, a)] {
                edges.insert((x.min(y), x.max(y)));
            }
        }
        m.positions.len() as i64 - edges.len() as i64 + m.triangles.len() as i64
    }

    #[test]
    fn simplex_counts() {
        let ico = Mesh::icosahedron();
        assert_eq!((ico.positions.len(), ico.triangles.len()), (12, 20));
        assert_eq!(euler(&ico), 2);
        let s = Mesh::icosphere(2);
        assert_eq!((s.positions.len(), s.triangles.len()), (162, 320));
        assert_eq!(euler(&Mesh::torus(6, 5)), 0);
        // 13 voxels pierced twice.
        assert_eq!(euler(&Mesh::double_torus()), -2);
    }

    #[test]
    fn icosphere_faces_point_outward() {
        let s = Mesh::icosphere(1);
        for &[a, b, c] in &s.triangles {
            let [pa, pb, pc] = [a, b, c].map(|i| s.positions[i]);
            assert!(dot3(cross3(sub(pb, pa), sub(pc, pa)), pa) > 0.0);
        }
    }
}
